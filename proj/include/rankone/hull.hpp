// Copyright 2026 The rankone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankone/polyhedron.hpp"
#include "rankone/rational.hpp"

// Convex hulls of nonnegative rank-1 matrices with side constraints:
// extended formulations, the inequality families of the row/row+ hulls,
// their separation oracles, and small-support optimization.
namespace rankone::hull {

// Per-row sum bounds l_i <= sum_j W_ij <= u_i and an optional aggregate
// bound L <= sum_ij W_ij <= U. The col variants read the same data with the
// roles of rows and columns swapped.
template <class T>
struct BasicRowColBounds {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<T> l;
  std::vector<T> u;
  std::optional<T> agg_L;
  std::optional<T> agg_U;

  bool has_agg() const { return agg_U.has_value(); }
  T L() const { return agg_L.value_or(T(0)); }
};

using RowColBounds = BasicRowColBounds<Rational>;
using RowColBoundsD = BasicRowColBounds<double>;

RowColBoundsD to_double(const RowColBounds& b);

// Throws std::invalid_argument unless 0 <= l <= u and L <= U.
void check_bounds(const RowColBounds& b);

// Tightens bounds implied by the others without changing the rank-1 set:
// u_i <= U, U <= sum u, L >= sum l, l_i >= L - sum_{k != i} u_k.
template <class T>
BasicRowColBounds<T> normalized(const BasicRowColBounds<T>& b);

// rank-1 set with general side constraints <A^k, W> <= b_k.
struct GeneralRank1Set {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<std::pair<RationalMatrix, Rational>> constraints;
};

// Side constraints A^k = alpha^k beta^T.
struct MultRank1Data {
  std::vector<std::vector<Rational>> alphas;
  std::vector<Rational> beta;
  std::vector<Rational> b;
};

enum class Family {
  PartitionUpper,
  PartitionLower,
  Ratio,
  AggPartitionUpper,
  AggPartitionLower,
  AggRatio,
  NonNeg,
  Fixing,
};

const char* family_name(Family f);

enum class Sense { LessEq, GreaterEq };

// Column j -> class label; 0 is the aggregate class, i+1 is row i.
struct Partition {
  std::vector<std::size_t> classes;
};

template <class T>
struct BasicCut {
  std::map<std::pair<std::size_t, std::size_t>, T> coeffs;
  Sense sense = Sense::LessEq;
  T rhs = T(0);
  Family family = Family::NonNeg;

  T lhs(const Matrix<T>& w) const;
  // Amount by which `w` violates the cut (<= 0 when satisfied).
  T violation(const Matrix<T>& w) const;
  BasicCut transposed() const;
  // `family: c*W[i,j] + ... <= rhs` with keys in (i,j) order.
  std::string to_string() const;
};

using CutInequality = BasicCut<Rational>;
using CutInequalityD = BasicCut<double>;

std::string var_W(std::size_t i, std::size_t j);
std::string var_t(std::size_t j);
std::vector<std::string> w_vars(std::size_t n1, std::size_t n2);
std::vector<std::string> wt_vars(std::size_t n1, std::size_t n2);

// {W >= 0, <A,W> <= b} for a single strictly positive constraint.
poly::Polyhedron hull_single_constraint(const GeneralRank1Set& s);

// Throws RecessionConditionViolated unless {u >= 0 : alpha^k.u <= 0} = {0}
// and beta > 0.
void check_recession(const MultRank1Data& d);

poly::Polyhedron build_ext_multrank1(const MultRank1Data& d);
poly::Polyhedron build_ext_row(const RowColBounds& b);
poly::Polyhedron build_ext_rowplus(const RowColBounds& b);
poly::Polyhedron build_ext_col(const RowColBounds& b);
poly::Polyhedron build_ext_colplus(const RowColBounds& b);

// Projects the t variables out of an extended system (order t[n2-1]..t[0]).
poly::Polyhedron project_t(const poly::Polyhedron& ext, std::size_t n2);

struct FamilyOptions {
  std::size_t cap = 1000000;
  bool include_lower = true;
};

// Every member of the hull description for U^row (or U^row+ when aggregate
// bounds are present), including nonnegativity and zero fixings.
std::vector<CutInequality> hull_inequalities_row(const RowColBounds& b,
                                                 const FamilyOptions& opts = {});
std::vector<CutInequality> hull_inequalities_col(const RowColBounds& b,
                                                 const FamilyOptions& opts = {});

// The polynomial-size part of the hull description: nonnegativity, zero-row
// fixings, and the ratio families.
std::vector<CutInequality> polynomial_inequalities_row(const RowColBounds& b);
std::vector<CutInequality> polynomial_inequalities_col(const RowColBounds& b);

poly::Polyhedron cuts_to_polyhedron(const std::vector<CutInequality>& cuts,
                                    std::size_t n1, std::size_t n2);

enum class Side { Upper, Lower };

template <class T>
struct Separation {
  BasicCut<T> cut;
  T violation;
  Partition partition;
};

// Optional comparison counter used to check the linear running time.
struct OpCounter {
  std::size_t comparisons = 0;
};

template <class T>
std::optional<Separation<T>> separate_row(const Matrix<T>& w,
                                          const BasicRowColBounds<T>& b,
                                          Side side, OpCounter* ops = nullptr);
template <class T>
std::optional<Separation<T>> separate_rowplus(const Matrix<T>& w,
                                              const BasicRowColBounds<T>& b,
                                              Side side,
                                              OpCounter* ops = nullptr);
template <class T>
std::optional<Separation<T>> separate_col(const Matrix<T>& w,
                                          const BasicRowColBounds<T>& b,
                                          Side side, OpCounter* ops = nullptr);
template <class T>
std::optional<Separation<T>> separate_colplus(const Matrix<T>& w,
                                              const BasicRowColBounds<T>& b,
                                              Side side,
                                              OpCounter* ops = nullptr);

// Data for constraint matrices A^k = alpha_k beta beta^T + gamma_k delta delta^T.
struct Rank2Structure {
  std::vector<Rational> alpha;
  std::vector<Rational> gamma;
  std::vector<Rational> beta;
  std::vector<Rational> delta;
};

struct SmallSupportOptions {
  std::size_t grid = 1024;
  std::size_t refine_cells = 5;
  std::size_t golden_iters = 40;
  double tol = 1e-6;
  // When set, constraints must follow this rank-2 structure and any number
  // of them is allowed; otherwise exactly two constraints are required.
  std::optional<Rank2Structure> structure;
};

struct SmallSupportResult {
  double value = 0;
  Matrix<double> w;
  std::size_t rows[2] = {0, 0};
  std::size_t cols[2] = {0, 0};
};

// Maximizes <C, W> over the rank-1 set by searching all supports of size at
// most 2x2 (extreme points never need more).
SmallSupportResult optimize_rank1_small_support(const GeneralRank1Set& s,
                                                const Matrix<double>& c,
                                                const SmallSupportOptions& opts = {});

// W(a) = [[a, a^2/(1-a)], [1-a, a]], a curve of extreme points of the 2x2
// set with both row and column bounds.
RationalMatrix row_col_witness(const Rational& a);
// Checks feasibility, rank one, and that W(a) is not a convex combination of
// two other curve points on a rational grid. Throws OutOfRange unless
// 0 <= a < 1.
bool row_col_witness_check(const Rational& a);

}  // namespace rankone::hull
