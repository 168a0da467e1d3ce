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

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rankone/hull.hpp"

namespace rankone::hull {

RowColBoundsD to_double(const RowColBounds& b) {
  RowColBoundsD d;
  d.n1 = b.n1;
  d.n2 = b.n2;
  for (const auto& v : b.l) d.l.push_back(v.get_d());
  for (const auto& v : b.u) d.u.push_back(v.get_d());
  if (b.agg_L) d.agg_L = b.agg_L->get_d();
  if (b.agg_U) d.agg_U = b.agg_U->get_d();
  return d;
}

void check_bounds(const RowColBounds& b) {
  if (b.l.size() != b.u.size()) {
    throw std::invalid_argument("bounds: l and u differ in length");
  }
  for (std::size_t i = 0; i < b.l.size(); ++i) {
    if (sgn(b.l[i]) < 0 || b.l[i] > b.u[i]) {
      throw std::invalid_argument("bounds: need 0 <= l <= u at index " +
                                  std::to_string(i));
    }
  }
  if (b.agg_L && !b.agg_U) {
    throw std::invalid_argument("bounds: aggregate lower bound without upper");
  }
  if (b.agg_U && (sgn(b.L()) < 0 || b.L() > *b.agg_U)) {
    throw std::invalid_argument("bounds: need 0 <= L <= U");
  }
}

template <class T>
BasicRowColBounds<T> normalized(const BasicRowColBounds<T>& b) {
  BasicRowColBounds<T> n = b;
  if (!n.agg_U) return n;
  T U = *n.agg_U;
  T sum_u = T(0);
  for (auto& u : n.u) {
    if (u > U) u = U;
    sum_u += u;
  }
  if (U > sum_u) U = sum_u;
  T L = n.L();
  T sum_l = T(0);
  for (const auto& l : n.l) sum_l += l;
  if (L < sum_l) L = sum_l;
  for (std::size_t i = 0; i < n.l.size(); ++i) {
    T floor = L - (sum_u - n.u[i]);
    if (floor > n.l[i]) n.l[i] = floor;
  }
  n.agg_U = U;
  n.agg_L = L;
  return n;
}

template BasicRowColBounds<Rational> normalized(const BasicRowColBounds<Rational>&);
template BasicRowColBounds<double> normalized(const BasicRowColBounds<double>&);

const char* family_name(Family f) {
  switch (f) {
    case Family::PartitionUpper: return "partition_upper";
    case Family::PartitionLower: return "partition_lower";
    case Family::Ratio: return "ratio";
    case Family::AggPartitionUpper: return "agg_partition_upper";
    case Family::AggPartitionLower: return "agg_partition_lower";
    case Family::AggRatio: return "agg_ratio";
    case Family::NonNeg: return "nonneg";
    case Family::Fixing: return "fixing";
  }
  return "?";
}

std::string var_W(std::size_t i, std::size_t j) {
  return "W[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

std::string var_t(std::size_t j) { return "t[" + std::to_string(j) + "]"; }

std::vector<std::string> w_vars(std::size_t n1, std::size_t n2) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) v.push_back(var_W(i, j));
  return v;
}

std::vector<std::string> wt_vars(std::size_t n1, std::size_t n2) {
  auto v = w_vars(n1, n2);
  for (std::size_t j = 0; j < n2; ++j) v.push_back(var_t(j));
  return v;
}

template <class T>
T BasicCut<T>::lhs(const Matrix<T>& w) const {
  T s = T(0);
  for (const auto& [ij, c] : coeffs) s += c * w(ij.first, ij.second);
  return s;
}

template <class T>
T BasicCut<T>::violation(const Matrix<T>& w) const {
  T v = lhs(w);
  return sense == Sense::LessEq ? T(v - rhs) : T(rhs - v);
}

template <class T>
BasicCut<T> BasicCut<T>::transposed() const {
  BasicCut<T> out = *this;
  out.coeffs.clear();
  for (const auto& [ij, c] : coeffs) out.coeffs[{ij.second, ij.first}] = c;
  return out;
}

namespace {
std::string fmt(const Rational& v) { return v.get_str(); }
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

template <class T>
std::string BasicCut<T>::to_string() const {
  std::ostringstream os;
  os << family_name(family) << ":";
  bool first = true;
  for (const auto& [ij, c] : coeffs) {
    bool neg = c < T(0);
    if (first) {
      os << ' ' << (neg ? "-" : "");
    } else {
      os << (neg ? " - " : " + ");
    }
    os << fmt(neg ? T(-c) : c) << '*' << var_W(ij.first, ij.second);
    first = false;
  }
  if (first) os << " 0";
  os << (sense == Sense::LessEq ? " <= " : " >= ") << fmt(rhs);
  return os.str();
}

template struct BasicCut<Rational>;
template struct BasicCut<double>;

poly::Polyhedron cuts_to_polyhedron(const std::vector<CutInequality>& cuts,
                                    std::size_t n1, std::size_t n2) {
  poly::Polyhedron p(w_vars(n1, n2));
  for (const auto& c : cuts) {
    std::vector<Rational> row(n1 * n2);
    for (const auto& [ij, v] : c.coeffs) row[ij.first * n2 + ij.second] += v;
    p.add_row(std::move(row),
              c.sense == Sense::LessEq ? poly::Relation::LessEq
                                       : poly::Relation::GreaterEq,
              c.rhs, family_name(c.family));
  }
  return p;
}

}  // namespace rankone::hull
