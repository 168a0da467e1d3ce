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

#include <stdexcept>

#include "rankone/errors.hpp"
#include "rankone/exact_lp.hpp"
#include "rankone/hull.hpp"

namespace rankone::hull {

using poly::Polyhedron;
using poly::Relation;

namespace {

RowColBounds transpose_bounds(const RowColBounds& b) {
  RowColBounds t = b;
  std::swap(t.n1, t.n2);
  return t;
}

// Renames W[i,j] -> W[j,i]; t names are left alone.
Polyhedron transpose_w(const Polyhedron& p, std::size_t n1, std::size_t n2) {
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) m[var_W(i, j)] = var_W(j, i);
  Polyhedron r = p.renamed(m);
  std::vector<std::string> order = w_vars(n2, n1);
  for (const auto& v : r.vars()) {
    if (v.rfind("W[", 0) != 0) order.push_back(v);
  }
  return r.over(order);
}

void add_simplex(Polyhedron& p, std::size_t n1, std::size_t n2) {
  std::vector<Rational> row(p.dim());
  for (std::size_t j = 0; j < n2; ++j) row[n1 * n2 + j] = 1;
  p.add_row(row, Relation::Equal, 1, "sum_t");
  for (std::size_t j = 0; j < n2; ++j) {
    std::vector<Rational> nn(p.dim());
    nn[n1 * n2 + j] = 1;
    p.add_row(std::move(nn), Relation::GreaterEq, 0, "t_nonneg");
  }
}

void check_row_bounds(const RowColBounds& b) {
  check_bounds(b);
  if (b.l.size() != b.n1) {
    throw std::invalid_argument("row bounds must have n1 entries");
  }
}

}  // namespace

Polyhedron hull_single_constraint(const GeneralRank1Set& s) {
  if (s.constraints.size() != 1) {
    throw std::invalid_argument("hull_single_constraint: need exactly one constraint");
  }
  const auto& [A, b] = s.constraints.front();
  if (A.rows() != s.n1 || A.cols() != s.n2) {
    throw std::invalid_argument("hull_single_constraint: shape mismatch");
  }
  Polyhedron p(w_vars(s.n1, s.n2));
  std::vector<Rational> row(s.n1 * s.n2);
  for (std::size_t i = 0; i < s.n1; ++i) {
    for (std::size_t j = 0; j < s.n2; ++j) {
      if (sgn(A(i, j)) <= 0) {
        throw NotBounded("single-constraint set needs A > 0 entrywise");
      }
      row[i * s.n2 + j] = A(i, j);
    }
  }
  for (std::size_t k = 0; k < s.n1 * s.n2; ++k) {
    std::vector<Rational> nn(s.n1 * s.n2);
    nn[k] = 1;
    p.add_row(std::move(nn), Relation::GreaterEq, 0, "nonneg");
  }
  p.add_row(std::move(row), Relation::LessEq, b, "side");
  return p;
}

void check_recession(const MultRank1Data& d) {
  for (const auto& v : d.beta) {
    if (sgn(v) <= 0) throw RecessionConditionViolated("beta must be positive");
  }
  if (d.alphas.empty()) {
    throw RecessionConditionViolated("no side constraints");
  }
  const std::size_t n1 = d.alphas.front().size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n1; ++i) names.push_back("u" + std::to_string(i));
  Polyhedron p(names);
  std::vector<Rational> ones(n1, Rational(1));
  for (std::size_t i = 0; i < n1; ++i) {
    std::vector<Rational> e(n1);
    e[i] = 1;
    p.add_row(std::move(e), Relation::GreaterEq, 0);
  }
  for (const auto& a : d.alphas) {
    if (a.size() != n1) throw std::invalid_argument("alpha length mismatch");
    p.add_row(a, Relation::LessEq, 0);
  }
  p.add_row(ones, Relation::LessEq, 1);
  auto res = poly::exact_maximize(p, ones);
  if (res.status != poly::LpStatus::Optimal || sgn(res.value) != 0) {
    throw RecessionConditionViolated(
        "some nonzero u >= 0 has alpha^k . u <= 0 for every k");
  }
}

Polyhedron build_ext_multrank1(const MultRank1Data& d) {
  check_recession(d);
  if (d.b.size() != d.alphas.size()) {
    throw std::invalid_argument("need one right-hand side per alpha");
  }
  const std::size_t n1 = d.alphas.front().size();
  const std::size_t n2 = d.beta.size();
  Polyhedron p(wt_vars(n1, n2));
  add_simplex(p, n1, n2);
  for (std::size_t k = 0; k < d.alphas.size(); ++k) {
    for (std::size_t j = 0; j < n2; ++j) {
      std::vector<Rational> row(p.dim());
      for (std::size_t i = 0; i < n1; ++i) row[i * n2 + j] = d.alphas[k][i] * d.beta[j];
      row[n1 * n2 + j] = -d.b[k];
      p.add_row(std::move(row), Relation::LessEq, 0, "side");
    }
  }
  for (std::size_t k = 0; k < n1 * n2; ++k) {
    std::vector<Rational> nn(p.dim());
    nn[k] = 1;
    p.add_row(std::move(nn), Relation::GreaterEq, 0, "nonneg");
  }
  return p;
}

Polyhedron build_ext_row(const RowColBounds& b) {
  check_row_bounds(b);
  const std::size_t n1 = b.n1, n2 = b.n2;
  Polyhedron p(wt_vars(n1, n2));
  add_simplex(p, n1, n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      std::vector<Rational> lo(p.dim()), hi(p.dim());
      lo[i * n2 + j] = 1;
      lo[n1 * n2 + j] = -b.l[i];
      hi[i * n2 + j] = 1;
      hi[n1 * n2 + j] = -b.u[i];
      p.add_row(std::move(lo), Relation::GreaterEq, 0, "lower");
      p.add_row(std::move(hi), Relation::LessEq, 0, "upper");
    }
  }
  return p;
}

Polyhedron build_ext_rowplus(const RowColBounds& b) {
  if (!b.agg_U) throw std::invalid_argument("build_ext_rowplus: U required");
  Polyhedron p = build_ext_row(b);
  const std::size_t n1 = b.n1, n2 = b.n2;
  for (std::size_t j = 0; j < n2; ++j) {
    std::vector<Rational> lo(p.dim()), hi(p.dim());
    for (std::size_t i = 0; i < n1; ++i) {
      lo[i * n2 + j] = 1;
      hi[i * n2 + j] = 1;
    }
    lo[n1 * n2 + j] = -b.L();
    hi[n1 * n2 + j] = -*b.agg_U;
    p.add_row(std::move(lo), Relation::GreaterEq, 0, "agg_lower");
    p.add_row(std::move(hi), Relation::LessEq, 0, "agg_upper");
  }
  return p;
}

Polyhedron build_ext_col(const RowColBounds& b) {
  return transpose_w(build_ext_row(transpose_bounds(b)), b.n2, b.n1);
}

Polyhedron build_ext_colplus(const RowColBounds& b) {
  return transpose_w(build_ext_rowplus(transpose_bounds(b)), b.n2, b.n1);
}

Polyhedron project_t(const Polyhedron& ext, std::size_t count) {
  std::vector<std::string> order;
  for (std::size_t j = count; j-- > 0;) order.push_back(var_t(j));
  return poly::fm_eliminate_all(ext, order);
}

}  // namespace rankone::hull
