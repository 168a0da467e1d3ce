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

#include "rankone/exact_lp.hpp"

namespace rankone::poly {
namespace {

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n)
      : m_(m), n_(n), t_(m + 1, std::vector<Rational>(n + 1)), basis_(m) {}

  Rational& a(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][n_]; }
  Rational& d(std::size_t j) { return t_[m_][j]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) {
      if (sgn(v) != 0) v *= inv;
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j) {
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  // Loads the reduced-cost row for maximizing cost . x.
  void price(const std::vector<Rational>& cost) {
    for (std::size_t j = 0; j < n_; ++j) d(j) = cost[j];
    d(n_) = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (sgn(t_[i][j]) != 0) t_[m_][j] -= cb * t_[i][j];
      }
    }
  }

  // Bland's rule over the columns j < limit. Returns false on unboundedness.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(d(j)) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

bool is_sign_row(const Row& r, std::size_t& var) {
  if (sgn(r.rhs) != 0 || r.rel == Relation::Equal) return false;
  std::size_t nz = 0;
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (sgn(r.coeffs[k]) != 0) {
      ++nz;
      var = k;
    }
  }
  if (nz != 1) return false;
  int s = sgn(r.coeffs[var]);
  return (r.rel == Relation::GreaterEq && s > 0) ||
         (r.rel == Relation::LessEq && s < 0);
}

}  // namespace

ExactLpResult exact_maximize(const Polyhedron& p, std::span<const Rational> c) {
  const std::size_t nv = p.dim();
  if (c.size() != nv) throw std::invalid_argument("objective length mismatch");

  std::vector<bool> nonneg(nv, false);
  std::vector<const Row*> rows;
  for (const auto& r : p.rows()) {
    std::size_t k = 0;
    if (is_sign_row(r, k)) {
      nonneg[k] = true;
    } else {
      rows.push_back(&r);
    }
  }

  // Structural columns: x_k = plus - minus (minus only for free variables).
  std::vector<std::size_t> plus(nv), minus(nv, SIZE_MAX);
  std::size_t ncol = 0;
  for (std::size_t k = 0; k < nv; ++k) {
    plus[k] = ncol++;
    if (!nonneg[k]) minus[k] = ncol++;
  }
  std::vector<std::size_t> slack(rows.size(), SIZE_MAX);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]->rel != Relation::Equal) slack[i] = ncol++;
  }
  const std::size_t nreal = ncol;

  // Decide which rows need an artificial.
  std::vector<int> flip(rows.size(), 1);
  std::vector<bool> needs_art(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(rows[i]->rhs) < 0) flip[i] = -1;
    int slack_sign = rows[i]->rel == Relation::LessEq     ? 1
                     : rows[i]->rel == Relation::GreaterEq ? -1
                                                           : 0;
    needs_art[i] = slack_sign * flip[i] != 1;
  }
  std::vector<std::size_t> art(rows.size(), SIZE_MAX);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (needs_art[i]) art[i] = ncol++;
  }

  Tableau tab(rows.size(), ncol);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = *rows[i];
    Rational f = flip[i];
    for (std::size_t k = 0; k < nv; ++k) {
      if (sgn(r.coeffs[k]) == 0) continue;
      tab.a(i, plus[k]) = f * r.coeffs[k];
      if (minus[k] != SIZE_MAX) tab.a(i, minus[k]) = -f * r.coeffs[k];
    }
    if (slack[i] != SIZE_MAX) {
      tab.a(i, slack[i]) = r.rel == Relation::LessEq ? f : Rational(-f);
    }
    if (art[i] != SIZE_MAX) {
      tab.a(i, art[i]) = 1;
      tab.basis()[i] = art[i];
    } else {
      tab.basis()[i] = slack[i];
    }
    tab.rhs(i) = f * r.rhs;
  }

  ExactLpResult res;
  if (ncol > nreal) {
    std::vector<Rational> phase1(ncol);
    for (std::size_t j = nreal; j < ncol; ++j) phase1[j] = -1;
    tab.price(phase1);
    tab.optimize(ncol);
    // d(n) holds -(objective); phase-1 objective is -sum(artificials).
    if (sgn(tab.d(ncol)) != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < nreal) {
        ++i;
        continue;
      }
      std::size_t col = nreal;
      for (std::size_t j = 0; j < nreal; ++j) {
        if (sgn(tab.a(i, j)) != 0) {
          col = j;
          break;
        }
      }
      if (col == nreal) {
        tab.drop_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<Rational> cost(ncol);
  for (std::size_t k = 0; k < nv; ++k) {
    cost[plus[k]] = c[k];
    if (minus[k] != SIZE_MAX) cost[minus[k]] = -c[k];
  }
  tab.price(cost);
  if (!tab.optimize(nreal)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  std::vector<Rational> col_val(ncol);
  for (std::size_t i = 0; i < tab.rows(); ++i) col_val[tab.basis()[i]] = tab.rhs(i);
  res.status = LpStatus::Optimal;
  res.x.resize(nv);
  for (std::size_t k = 0; k < nv; ++k) {
    res.x[k] = col_val[plus[k]];
    if (minus[k] != SIZE_MAX) res.x[k] -= col_val[minus[k]];
  }
  res.value = 0;
  for (std::size_t k = 0; k < nv; ++k) res.value += c[k] * res.x[k];
  return res;
}

ExactLpResult exact_minimize(const Polyhedron& p, std::span<const Rational> c) {
  std::vector<Rational> neg(c.begin(), c.end());
  for (auto& v : neg) v = -v;
  ExactLpResult r = exact_maximize(p, neg);
  if (r.status == LpStatus::Optimal) r.value = -r.value;
  return r;
}

bool exact_feasible(const Polyhedron& p) {
  std::vector<Rational> zero(p.dim());
  return exact_maximize(p, zero).status == LpStatus::Optimal;
}

}  // namespace rankone::poly
