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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "rankone/errors.hpp"
#include "rankone/exact_lp.hpp"
#include "rankone/hull.hpp"

namespace rankone::hull {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-12;

void check_structure(const GeneralRank1Set& s, const Rank2Structure& st) {
  const std::size_t m = s.constraints.size();
  if (s.n1 != s.n2) throw StructureMismatch("rank-2 structure needs a square matrix");
  if (st.alpha.size() != m || st.gamma.size() != m || st.beta.size() != s.n1 ||
      st.delta.size() != s.n1) {
    throw StructureMismatch("rank-2 structure has inconsistent lengths");
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (sgn(st.alpha[k]) < 0 || sgn(st.gamma[k]) < 0) {
      throw StructureMismatch("rank-2 weights must be nonnegative");
    }
  }
  for (std::size_t i = 0; i < s.n1; ++i) {
    if (sgn(st.beta[i]) <= 0 || sgn(st.delta[i]) <= 0) {
      throw StructureMismatch("rank-2 vectors must be positive");
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    const RationalMatrix& A = s.constraints[k].first;
    for (std::size_t i = 0; i < s.n1; ++i) {
      for (std::size_t j = 0; j < s.n2; ++j) {
        Rational want = st.alpha[k] * st.beta[i] * st.beta[j] +
                        st.gamma[k] * st.delta[i] * st.delta[j];
        if (A(i, j) != want) {
          throw StructureMismatch("constraint matrix does not match structure");
        }
      }
    }
  }
}

void check_bounded(const GeneralRank1Set& s) {
  const std::size_t n = s.n1 * s.n2;
  std::vector<std::string> names = w_vars(s.n1, s.n2);
  poly::Polyhedron p(names);
  std::vector<Rational> ones(n, Rational(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> e(n);
    e[k] = 1;
    p.add_row(std::move(e), poly::Relation::GreaterEq, 0);
  }
  for (const auto& [A, b] : s.constraints) {
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < s.n1; ++i)
      for (std::size_t j = 0; j < s.n2; ++j) row[i * s.n2 + j] = A(i, j);
    p.add_row(std::move(row), poly::Relation::LessEq, 0);
  }
  p.add_row(ones, poly::Relation::LessEq, 1);
  auto res = poly::exact_maximize(p, ones);
  if (res.status != poly::LpStatus::Optimal || sgn(res.value) != 0) {
    throw NotBounded("rank-1 set is unbounded");
  }
}

struct Support {
  std::size_t r[2];
  std::size_t nr;
  std::size_t c[2];
  std::size_t nc;
};

// max c.x s.t. a_k.x <= b_k, x >= 0 for x in R^1 or R^2, by enumerating
// the vertices of the (bounded) feasible region.
struct SmallLp {
  std::size_t dim = 0;
  double c[2] = {0, 0};
  std::vector<std::array<double, 2>> a;
  std::vector<double> b;

  bool feasible(const double* x) const {
    for (std::size_t d = 0; d < dim; ++d) {
      if (x[d] < -kFeasTol) return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      double lhs = 0;
      for (std::size_t d = 0; d < dim; ++d) lhs += a[k][d] * x[d];
      if (lhs > b[k] + kFeasTol * (1 + std::fabs(b[k]))) return false;
    }
    return true;
  }

  double solve(double* arg) const {
    double best = kNegInf;
    auto consider = [&](const double* x) {
      if (!feasible(x)) return;
      double v = 0;
      for (std::size_t d = 0; d < dim; ++d) v += c[d] * x[d];
      if (v > best) {
        best = v;
        for (std::size_t d = 0; d < dim; ++d) arg[d] = std::max(0.0, x[d]);
      }
    };
    // Boundary lines: constraint k for k < m, then x_d = 0.
    const std::size_t m = a.size();
    auto line = [&](std::size_t idx, double* coef, double& rhs) {
      if (idx < m) {
        coef[0] = a[idx][0];
        coef[1] = a[idx][1];
        rhs = b[idx];
      } else {
        coef[0] = idx - m == 0 ? 1.0 : 0.0;
        coef[1] = idx - m == 1 ? 1.0 : 0.0;
        rhs = 0;
      }
    };
    const std::size_t lines = m + dim;
    if (dim == 1) {
      for (std::size_t p = 0; p < lines; ++p) {
        double coef[2], rhs;
        line(p, coef, rhs);
        if (coef[0] == 0) continue;
        double x[1] = {rhs / coef[0]};
        consider(x);
      }
      return best;
    }
    for (std::size_t p = 0; p < lines; ++p) {
      double cp[2], rp;
      line(p, cp, rp);
      for (std::size_t q = p + 1; q < lines; ++q) {
        double cq[2], rq;
        line(q, cq, rq);
        double det = cp[0] * cq[1] - cp[1] * cq[0];
        if (det == 0) continue;
        double x[2] = {(rp * cq[1] - cp[1] * rq) / det,
                       (cp[0] * rq - rp * cq[0]) / det};
        consider(x);
      }
    }
    return best;
  }
};

class SupportSearch {
 public:
  SupportSearch(const std::vector<Matrix<double>>& A, const std::vector<double>& b,
                const Matrix<double>& C, const Support& sup)
      : A_(A), b_(b), C_(C), sup_(sup) {}

  // Objective value with column weights (t, 1 - t); writes the row part.
  double eval(double t, double* x) const {
    SmallLp lp;
    lp.dim = sup_.nr;
    const double y[2] = {t, 1 - t};
    for (std::size_t r = 0; r < sup_.nr; ++r) {
      double v = 0;
      for (std::size_t q = 0; q < sup_.nc; ++q) v += C_(sup_.r[r], sup_.c[q]) * y[q];
      lp.c[r] = v;
    }
    for (std::size_t k = 0; k < A_.size(); ++k) {
      std::array<double, 2> row{0, 0};
      for (std::size_t r = 0; r < sup_.nr; ++r) {
        for (std::size_t q = 0; q < sup_.nc; ++q) row[r] += A_[k](sup_.r[r], sup_.c[q]) * y[q];
      }
      lp.a.push_back(row);
      lp.b.push_back(b_[k]);
    }
    return lp.solve(x);
  }

 private:
  const std::vector<Matrix<double>>& A_;
  const std::vector<double>& b_;
  const Matrix<double>& C_;
  Support sup_;
};

std::vector<std::array<std::size_t, 2>> index_sets(std::size_t n, std::size_t& size) {
  std::vector<std::array<std::size_t, 2>> out;
  if (n == 1) {
    size = 1;
    out.push_back({0, 0});
    return out;
  }
  size = 2;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) out.push_back({a, b});
  return out;
}

}  // namespace

SmallSupportResult optimize_rank1_small_support(const GeneralRank1Set& s,
                                                const Matrix<double>& c,
                                                const SmallSupportOptions& opts) {
  if (c.rows() != s.n1 || c.cols() != s.n2) {
    throw std::invalid_argument("objective shape mismatch");
  }
  for (const auto& [A, b] : s.constraints) {
    if (A.rows() != s.n1 || A.cols() != s.n2) {
      throw std::invalid_argument("constraint shape mismatch");
    }
  }
  if (opts.structure) {
    check_structure(s, *opts.structure);
  } else if (s.constraints.size() > 2) {
    throw StructureMismatch("more than two constraints need a rank-2 structure");
  }
  if (opts.grid < 2) throw ParamError("grid needs at least two points");
  check_bounded(s);

  std::vector<Matrix<double>> A;
  std::vector<double> b;
  for (const auto& [Ak, bk] : s.constraints) {
    A.push_back(Ak.cast<double>());
    b.push_back(bk.get_d());
  }

  SmallSupportResult best;
  best.value = kNegInf;
  best.w = Matrix<double>(s.n1, s.n2, 0.0);
  // W = 0 is rank-1 and feasible whenever every right-hand side is nonnegative
  if (std::all_of(b.begin(), b.end(), [](double v) { return v >= 0; })) best.value = 0;
  std::size_t nr = 0, nc = 0;
  const auto row_sets = index_sets(s.n1, nr);
  const auto col_sets = index_sets(s.n2, nc);

  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) {
      Support sup{{rs[0], rs[1]}, nr, {cs[0], cs[1]}, nc};
      SupportSearch search(A, b, c, sup);
      double bt = 1, bx[2] = {0, 0};
      double bv = kNegInf;
      auto take = [&](double t) {
        double x[2] = {0, 0};
        double v = search.eval(t, x);
        if (v > bv) {
          bv = v;
          bt = t;
          bx[0] = x[0];
          bx[1] = x[1];
        }
        return v;
      };
      if (nc == 1) {
        take(1.0);
      } else {
        const std::size_t K = opts.grid;
        std::vector<double> g(K);
        for (std::size_t k = 0; k < K; ++k) {
          g[k] = take(static_cast<double>(k) / static_cast<double>(K - 1));
        }
        std::vector<std::size_t> order(K);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t cells = std::min(opts.refine_cells, K);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cells),
                          order.end(),
                          [&](std::size_t x, std::size_t y) {
                            return g[x] > g[y] || (g[x] == g[y] && x < y);
                          });
        const double phi = (std::sqrt(5.0) - 1) / 2;
        for (std::size_t q = 0; q < cells; ++q) {
          std::size_t k = order[q];
          if (!std::isfinite(g[k])) continue;
          double lo = static_cast<double>(k == 0 ? 0 : k - 1) / static_cast<double>(K - 1);
          double hi = static_cast<double>(std::min(k + 1, K - 1)) / static_cast<double>(K - 1);
          double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
          double f1 = take(x1), f2 = take(x2);
          for (std::size_t it = 0; it < opts.golden_iters; ++it) {
            if (f1 >= f2) {
              hi = x2;
              x2 = x1;
              f2 = f1;
              x1 = hi - phi * (hi - lo);
              f1 = take(x1);
            } else {
              lo = x1;
              x1 = x2;
              f1 = f2;
              x2 = lo + phi * (hi - lo);
              f2 = take(x2);
            }
          }
        }
      }
      if (!std::isfinite(bv)) continue;
      // Earlier supports win ties within tol.
      if (!std::isfinite(best.value) ||
          bv > best.value + opts.tol * std::max(1.0, std::fabs(best.value))) {
        best.value = bv;
        best.w = Matrix<double>(s.n1, s.n2, 0.0);
        const double y[2] = {nc == 1 ? 1.0 : bt, 1 - bt};
        for (std::size_t r = 0; r < nr; ++r)
          for (std::size_t q = 0; q < nc; ++q) best.w(sup.r[r], sup.c[q]) = bx[r] * y[q];
        best.rows[0] = sup.r[0];
        best.rows[1] = sup.r[nr - 1];
        best.cols[0] = sup.c[0];
        best.cols[1] = sup.c[nc - 1];
      }
    }
  }
  if (!std::isfinite(best.value)) throw ParamError("rank-1 set is empty");
  return best;
}

}  // namespace rankone::hull
