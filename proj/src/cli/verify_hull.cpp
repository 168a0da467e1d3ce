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

#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "commands.hpp"
#include "rankone/discretize.hpp"
#include "rankone/errors.hpp"
#include "rankone/hull.hpp"
#include "rankone/polyhedron.hpp"
#include "rankone/solver.hpp"

namespace rankone::cli {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  long integer(long lo, long hi) {
    return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational fraction(long lo, long hi, long den) { return make_rational(integer(lo * den, hi * den), den); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// Cycles through bound patterns: no lower bounds, all rows with lower
// bounds, some zero rows, and a free mix.
hull::RowColBounds random_bounds(Rng& rng, std::size_t n1, std::size_t n2, std::size_t trial, bool agg) {
  hull::RowColBounds b;
  b.n1 = n1;
  b.n2 = n2;
  const std::size_t zero_row = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n1) - 1));
  Rational su = 0, sl = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    Rational u = rng.fraction(1, 4, 2);
    Rational l = 0;
    switch (trial % 4) {
      case 0: break;
      case 1: l = u * make_rational(rng.integer(1, 3), 4); break;
      case 2:
        if (i == zero_row) u = 0;
        else if (rng.integer(0, 1)) l = u / 2;
        break;
      default:
        if (rng.integer(0, 1)) l = u * make_rational(rng.integer(0, 4), 4);
    }
    b.u.push_back(u);
    b.l.push_back(l);
    su += u;
    sl += l;
  }
  if (agg) {
    Rational U = sl + (su - sl) * make_rational(rng.integer(1, 4), 4);
    if (sgn(U) == 0) U = 1;
    b.agg_U = U;
    b.agg_L = U * make_rational(rng.integer(0, 3), 4);
  }
  return b;
}

hull::RowColBounds normalize(hull::RowColBounds b) {
  if (!b.agg_U) return b;
  Rational U = *b.agg_U, su = 0, sl = 0;
  for (auto& u : b.u) {
    if (u > U) u = U;
    su += u;
  }
  if (U > su) U = su;
  for (const auto& l : b.l) sl += l;
  Rational L = b.L() < sl ? sl : b.L();
  for (std::size_t i = 0; i < b.l.size(); ++i) {
    Rational floor = L - (su - b.u[i]);
    if (floor > b.l[i]) b.l[i] = floor;
  }
  b.agg_U = U;
  b.agg_L = L;
  return b;
}

// Largest violation over all column partitions; empty when the family is.
std::optional<Rational> enumerate_violation(const RationalMatrix& w, const hull::RowColBounds& raw,
                                            hull::Side side, bool plus) {
  const auto b = plus ? normalize(raw) : raw;
  const bool upper = side == hull::Side::Upper;
  std::vector<long> labels;
  for (std::size_t i = 0; i < b.n1; ++i)
    if (upper ? sgn(b.u[i]) > 0 : sgn(b.l[i]) > 0) labels.push_back(static_cast<long>(i));
  Rational agg = plus ? (upper ? *b.agg_U : b.L()) : Rational(0);
  if (plus && sgn(agg) > 0) labels.push_back(-1);
  if (labels.empty()) return std::nullopt;
  std::optional<Rational> best;
  std::vector<std::size_t> pick(b.n2, 0);
  for (;;) {
    Rational theta = 0;
    for (std::size_t j = 0; j < b.n2; ++j) {
      const long lab = labels[pick[j]];
      if (lab < 0) {
        for (std::size_t i = 0; i < b.n1; ++i)
          if (sgn(b.u[i]) > 0) theta += w(i, j) / agg;
      } else {
        const auto i = static_cast<std::size_t>(lab);
        theta += w(i, j) / (upper ? b.u[i] : b.l[i]);
      }
    }
    Rational viol = upper ? Rational(theta - 1) : Rational(1 - theta);
    if (!best || viol > *best) best = viol;
    std::size_t j = 0;
    while (j < b.n2 && ++pick[j] == labels.size()) pick[j++] = 0;
    if (j == b.n2) break;
  }
  return best;
}

struct Tally {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  void record(bool ok) {
    ++total;
    if (ok) ++passed;
  }
};

bool hull_equality(const hull::RowColBounds& b, bool plus) {
  auto ext = plus ? hull::build_ext_rowplus(b) : hull::build_ext_row(b);
  auto projected = hull::project_t(ext, b.n2);
  auto cuts = hull::cuts_to_polyhedron(hull::hull_inequalities_row(b), b.n1, b.n2);
  return poly::poly_equal(projected, cuts);
}

bool one_column_vertices(Rng& rng, std::size_t n1, std::size_t n2) {
  hull::MultRank1Data d;
  const long k = rng.integer(1, 2);
  for (long c = 0; c < k; ++c) {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n1; ++i) a.push_back(Rational(rng.integer(1, 4)));
    d.alphas.push_back(std::move(a));
    d.b.push_back(Rational(rng.integer(1, 5)));
  }
  for (std::size_t j = 0; j < n2; ++j) d.beta.push_back(Rational(rng.integer(1, 3)));
  auto p = hull::project_t(hull::build_ext_multrank1(d), n2);
  auto vs = poly::vertices(p);
  if (!vs.rays.empty() || !vs.lines.empty()) return false;
  for (const auto& v : vs.points) {
    std::size_t nonzero_cols = 0;
    for (std::size_t j = 0; j < n2; ++j) {
      bool nz = false;
      for (std::size_t i = 0; i < n1; ++i) nz = nz || sgn(v[i * n2 + j]) != 0;
      if (nz) ++nonzero_cols;
    }
    if (nonzero_cols > 1) return false;
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t c = a + 1; c < n1; ++c)
        for (std::size_t j = 0; j < n2; ++j)
          for (std::size_t l = j + 1; l < n2; ++l)
            if (v[a * n2 + j] * v[c * n2 + l] != v[a * n2 + l] * v[c * n2 + j]) return false;
  }
  return true;
}

bool separation_agrees(Rng& rng, const hull::RowColBounds& b, bool plus) {
  RationalMatrix w(b.n1, b.n2);
  for (std::size_t i = 0; i < b.n1; ++i)
    for (std::size_t j = 0; j < b.n2; ++j) w(i, j) = rng.fraction(0, 2, 4);
  for (hull::Side side : {hull::Side::Upper, hull::Side::Lower}) {
    auto expect = enumerate_violation(w, b, side, plus);
    std::optional<hull::Separation<Rational>> got;
    try {
      got = plus ? hull::separate_rowplus(w, b, side) : hull::separate_row(w, b, side);
    } catch (const NoLowerBounds&) {
      if (expect) return false;
      continue;
    }
    const bool violated = expect && sgn(*expect) > 0;
    if (violated != got.has_value()) return false;
    if (got && (got->violation != *expect || got->cut.violation(w) != *expect)) return false;
  }
  return true;
}

// Rank-1 point W = x y^T with unit column-ratio sum, extended by the binary
// expansion of the ratios.
bool outer_witness(Rng& rng, std::size_t n1, std::size_t n2) {
  hull::RowColBoundsD b;
  b.n1 = n1;
  b.n2 = n2;
  std::vector<double> r(n1), t(n2);
  double ts = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    b.u.push_back(static_cast<double>(rng.integer(1, 4)));
    b.l.push_back(rng.integer(0, 1) ? 0.0 : b.u.back() / 4);
    r[i] = b.l[i] + (b.u[i] - b.l[i]) * rng.unit();
  }
  for (auto& v : t) ts += (v = rng.unit());
  for (auto& v : t) v /= ts;
  const int H = static_cast<int>(rng.integer(1, 4));
  auto blk = discretize::build_outer(b, H);
  std::vector<double> x(blk.model.num_vars(), 0.0);
  for (std::size_t j = 0; j < n2; ++j) {
    double rest = t[j];
    for (int h = 0; h < H; ++h) {
      const double digit = std::ldexp(1.0, -(h + 1));
      const double bit = rest >= digit ? 1.0 : 0.0;
      rest -= bit * digit;
      x[blk.model.var(blk.z[j][h])] = bit;
      for (std::size_t i = 0; i < n1; ++i) x[blk.model.var(blk.alpha[i][j][h])] = r[i] * bit;
    }
    x[blk.model.var(blk.gamma[j])] = rest;
    for (std::size_t i = 0; i < n1; ++i) {
      x[blk.model.var(blk.beta[i][j])] = r[i] * rest;
      x[blk.model.var(blk.W[i][j])] = r[i] * t[j];
    }
  }
  return blk.model.max_violation(x) <= 1e-9;
}

bool inner_sample(Rng& rng, std::size_t n1, std::size_t n2) {
  hull::RowColBoundsD b;
  b.n1 = n1;
  b.n2 = n2;
  for (std::size_t i = 0; i < n1; ++i) {
    b.u.push_back(static_cast<double>(rng.integer(1, 4)));
    b.l.push_back(rng.integer(0, 1) ? 0.0 : b.u.back() / 2);
  }
  auto blk = discretize::build_inner(b, static_cast<int>(rng.integer(1, 3)));
  auto m = blk.model;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) m.set_objective(m.var(blk.W[i][j]), 2 * rng.unit() - 1);
  auto res = solver::solve_milp(m);
  if (res.status != solver::Status::Optimal) return false;
  auto at = [&](std::size_t i, std::size_t j) { return res.x[m.var(blk.W[i][j])]; };
  for (std::size_t i = 0; i < n1; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n2; ++j) s += at(i, j);
    if (s < b.l[i] - 1e-9 || s > b.u[i] + 1e-9) return false;
  }
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t c = a + 1; c < n1; ++c)
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t l = j + 1; l < n2; ++l)
          if (std::fabs(at(a, j) * at(c, l) - at(a, l) * at(c, j)) > 1e-9) return false;
  return true;
}

}  // namespace

int cmd_verify_hull(const VerifyArgs& args, std::ostream& out, std::ostream&) {
  Rng rng(args.seed);
  const std::size_t n1 = args.n1, n2 = args.n2;
  std::vector<Tally> tallies = {{"hull equality (row)"},      {"hull equality (row+)"},
                                {"one-column vertices"},      {"separation (row)"},
                                {"separation (row+)"},        {"row-col witness"},
                                {"rank-2 point rejected"},    {"outer discretization witness"},
                                {"inner discretization rank"}};
  for (std::size_t trial = 0; trial < args.trials; ++trial) {
    tallies[0].record(hull_equality(random_bounds(rng, n1, n2, trial, false), false));
    tallies[1].record(hull_equality(random_bounds(rng, n1, n2, trial, true), true));
    tallies[2].record(one_column_vertices(rng, n1, n2));
    tallies[3].record(separation_agrees(rng, random_bounds(rng, n1, n2, trial, false), false));
    tallies[4].record(separation_agrees(rng, random_bounds(rng, n1, n2, trial, true), true));
    tallies[7].record(outer_witness(rng, n1, n2));
    tallies[8].record(inner_sample(rng, n1, n2));
  }
  for (const auto& a : {make_rational(0), make_rational(1, 4), make_rational(1, 3), make_rational(1, 2)})
    tallies[5].record(hull::row_col_witness_check(a));

  hull::RowColBounds unit;
  unit.n1 = unit.n2 = 2;
  unit.l = {Rational(0), Rational(0)};
  unit.u = {Rational(1), Rational(1)};
  const RationalMatrix identity{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  bool cut_off = false;
  for (const auto& c : hull::hull_inequalities_row(unit)) cut_off = cut_off || sgn(c.violation(identity)) > 0;
  tallies[6].record(cut_off);

  bool ok = true;
  for (const auto& t : tallies) {
    out << t.name << ": " << t.passed << "/" << t.total << (t.passed == t.total ? " ok" : " FAILED") << '\n';
    ok = ok && t.passed == t.total;
  }
  out << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? 0 : 1;
}

}  // namespace rankone::cli
