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

// Acceptance suite: one PASS/FAIL line per criterion. Run with criterion
// numbers as arguments to select a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "models.hpp"
#include "oracles.hpp"
#include "rankone/cutloop.hpp"
#include "rankone/discretize.hpp"
#include "rankone/errors.hpp"
#include "rankone/formulate.hpp"
#include "rankone/hull.hpp"
#include "rankone/polyhedron.hpp"
#include "rankone/pooling.hpp"
#include "rankone/solver.hpp"
#include "witness.hpp"

using namespace rankone;
using formulate::Tag;
using testing::Gen;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::size_t failures = 0;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures++ < 3) note << (note.tellp() > 0 ? "; " : "") << what;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool le(double a, double b, double rel = 1e-6) { return a <= b + rel * std::max(1.0, std::fabs(b)); }

std::string str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

// Bound patterns by trial: no lower bounds, all rows with lower bounds, a
// zero row, a free mix.
hull::RowColBounds patterned_bounds(Gen& g, std::size_t n1, std::size_t n2, int trial, bool agg) {
  hull::RowColBounds b;
  b.n1 = n1;
  b.n2 = n2;
  const auto zero_row = static_cast<std::size_t>(g.integer(0, static_cast<long>(n1) - 1));
  Rational su = 0, sl = 0;
  for (std::size_t i = 0; i < n1; ++i) {
    Rational u = g.rational(1, 3, 2);
    Rational l = 0;
    if (trial % 4 == 1) l = u * g.integer(1, 3) / 4;
    else if (trial % 4 == 2 && i == zero_row) u = 0;
    else if (trial % 4 == 2 || trial % 4 == 3) l = g.coin() ? Rational(0) : Rational(u * g.integer(0, 4) / 4);
    b.u.push_back(u);
    b.l.push_back(l);
    su += u;
    sl += l;
  }
  if (agg) {
    Rational U = sl + (su - sl) * g.integer(1, 4) / 4;
    if (sgn(U) == 0) U = 1;
    b.agg_U = U;
    b.agg_L = g.coin() ? Rational(0) : Rational(U * g.integer(0, 3) / 4);
  }
  return b;
}

Outcome hull_equality() {
  Outcome o;
  Gen g(1001);
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    for (int trial = 0; trial < 20; ++trial) {
      for (bool plus : {false, true}) {
        auto b = patterned_bounds(g, n1, n2, trial, plus);
        auto ext = plus ? hull::build_ext_rowplus(b) : hull::build_ext_row(b);
        auto cuts = hull::cuts_to_polyhedron(hull::hull_inequalities_row(b), n1, n2);
        o.expect(poly::poly_equal(hull::project_t(ext, n2), cuts),
                 std::string(plus ? "row+" : "row") + " mismatch at " + std::to_string(n1) + "x" +
                     std::to_string(n2) + " trial " + std::to_string(trial));
        ++checked;
      }
    }
  }
  const double secs = seconds_since(t0);
  o.expect(secs < 120, "runtime " + str(secs) + " s");
  o.note << (o.note.tellp() > 0 ? "; " : "") << checked << " systems in " << str(secs) << " s";
  return o;
}

Outcome one_column_vertices() {
  Outcome o;
  Gen g(1002);
  std::size_t total = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto n1 = static_cast<std::size_t>(g.integer(1, 3));
    const auto n2 = static_cast<std::size_t>(g.integer(1, 3));
    hull::MultRank1Data d;
    const long k = g.integer(1, 3);
    for (long c = 0; c < k; ++c) {
      std::vector<Rational> a;
      for (std::size_t i = 0; i < n1; ++i) a.push_back(g.rational(1, 4, 2));
      d.alphas.push_back(std::move(a));
      d.b.push_back(g.rational(1, 5, 2));
    }
    for (std::size_t j = 0; j < n2; ++j) d.beta.push_back(g.rational(1, 3, 2));
    auto vs = poly::vertices(hull::project_t(hull::build_ext_multrank1(d), n2));
    o.expect(vs.rays.empty() && vs.lines.empty(), "unbounded projection at trial " + std::to_string(trial));
    for (const auto& v : vs.points) {
      ++total;
      std::size_t cols = 0;
      for (std::size_t j = 0; j < n2; ++j) {
        bool nz = false;
        for (std::size_t i = 0; i < n1; ++i) nz = nz || sgn(v[i * n2 + j]) != 0;
        cols += nz ? 1 : 0;
      }
      o.expect(cols <= 1, "vertex with " + std::to_string(cols) + " nonzero columns");
      for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t c = a + 1; c < n1; ++c)
          for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t l = j + 1; l < n2; ++l)
              o.expect(v[a * n2 + j] * v[c * n2 + l] == v[a * n2 + l] * v[c * n2 + j], "nonzero minor");
    }
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << total << " vertices";
  return o;
}

Outcome separation_equivalence() {
  Outcome o;
  Gen g(1003);
  std::size_t calls = 0, violated = 0;
  for (std::size_t n1 = 1; n1 <= 4; ++n1) {
    for (std::size_t n2 = 1; n2 <= 4; ++n2) {
      for (int trial = 0; trial < 100; ++trial) {
        const bool plus = trial % 2 == 1;
        auto b = testing::random_row_bounds(g, n1, n2, plus);
        auto w = testing::random_matrix(g, n1, n2);
        for (hull::Side side : {hull::Side::Upper, hull::Side::Lower}) {
          bool has = false;
          const Rational best = testing::brute_force_violation(w, b, side, plus, has);
          hull::OpCounter ops;
          std::optional<hull::Separation<Rational>> got;
          const std::string where = std::to_string(n1) + "x" + std::to_string(n2) + (plus ? " row+" : " row");
          try {
            got = plus ? hull::separate_rowplus(w, b, side, &ops) : hull::separate_row(w, b, side, &ops);
          } catch (const NoLowerBounds&) {
            o.expect(!has, where + ": oracle reported an empty family");
            continue;
          }
          ++calls;
          const bool cut = has && sgn(best) > 0;
          violated += cut ? 1 : 0;
          o.expect(cut == got.has_value(), where + ": verdict differs");
          if (cut && got) {
            o.expect(got->violation == best, where + ": violation differs");
            o.expect(got->cut.violation(w) == best, where + ": returned cut differs");
          }
          o.expect(ops.comparisons <= 2 * n1 * n2, where + ": " + std::to_string(ops.comparisons) + " comparisons");
        }
      }
    }
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << calls << " oracle calls, " << violated << " violated";
  return o;
}

hull::RowColBoundsD random_dbounds(Gen& g, std::size_t n1, std::size_t n2) {
  hull::RowColBoundsD b;
  b.n1 = n1;
  b.n2 = n2;
  for (std::size_t i = 0; i < n1; ++i) {
    const double u = static_cast<double>(g.integer(1, 6)) / 2.0;
    b.u.push_back(u);
    b.l.push_back(g.coin() ? 0.0 : u * static_cast<double>(g.integer(0, 4)) / 4.0);
  }
  return b;
}

Outcome discretization() {
  Outcome o;
  Gen g(1004);
  double worst_outer = 0, worst_minor = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n1 = static_cast<std::size_t>(g.integer(1, 3));
    const auto n2 = static_cast<std::size_t>(g.integer(1, 3));
    const int H = static_cast<int>(g.integer(1, 4));
    auto b = random_dbounds(g, n1, n2);
    auto blk = discretize::build_outer(b, H);
    std::vector<double> x(n1), y(n2);
    double ys = 0;
    for (std::size_t i = 0; i < n1; ++i) x[i] = b.l[i] + (b.u[i] - b.l[i]) * g.uniform();
    for (auto& v : y) ys += (v = g.uniform());
    std::vector<std::vector<double>> W(n1, std::vector<double>(n2));
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) W[i][j] = x[i] * y[j] / ys;
    const double viol = blk.model.max_violation(testing::outer_witness(blk, W));
    worst_outer = std::max(worst_outer, viol);
    o.expect(viol <= 1e-9, "outer witness violated by " + str(viol));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto n1 = static_cast<std::size_t>(g.integer(1, 3));
    const auto n2 = static_cast<std::size_t>(g.integer(2, 3));
    const int H = static_cast<int>(g.integer(1, 3));
    auto b = random_dbounds(g, n1, n2);
    auto blk = discretize::build_inner(b, H);
    auto m = blk.model;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) m.set_objective(m.var(blk.W[i][j]), g.uniform(-1, 1));
    auto r = solver::solve_milp(m);
    if (r.status != solver::Status::Optimal) {
      o.expect(false, std::string("inner solve ") + solver::status_name(r.status));
      continue;
    }
    auto Wr = testing::read_w(blk, r.x);
    for (std::size_t i = 0; i < n1; ++i) {
      double s = 0;
      for (double v : Wr[i]) s += v;
      o.expect(s >= b.l[i] - 1e-9 && s <= b.u[i] + 1e-9, "inner row sum out of bounds");
    }
    const double minor = testing::max_minor(Wr);
    worst_minor = std::max(worst_minor, minor);
    o.expect(minor <= 1e-9, "inner minor " + str(minor));
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << "200 outer (worst violation " << str(worst_outer)
         << "), 50 inner (worst minor " << str(worst_minor) << ")";
  return o;
}

Outcome row_col_witness() {
  Outcome o;
  const Rational values[] = {make_rational(0), make_rational(1, 4), make_rational(1, 3),
                             make_rational(1, 2), make_rational(2, 3), make_rational(9, 10)};
  for (const auto& a : values) {
    bool ok = false;
    try {
      ok = hull::row_col_witness_check(a);
    } catch (const Error& e) {
      o.expect(false, "a=" + to_string(a) + " threw " + e.what());
      continue;
    }
    std::string why;
    if (!ok) {
      const auto w = hull::row_col_witness(a);
      why = " (column sum " + to_string(w(0, 1) + w(1, 1)) + " exceeds 1)";
    }
    o.expect(ok, "a=" + to_string(a) + " rejected" + why);
  }
  hull::RowColBounds unit;
  unit.n1 = unit.n2 = 2;
  unit.l = {Rational(0), Rational(0)};
  unit.u = {Rational(1), Rational(1)};
  const RationalMatrix identity{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  bool cut_off = false;
  for (const auto& c : hull::hull_inequalities_row(unit)) cut_off = cut_off || sgn(c.violation(identity)) > 0;
  o.expect(cut_off, "identity not separated");
  if (o.pass) o.note << "six witness values and the rank-2 point";
  return o;
}

pooling::GeneratorParams pooling_params(Gen& g, int max_s, int max_i, int max_t, bool standard) {
  pooling::GeneratorParams p;
  p.nS = static_cast<int>(g.integer(2, max_s));
  p.nI = static_cast<int>(g.integer(1, max_i));
  p.nT = static_cast<int>(g.integer(1, max_t));
  p.density_si = g.uniform(0.4, 1.0);
  p.density_ii = standard ? 0.0 : g.uniform(0.3, 1.0);
  p.density_it = g.uniform(0.4, 1.0);
  p.density_st = g.coin() ? 0.0 : 0.3;
  p.K = static_cast<int>(g.integer(1, 2));
  return p;
}

std::optional<double> lp(const model::LinearModel& m) {
  auto r = solver::solve_lp(m);
  if (r.status != solver::Status::Optimal) return std::nullopt;
  return r.objective;
}

Outcome dominance_chain() {
  Outcome o;
  Gen g(1006);
  std::size_t strict = 0;
  for (int trial = 0; trial < 25; ++trial) {
    pooling::Network net(pooling::generate_random(pooling_params(g, 5, 4, 4, false), g.word()));
    const std::string id = "instance " + std::to_string(trial);
    std::map<Tag, double> v;
    bool solved = true;
    for (Tag t : formulate::lp_tags()) {
      auto val = lp(formulate::build(net, t));
      o.expect(val.has_value(), id + ": " + formulate::tag_name(t) + " not optimal");
      solved = solved && val;
      if (val) v[t] = *val;
    }
    if (!solved) continue;
    const std::pair<Tag, Tag> chain[] = {{Tag::F1S, Tag::F2S},         {Tag::F2S, Tag::F2S_F1T},
                                         {Tag::F2S_F1T, Tag::F2S_F2T}, {Tag::F1T, Tag::F2T},
                                         {Tag::F2T, Tag::F1S_F2T},     {Tag::F1S_F2T, Tag::F2S_F2T},
                                         {Tag::F1S_F1T, Tag::F1ST}};
    for (auto [lo, hi] : chain)
      o.expect(le(v[lo], v[hi]), id + ": " + formulate::tag_name(lo) + " > " + formulate::tag_name(hi));
    // A larger dual value means a smaller gap against any common primal bound.
    for (Tag t : formulate::lp_tags()) {
      if (t == Tag::F1ST) continue;
      o.expect(le(v[t], v[Tag::F2S_F2T]), id + ": " + formulate::tag_name(t) + " beats F2S^F2T");
    }
    if (v[Tag::F2S_F2T] > v[Tag::F1S] + 1e-6 * std::max(1.0, std::fabs(v[Tag::F1S]))) ++strict;
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << "25 instances, " << strict << " with F2S^F2T strictly above F1S";
  return o;
}

Outcome standard_collapse() {
  Outcome o;
  Gen g(1007);
  for (int trial = 0; trial < 10; ++trial) {
    auto params = pooling_params(g, 4, 3, 3, true);
    params.arc_u_frac_lo = params.arc_u_frac_hi = 1.0;
    pooling::Network net(pooling::generate_random(params, g.word()));
    const std::string id = "instance " + std::to_string(trial);
    o.expect(net.no_pool_to_pool_arcs(), id + ": has pool-to-pool arcs");
    auto st = lp(formulate::build(net, Tag::F1S_F1T));
    auto s2 = lp(formulate::build_F2S(net));
    auto t2 = lp(formulate::build_F2T(net));
    o.expect(st && s2 && t2, id + ": LP not optimal");
    if (!(st && s2 && t2)) continue;
    const double tol = 1e-6 * std::max(1.0, std::fabs(*st));
    o.expect(std::fabs(*s2 - *st) <= tol, id + ": F2S " + str(*s2) + " vs " + str(*st));
    o.expect(std::fabs(*t2 - *st) <= tol, id + ": F2T " + str(*t2) + " vs " + str(*st));
  }
  if (o.pass) o.note << "10 standard instances";
  return o;
}

Outcome sandwich() {
  Outcome o;
  Gen g(1008);
  std::size_t bracketed = 0, limited8 = 0;
  double slowest = 0;
  const std::pair<Tag, Tag> m_over_f[] = {{Tag::M1S, Tag::F1S}, {Tag::M2S, Tag::F2S}, {Tag::M3S, Tag::F2S},
                                          {Tag::M1T, Tag::F1T}, {Tag::M2T, Tag::F2T}, {Tag::M3T, Tag::F2T}};
  const Tag restrictions[] = {Tag::G1S, Tag::G2S, Tag::G1T, Tag::G2T};
  for (int trial = 0; trial < 10; ++trial) {
    auto params = pooling_params(g, 3, 2, 2, false);
    pooling::Network net(pooling::generate_random(params, g.word()));
    const std::string id = "instance " + std::to_string(trial);
    solver::SolverConfig cfg;
    cfg.time_limit = 60;
    auto run = [&](Tag t, int H) {
      formulate::BuildOptions bo;
      bo.H = H;
      return solver::solve_milp(formulate::build(net, t, bo), cfg);
    };
    auto milp = [&](Tag t) {
      auto r = run(t, 3);
      slowest = std::max(slowest, r.wall_time);
      o.expect(r.status == solver::Status::Optimal || r.status == solver::Status::Infeasible,
               id + ": " + formulate::tag_name(t) + " H=3 " + solver::status_name(r.status));
      return r;
    };
    // H=8 runs only supply the bracket; a run stopped at the limit still
    // gives a valid dual bound (M) or incumbent (G).
    auto bound8 = [&](Tag t, bool relaxation) {
      auto r = run(t, 8);
      if (r.status == solver::Status::Limit) ++limited8;
      if (r.status == solver::Status::Infeasible) return model::kInf;
      return relaxation ? r.dual_bound : r.objective;
    };
    std::map<Tag, double> m3, g3;
    double best_m8 = -INFINITY, best_g8 = INFINITY;
    for (auto [mt, ft] : m_over_f) {
      auto f = lp(formulate::build(net, ft));
      auto r = milp(mt);
      o.expect(f && r.status == solver::Status::Optimal, id + ": " + formulate::tag_name(mt) + " not solved");
      if (!f || r.status != solver::Status::Optimal) continue;
      m3[mt] = r.objective;
      o.expect(le(*f, r.objective), id + ": " + formulate::tag_name(ft) + " above " + formulate::tag_name(mt));
      best_m8 = std::max(best_m8, bound8(mt, true));
    }
    for (Tag gt : restrictions) {
      auto r = milp(gt);
      if (r.status == solver::Status::Optimal) g3[gt] = r.objective;
      best_g8 = std::min(best_g8, bound8(gt, false));
    }
    for (const auto& [mt, mv] : m3)
      for (const auto& [gt, gv] : g3)
        o.expect(le(mv, gv), id + ": " + formulate::tag_name(mt) + " above " + formulate::tag_name(gt));
    if (!std::isfinite(best_m8) || !std::isfinite(best_g8)) continue;
    o.expect(le(best_m8, best_g8), id + ": M(8) above G(8)");
    if (formulate::gap_percent(best_g8, best_m8) > 0.5) continue;
    ++bracketed;
    // The optimum lies in [best M(8), best G(8)]; no H=3 relaxation may
    // exceed its upper end and no H=3 restriction may fall below its lower end.
    for (const auto& [mt, mv] : m3)
      o.expect(le(mv, best_g8), id + ": " + formulate::tag_name(mt) + "(3) above the bracket");
    for (const auto& [gt, gv] : g3)
      o.expect(le(best_m8, gv), id + ": " + formulate::tag_name(gt) + "(3) below the bracket");
  }
  o.expect(slowest < 60, "slowest H=3 MILP " + str(slowest) + " s");
  o.note << (o.note.tellp() > 0 ? "; " : "") << bracketed << "/10 bracketed within 0.5%, slowest H=3 MILP "
         << str(slowest) << " s, " << limited8 << " H=8 runs at the limit";
  return o;
}

bool small_blocks(const pooling::Network& net) {
  for (const auto& blocks : {formulate::source_blocks(net), formulate::terminal_blocks(net)})
    for (const auto& b : blocks)
      if (b.rows.size() > 4 || b.cols.size() > 4) return false;
  return true;
}

Outcome cut_loop() {
  Outcome o;
  Gen g(1009);
  std::size_t max_rounds = 0;
  int trial = 0;
  while (trial < 10) {
    auto params = pooling_params(g, 4, 3, 3, false);
    params.mu_lo_prob = 0.5;
    pooling::Network net(pooling::generate_random(params, g.word()));
    if (!small_blocks(net)) continue;
    const std::string id = "instance " + std::to_string(trial++);
    for (char base : {'S', 'T'}) {
      cutloop::CutLoopOptions opts;
      opts.base = base;
      opts.families = cutloop::kAllFamilies;
      auto rep = cutloop::run_cut_loop(net, opts);
      const std::string where = id + " base " + base;
      o.expect(rep.status == solver::Status::Optimal, where + ": " + solver::status_name(rep.status));
      o.expect(rep.target_value.has_value(), where + ": no extended LP value");
      if (!rep.target_value) continue;
      max_rounds = std::max(max_rounds, rep.rounds.size());
      o.expect(rep.converged && rep.rounds.size() <= 200, where + ": not converged");
      o.expect(std::fabs(rep.final_value - *rep.target_value) <= 1e-6 * std::max(1.0, std::fabs(*rep.target_value)),
               where + ": " + str(rep.final_value) + " vs " + str(*rep.target_value));
    }
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << "10 instances x 2 bases, at most " << max_rounds << " rounds";
  return o;
}

Outcome solver_sanity() {
  Outcome o;
  Gen g(1010);
  std::size_t optimal = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto m = testing::random_lp(g, 10, 20);
    auto r = solver::solve_lp(m);
    auto ex = testing::exact_lp(m);
    const std::string id = "LP " + std::to_string(trial);
    if (ex.status == poly::LpStatus::Optimal) {
      ++optimal;
      const double v = ex.value.get_d();
      o.expect(r.status == solver::Status::Optimal && std::fabs(r.objective - v) <= 1e-8 * std::max(1.0, std::fabs(v)),
               id + ": " + str(r.objective) + " vs " + str(v));
    } else if (ex.status == poly::LpStatus::Unbounded) {
      o.expect(r.status == solver::Status::Unbounded, id + ": expected unbounded");
    } else {
      o.expect(r.status == solver::Status::Infeasible, id + ": expected infeasible");
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto nbin = static_cast<std::size_t>(g.integer(3, 10));
    auto m = testing::random_milp(g, nbin, trial % 2 == 0 ? 0 : 2);
    auto r = solver::solve_milp(m);
    auto ref = testing::brute_force_milp(m);
    const std::string id = "MILP " + std::to_string(trial);
    if (!ref) {
      o.expect(r.status == solver::Status::Infeasible, id + ": expected infeasible");
      continue;
    }
    const double v = ref->get_d();
    o.expect(r.status == solver::Status::Optimal && std::fabs(r.objective - v) <= 1e-9 * std::max(1.0, std::fabs(v)),
             id + ": " + str(r.objective) + " vs " + str(v));
  }
  o.note << (o.note.tellp() > 0 ? "; " : "") << "50 LPs (" << optimal << " optimal), 20 MILPs";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "hull equality (row, row+)", hull_equality},
      {2, "multiplicative rank-1 vertex structure", one_column_vertices},
      {3, "separation oracles vs enumeration", separation_equivalence},
      {4, "discretization containments", discretization},
      {5, "row-and-column witness", row_col_witness},
      {6, "pooling dominance chain", dominance_chain},
      {7, "standard pooling collapse", standard_collapse},
      {8, "relaxation/restriction sandwich", sandwich},
      {9, "cut loop convergence", cut_loop},
      {10, "solver sanity", solver_sanity},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                o.note.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
