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

#include "doctest.h"
#include "gen.hpp"
#include "models.hpp"
#include "oracles.hpp"
#include "rankone/errors.hpp"
#include "rankone/solver.hpp"

using namespace rankone;
using model::LinearModel;
using model::Sense;
using solver::Status;
using testing::Gen;
using testing::random_lp;
using testing::random_milp;

namespace {

double row_activity(const LinearModel& m, std::size_t i, const std::vector<double>& x) {
  double s = 0;
  for (const auto& t : m.constraints()[i].terms) s += t.coef * x[t.var];
  return s;
}

}  // namespace

TEST_CASE("small LPs") {
  SUBCASE("single bounded variable") {
    LinearModel m;
    m.add_var("x", 0, model::kInf);
    m.set_objective(0, -1);
    m.add_constraint("cap", {{"x", 1.0}}, Sense::LessEq, 1);
    auto r = solver::solve_lp(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(-1));
    CHECK(r.x[0] == doctest::Approx(1));
  }
  SUBCASE("hypotenuse") {
    LinearModel m;
    m.add_var("x", 0, model::kInf);
    m.add_var("y", 0, model::kInf);
    m.set_objective(0, -1);
    m.set_objective(1, -1);
    m.add_constraint("sum", {{"x", 1.0}, {"y", 1.0}}, Sense::LessEq, 1);
    auto r = solver::solve_lp(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(-1));
    CHECK(r.x[0] + r.x[1] == doctest::Approx(1));
    const bool vertex = (std::fabs(r.x[0]) < 1e-9) || (std::fabs(r.x[1]) < 1e-9);
    CHECK(vertex);
  }
  SUBCASE("infeasible") {
    LinearModel m;
    m.add_var("x", 0, 1);
    m.add_constraint("low", {{"x", 1.0}}, Sense::GreaterEq, 2);
    CHECK(solver::solve_lp(m).status == Status::Infeasible);
  }
  SUBCASE("unbounded") {
    LinearModel m;
    m.add_var("x", -model::kInf, model::kInf);
    m.add_var("y", 0, model::kInf);
    m.set_objective(0, 1);
    m.add_constraint("tie", {{"x", 1.0}, {"y", -1.0}}, Sense::LessEq, 0);
    CHECK(solver::solve_lp(m).status == Status::Unbounded);
  }
  SUBCASE("free variable and equality") {
    LinearModel m;
    m.add_var("x", -model::kInf, model::kInf);
    m.add_var("y", 0, 3);
    m.set_objective(0, 1);
    m.add_constraint("e", {{"x", 1.0}, {"y", 2.0}}, Sense::Equal, 1);
    auto r = solver::solve_lp(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(-5));
  }
  SUBCASE("no rows") {
    LinearModel m;
    m.add_var("x", 2, 5);
    m.set_objective(0, 3);
    auto r = solver::solve_lp(m);
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(6));
  }
  SUBCASE("bad tolerance") {
    LinearModel m;
    solver::SolverConfig cfg;
    cfg.tol_feas = 0;
    CHECK_THROWS_AS(solver::solve_lp(m, cfg), ParamError);
  }
}

TEST_CASE("property: LP matches the exact rational oracle") {
  Gen g(31);
  int optimal = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_lp(g, 10, 20);
    auto r = solver::solve_lp(m);
    auto ex = testing::exact_lp(m);
    if (ex.status == poly::LpStatus::Optimal) {
      ++optimal;
      REQUIRE(r.status == Status::Optimal);
      const double v = ex.value.get_d();
      CHECK(std::fabs(r.objective - v) <= 1e-8 * std::max(1.0, std::fabs(v)));
      CHECK(m.max_violation(r.x) <= 1e-7);
    } else if (ex.status == poly::LpStatus::Unbounded) {
      CHECK(r.status == Status::Unbounded);
    } else {
      CHECK(r.status == Status::Infeasible);
    }
  }
  CHECK(optimal >= 25);
}

TEST_CASE("property: complementary slackness") {
  Gen g(32);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_lp(g, 8, 12);
    auto r = solver::solve_lp(m);
    if (r.status != Status::Optimal) continue;
    REQUIRE(r.duals.size() == m.num_constraints());
    for (std::size_t i = 0; i < m.num_constraints(); ++i) {
      const double slack = m.constraints()[i].rhs - row_activity(m, i, r.x);
      CHECK(std::fabs(r.duals[i] * slack) <= 1e-6);
      // dual sign for a minimization: <= rows carry y <= 0, >= rows y >= 0
      if (m.constraints()[i].sense == Sense::LessEq) CHECK(r.duals[i] <= 1e-7);
      if (m.constraints()[i].sense == Sense::GreaterEq) CHECK(r.duals[i] >= -1e-7);
    }
    for (std::size_t j = 0; j < m.num_vars(); ++j) {
      double d = m.objective()[j];
      for (std::size_t i = 0; i < m.num_constraints(); ++i) {
        for (const auto& t : m.constraints()[i].terms) {
          if (t.var == j) d -= t.coef * r.duals[i];
        }
      }
      const auto& v = m.vars()[j];
      const double gap_lo = std::isfinite(v.lower) ? r.x[j] - v.lower : model::kInf;
      const double gap_up = std::isfinite(v.upper) ? v.upper - r.x[j] : model::kInf;
      if (gap_lo > 1e-7 && gap_up > 1e-7) CHECK(std::fabs(d) <= 1e-6);
      if (d > 1e-6) CHECK(gap_lo <= 1e-7);
      if (d < -1e-6) CHECK(gap_up <= 1e-7);
    }
  }
}

TEST_CASE("determinism") {
  Gen g(33);
  auto m = random_lp(g, 10, 20);
  auto a = solver::solve_lp(m);
  auto b = solver::solve_lp(m);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x == b.x);
  auto q = random_milp(g, 8, 2);
  auto c = solver::solve_milp(q);
  auto d = solver::solve_milp(q);
  CHECK(c.nodes == d.nodes);
  CHECK(c.x == d.x);
}

TEST_CASE("knapsack with eight items") {
  const double w[] = {5, 7, 3, 9, 4, 6, 8, 2};
  const double v[] = {10, 13, 7, 15, 8, 9, 14, 3};
  LinearModel m;
  std::vector<model::Term> cap;
  for (std::size_t k = 0; k < 8; ++k) {
    m.add_binary("item" + std::to_string(k));
    m.set_objective(k, -v[k]);
    cap.push_back({k, w[k]});
  }
  m.add_constraint("capacity", cap, Sense::LessEq, 20);
  double best = 0;
  for (int mask = 0; mask < 256; ++mask) {
    double tw = 0, tv = 0;
    for (int k = 0; k < 8; ++k) {
      if (mask >> k & 1) {
        tw += w[k];
        tv += v[k];
      }
    }
    if (tw <= 20) best = std::max(best, tv);
  }
  auto r = solver::solve_milp(m);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == doctest::Approx(-best));
  CHECK(r.dual_bound <= r.objective + 1e-9);
  CHECK(r.gap == 0.0);
}

TEST_CASE("property: MILP matches brute force") {
  Gen g(34);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t nbin = static_cast<std::size_t>(g.integer(3, 10));
    auto m = random_milp(g, nbin, trial % 2 == 0 ? 0 : 2);
    auto r = solver::solve_milp(m);
    auto ref = testing::brute_force_milp(m);
    if (!ref) {
      CHECK(r.status == Status::Infeasible);
      continue;
    }
    REQUIRE(r.status == Status::Optimal);
    const double v = ref->get_d();
    CHECK(std::fabs(r.objective - v) <= 1e-9 * std::max(1.0, std::fabs(v)));
    CHECK(m.max_violation(r.x) <= 1e-7);
    CHECK(r.dual_bound <= r.objective + 1e-9);
  }
}

TEST_CASE("MILP status and limits") {
  SUBCASE("contradictory fixings") {
    LinearModel m;
    m.add_binary("a");
    m.add_binary("b");
    m.add_constraint("both", {{"a", 1.0}, {"b", 1.0}}, Sense::GreaterEq, 2);
    m.add_constraint("not_a", {{"a", 1.0}}, Sense::LessEq, 0);
    CHECK(solver::solve_milp(m).status == Status::Infeasible);
  }
  SUBCASE("node limit keeps a valid bound") {
    Gen g(35);
    auto m = random_milp(g, 10, 0);
    solver::SolverConfig cfg;
    cfg.node_limit = 2;
    auto r = solver::solve_milp(m, cfg);
    if (r.status == Status::Limit) {
      auto ref = testing::brute_force_milp(m);
      if (ref) CHECK(r.dual_bound <= ref->get_d() + 1e-9);
      if (std::isfinite(r.objective)) CHECK(r.dual_bound <= r.objective + 1e-9);
    }
  }
  SUBCASE("gap formula") {
    CHECK(solver::relative_gap(10, 9) == doctest::Approx(0.1));
    CHECK(solver::relative_gap(0, 0) == 0.0);
    CHECK(solver::relative_gap(-4, -5) == doctest::Approx(0.25));
  }
}

TEST_CASE("model text formats") {
  Gen g(36);
  auto m = random_milp(g, 4, 2);
  m.add_var("free", -model::kInf, model::kInf);
  m.add_var("fixed", 1.5, 1.5);
  m.add_var("neg", -model::kInf, -1);
  m.add_constraint("link", {{"free", 1.0}, {"fixed", -0.1}, {"neg", 1.0}}, Sense::Equal, 0.25);

  SUBCASE("LP text round trip is exact") {
    const std::string text = m.to_lp_text();
    auto back = LinearModel::from_lp_text(text);
    CHECK(back.to_lp_text() == text);
  }
  SUBCASE("MPS round trip") {
    const std::string mps = solver::to_mps(m);
    CHECK(mps.find("INTORG") != std::string::npos);
    auto back = solver::from_mps(mps);
    CHECK(back.num_vars() == m.num_vars());
    CHECK(back.num_constraints() == m.num_constraints());
    CHECK(back.num_binaries() == m.num_binaries());
    CHECK(solver::to_mps(back) == mps);
    auto a = solver::solve_lp(m);
    auto b = solver::solve_lp(back);
    REQUIRE(a.status == b.status);
    if (a.status == Status::Optimal) CHECK(std::fabs(a.objective - b.objective) <= 1e-9);
  }
  SUBCASE("no marker without binaries") {
    CHECK(solver::to_mps(m.relaxed()).find("MARKER") == std::string::npos);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(LinearModel::from_lp_text("minimize\n  obj: +1 x\nend\n"), IoError);
    CHECK_THROWS_AS(solver::from_mps("ROWS\n N obj\n"), IoError);
    CHECK_THROWS_AS(solver::import_model("/nonexistent/model.lp"), IoError);
  }
  SUBCASE("names") {
    LinearModel bad;
    CHECK_THROWS_AS(bad.add_var("has space", 0, 1), ParamError);
    bad.add_var("x", 0, 1);
    CHECK_THROWS_AS(bad.add_var("x", 0, 1), ParamError);
    bad.add_constraint("r", {{"x", 1.0}}, Sense::LessEq, 1);
    CHECK_THROWS_AS(bad.add_constraint("r", {{"x", 1.0}}, Sense::LessEq, 1), ParamError);
  }
}

TEST_CASE("merge matches variables by name") {
  LinearModel a, b;
  a.add_var("x", 0, 5);
  a.add_var("y", 0, 1);
  b.add_var("x", 1, 10);
  b.add_binary("z");
  b.set_objective(0, 2);
  b.add_constraint("r", {{"x", 1.0}, {"z", 1.0}}, Sense::LessEq, 3);
  a.merge(b);
  CHECK(a.num_vars() == 3);
  CHECK(a.vars()[0].lower == 1);
  CHECK(a.vars()[0].upper == 5);
  CHECK(a.objective()[0] == 2);
  CHECK(a.vars()[2].is_binary);
  CHECK(a.constraints()[0].terms.size() == 2);
}
