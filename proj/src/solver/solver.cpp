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

#include "rankone/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <tuple>

#include "rankone/errors.hpp"
#include "simplex.hpp"

namespace rankone::solver {

using detail::SimplexEngine;

const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::Limit: return "limit";
  }
  return "?";
}

double relative_gap(double objective, double dual_bound) {
  if (!std::isfinite(objective) || !std::isfinite(dual_bound)) return model::kInf;
  return (objective - dual_bound) / std::max(1e-10, std::fabs(objective));
}

namespace {

double seconds_since(SimplexEngine::Clock::time_point t0) {
  return std::chrono::duration<double>(SimplexEngine::Clock::now() - t0).count();
}

SimplexEngine::Clock::time_point deadline_for(SimplexEngine::Clock::time_point t0, double limit) {
  if (!std::isfinite(limit) || limit > 1e9) return SimplexEngine::Clock::time_point::max();
  return t0 + std::chrono::duration_cast<SimplexEngine::Clock::duration>(
                  std::chrono::duration<double>(limit));
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.tol_feas > 0 && cfg.tol_opt > 0 && cfg.tol_int > 0)) {
    throw ParamError("solver tolerances must be positive");
  }
}

bool crossed_bounds(const LinearModel& m, double tol) {
  for (const auto& v : m.vars())
    if (v.lower > v.upper + tol) return true;
  return false;
}

}  // namespace

SolveResult solve_lp(const LinearModel& m, const SolverConfig& cfg) {
  check_config(cfg);
  const auto t0 = SimplexEngine::Clock::now();
  SolveResult res;
  if (crossed_bounds(m, cfg.tol_feas)) {
    res.status = Status::Infeasible;
    return res;
  }
  SimplexEngine engine(m, cfg);
  engine.set_deadline(deadline_for(t0, cfg.time_limit));
  res.status = engine.solve();
  res.iterations = engine.iterations();
  if (res.status == Status::Optimal) {
    res.objective = engine.objective();
    res.x = engine.primal();
    res.duals = engine.duals();
    res.dual_bound = res.objective;
    res.gap = 0.0;
  } else if (res.status == Status::Unbounded) {
    res.objective = -model::kInf;
  }
  res.wall_time = seconds_since(t0);
  return res;
}

SolveResult solve_milp(const LinearModel& m, const SolverConfig& cfg) {
  check_config(cfg);
  const auto t0 = SimplexEngine::Clock::now();
  const auto deadline = deadline_for(t0, cfg.time_limit);
  if (crossed_bounds(m, cfg.tol_feas)) {
    SolveResult res;
    res.status = Status::Infeasible;
    return res;
  }
  SimplexEngine engine(m, cfg);
  engine.set_deadline(deadline);

  std::vector<std::size_t> binaries;
  for (std::size_t j = 0; j < m.num_vars(); ++j) {
    if (m.vars()[j].is_binary) binaries.push_back(j);
  }
  std::sort(binaries.begin(), binaries.end(), [&](std::size_t a, std::size_t b) {
    return m.vars()[a].name < m.vars()[b].name;
  });

  using Change = std::tuple<std::size_t, double, double>;
  struct Node {
    double bound;
    std::size_t id;
    std::vector<Change> changes;
    std::shared_ptr<const detail::Basis> basis;
  };
  auto worse = [](const Node& a, const Node& b) {
    return a.bound > b.bound || (a.bound == b.bound && a.id > b.id);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  open.push({-model::kInf, 0, {}, nullptr});
  std::size_t next_id = 1;

  SolveResult res;
  double incumbent = model::kInf;
  auto cutoff = [&] { return incumbent - 1e-9 * std::max(1.0, std::fabs(incumbent)); };
  bool limited = false;

  while (!open.empty()) {
    if (res.nodes >= cfg.node_limit || SimplexEngine::Clock::now() > deadline) {
      limited = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= cutoff()) continue;

    for (std::size_t j : binaries) engine.set_bounds(j, m.vars()[j].lower, m.vars()[j].upper);
    for (const auto& [j, lo, up] : node.changes) engine.set_bounds(j, lo, up);
    if (node.basis) engine.load_basis(*node.basis);
    const Status st = engine.solve();
    ++res.nodes;
    if (st == Status::Limit) {
      open.push(std::move(node));
      limited = true;
      break;
    }
    if (st == Status::Infeasible) continue;
    if (st == Status::Unbounded) {
      res.status = Status::Unbounded;
      res.objective = -model::kInf;
      res.iterations = engine.iterations();
      res.wall_time = seconds_since(t0);
      return res;
    }
    const double obj = engine.objective();
    if (obj >= cutoff()) continue;
    auto x = engine.primal();

    std::size_t branch = m.num_vars();
    double best_frac = cfg.tol_int;
    for (std::size_t j : binaries) {
      const double frac = std::fabs(x[j] - std::round(x[j]));
      if (frac > best_frac) {
        best_frac = frac;
        branch = j;
      }
    }
    if (branch == m.num_vars()) {
      for (std::size_t j : binaries) x[j] = std::round(x[j]);
      incumbent = obj;
      res.x = std::move(x);
      continue;
    }
    auto basis = std::make_shared<const detail::Basis>(engine.basis());
    auto down = node.changes;
    down.emplace_back(branch, m.vars()[branch].lower, 0.0);
    auto up = node.changes;
    up.emplace_back(branch, 1.0, m.vars()[branch].upper);
    open.push({obj, next_id++, std::move(down), basis});
    open.push({obj, next_id++, std::move(up), basis});
  }

  res.iterations = engine.iterations();
  res.objective = incumbent;
  if (!limited) {
    res.status = std::isfinite(incumbent) ? Status::Optimal : Status::Infeasible;
    res.dual_bound = incumbent;
    res.gap = std::isfinite(incumbent) ? 0.0 : model::kInf;
  } else {
    res.status = Status::Limit;
    double bound = incumbent;
    while (!open.empty()) {
      bound = std::min(bound, open.top().bound);
      open.pop();
    }
    res.dual_bound = bound;
    res.gap = relative_gap(incumbent, bound);
  }
  res.wall_time = seconds_since(t0);
  return res;
}

SolveResult solve(const LinearModel& m, const SolverConfig& cfg) {
  return m.has_binaries() ? solve_milp(m, cfg) : solve_lp(m, cfg);
}

}  // namespace rankone::solver
