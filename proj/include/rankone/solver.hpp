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
#include <string>
#include <vector>

#include "rankone/linear_model.hpp"

namespace rankone::solver {

using model::LinearModel;

enum class Status { Optimal, Infeasible, Unbounded, Limit };

const char* status_name(Status s);

struct SolverConfig {
  double tol_feas = 1e-7;
  double tol_opt = 1e-7;
  double tol_int = 1e-6;
  double time_limit = 1800.0;  // seconds
  std::size_t node_limit = 1000000;
  std::size_t iteration_limit = 5000000;
};

struct SolveResult {
  Status status = Status::Limit;
  double objective = model::kInf;  // +inf when no feasible point is known
  std::vector<double> x;           // indexed like LinearModel::vars()
  std::vector<double> duals;       // LP only, indexed like constraints()
  double dual_bound = -model::kInf;
  double gap = model::kInf;
  std::size_t iterations = 0;
  std::size_t nodes = 0;
  double wall_time = 0.0;
};

// Bounded primal/dual revised simplex. Binaries are treated as [0,1]
// continuous variables.
SolveResult solve_lp(const LinearModel& m, const SolverConfig& cfg = {});

// Best-bound branch-and-bound over the binary variables, branching on the
// most fractional binary (ties broken by name).
SolveResult solve_milp(const LinearModel& m, const SolverConfig& cfg = {});

// solve_milp when the model has binaries, solve_lp otherwise.
SolveResult solve(const LinearModel& m, const SolverConfig& cfg = {});

// Relative gap (objective - dual_bound) / max(1e-10, |objective|).
double relative_gap(double objective, double dual_bound);

std::string to_mps(const LinearModel& m, const std::string& name = "model");
LinearModel from_mps(const std::string& text);
void export_mps(const LinearModel& m, const std::string& path);
void export_lp_text(const LinearModel& m, const std::string& path);
LinearModel import_model(const std::string& path);  // by extension: .mps or .lp

}  // namespace rankone::solver
