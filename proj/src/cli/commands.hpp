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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankone/pooling.hpp"

// Subcommands of the `rankone` executable. Each returns the process exit
// code and writes human output to `out` and diagnostics to `err`.
namespace rankone::cli {

struct GenArgs {
  pooling::GeneratorParams params;
  std::uint64_t seed = 1;
  std::string out;  // stdout when empty
};

struct ModelArgs {
  std::string path;
  std::string tag = "F1S";
  int H = 3;
  double time_limit = 1800;
  std::size_t size_guard = 20000;
  std::string out;  // build: .mps or .lp; solve: JSON file (stdout when empty)
};

struct CutsArgs {
  std::string path;
  char base = 'S';
  std::string families = "all";
  int rounds = 200;
  std::string out;
};

struct VerifyArgs {
  std::size_t n1 = 3;
  std::size_t n2 = 3;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
};

struct ExperimentArgs {
  std::string dir;
  std::string methods = "light-lp,medium-lp,heavy-lp,milp-H,primal-H";
  int H = 3;
  double time_limit = 1800;
  int workers = 1;
  std::size_t size_guard = 20000;
  std::string out;
};

struct ExperimentRow {
  std::string instance;
  std::string method;
  double dual_bound;
  double primal_bound;
  double gap_pct;
  double wall_time;
  std::string status;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_build(const ModelArgs& args, std::ostream& out, std::ostream& err);
int cmd_solve(const ModelArgs& args, std::ostream& out, std::ostream& err);
int cmd_cuts(const CutsArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify_hull(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err);

// Rows for every instance file (*.json, sorted) and method, followed by one
// "average" row per method.
std::vector<ExperimentRow> run_experiment(const ExperimentArgs& args);
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

// Parses argv and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rankone::cli
