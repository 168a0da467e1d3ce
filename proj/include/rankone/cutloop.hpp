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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rankone/formulate.hpp"
#include "rankone/hull.hpp"
#include "rankone/solver.hpp"

// Root-node cutting planes over the decomposed-flow matrices of every pool.
namespace rankone::cutloop {

enum FamilyBits : unsigned {
  kRowConv = 1,      // partition inequalities without the aggregate class
  kRowPlusConv = 2,  // partition inequalities with the aggregate class
  kRatio = 4,        // ratio inequalities, added up front
  kAllFamilies = 7,
};

// Comma-separated subset of "rowconv,rowplusconv,ratio", or "all".
unsigned parse_families(const std::string& text);

enum class Orientation { Row, Col };

// One oracle call, reported to CutLoopOptions::on_separation.
struct SeparationEvent {
  const formulate::PoolBlock* block = nullptr;
  Orientation orientation = Orientation::Row;
  bool plus = false;
  hull::Side side = hull::Side::Upper;
  const Matrix<double>* w = nullptr;
  const hull::RowColBoundsD* bounds = nullptr;
  const std::optional<hull::Separation<double>>* result = nullptr;
};

struct CutLoopOptions {
  char base = 'S';  // 'S' or 'T'
  unsigned families = kAllFamilies;
  int max_rounds = 200;
  double tol_violation = 1e-6;
  std::size_t cuts_per_round = 50;
  bool compute_target = true;
  solver::SolverConfig solver;
  std::function<void(const SeparationEvent&)> on_separation;
};

struct Round {
  int index = 0;
  double lp_value = 0;
  std::size_t cuts_added = 0;
  double max_violation = 0;
};

struct CutLoopReport {
  std::vector<Round> rounds;
  double final_value = 0;
  bool converged = false;
  std::optional<double> target_value;  // LP value of F2S (base S) or F2T (base T)
  std::size_t total_cuts = 0;
  solver::Status status = solver::Status::Optimal;
};

// Flow system plus the up-front inequalities; no proportion variables.
model::LinearModel projected_base(const pooling::Network& net, char base, unsigned families);

CutLoopReport run_cut_loop(const pooling::Network& net, const CutLoopOptions& opts = {});

// `round,value,cuts,max_violation` with one line per round.
std::string to_csv(const CutLoopReport& report);

}  // namespace rankone::cutloop
