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
#include <optional>
#include <string>
#include <vector>

#include "rankone/linear_model.hpp"
#include "rankone/pooling.hpp"

// LP relaxations and MILP relaxations/restrictions of generalized pooling.
//
// Variable names: f[i,j] arc flow, xs[s][i,j] and xt[t][i,j] decomposed
// flows, xst[s,t][i,j] doubly decomposed flows, q[i][s] source proportions,
// qt[j][t] terminal proportions, qst[i,j][s,t] their products. Throughput of
// a source s into a pool i that has no arc (s,i) is a ghost flow f[s,i];
// when (s,i) is an arc and s also reaches i through other pools the
// throughput is g[s,i]. The terminal side mirrors this with f[j,t] / g[j,t].
namespace rankone::formulate {

enum class Tag {
  F1S, F2S, F1T, F2T,
  F1S_F1T, F2S_F1T, F1S_F2T, F2S_F2T,
  F1ST,
  M1S, M2S, M3S, M1T, M2T, M3T,
  G1S, G2S, G1T, G2T,
};

// Canonical names use '^' for intersections, e.g. "F2S^F1T". Parsing also
// accepts the set symbol and '&'.
std::string tag_name(Tag tag);
std::optional<Tag> parse_tag(const std::string& name);
const std::vector<Tag>& all_tags();
// F1S ... F1ST in catalog order.
const std::vector<Tag>& lp_tags();
bool needs_H(Tag tag);

struct BuildOptions {
  int H = 3;
  // Upper limit on the number of variables of F1ST.
  std::size_t size_guard = 20000;
};

// Decomposed-flow matrix of one pool with its row, column and aggregate sum
// bounds. Source side: rows are the sources reaching the pool, columns its
// out-neighbours. Terminal side: rows are in-neighbours, columns the
// terminals the pool reaches.
struct PoolBlock {
  std::string pool;
  std::vector<std::string> rows, cols;
  std::vector<std::vector<std::string>> w;  // variable names
  std::vector<double> row_l, row_u, col_l, col_u;
  double L = 0, U = 0;
};

std::vector<PoolBlock> source_blocks(const pooling::Network& net);
std::vector<PoolBlock> terminal_blocks(const pooling::Network& net);

model::LinearModel build_flow_source(const pooling::Network& net);
model::LinearModel build_flow_terminal(const pooling::Network& net);

model::LinearModel build_F1S(const pooling::Network& net);
model::LinearModel build_F2S(const pooling::Network& net);
model::LinearModel build_F1T(const pooling::Network& net);
model::LinearModel build_F2T(const pooling::Network& net);
model::LinearModel build_intersection(const pooling::Network& net, Tag s_side, Tag t_side);
model::LinearModel build_F1ST(const pooling::Network& net, std::size_t size_guard = 20000);
model::LinearModel build_M(const pooling::Network& net, int variant, char side, int H);
model::LinearModel build_G(const pooling::Network& net, int variant, char side, int H);

model::LinearModel build(const pooling::Network& net, Tag tag, const BuildOptions& opts = {});

// Relative gap in percent: 100 (primal - dual) / max(1e-10, |primal|).
double gap_percent(double primal, double dual);

}  // namespace rankone::formulate
