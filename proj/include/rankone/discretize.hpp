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

#include "rankone/hull.hpp"
#include "rankone/linear_model.hpp"

namespace rankone::discretize {

enum class Mode { Outer, Inner };
enum class Orientation { Row, Col };

struct DiscretizationSpec {
  int H = 3;
  Mode mode = Mode::Outer;
  Orientation orientation = Orientation::Row;
};

// How block variables are named. Labels index the rows and columns of the
// matrix as given (before any transposition); they default to 0, 1, ...
// A non-empty scope is inserted after the variable stem, e.g. z[p1][s2,0].
struct BlockNaming {
  std::string scope;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::function<std::string(std::size_t, std::size_t)> w_name;  // default W[i,j]
};

struct DiscretizeOptions {
  BlockNaming naming;
  // Adds sum of the discretized ratios == 1. Defaults to on for inner blocks
  // and off for outer blocks.
  std::optional<bool> sum_to_one;
};

// One discretized block. Name grids are indexed by the matrix as given;
// z is indexed by the discretized ratio (columns for row orientation, rows
// for column orientation) and then by the digit h = 0..H-1.
struct DiscretizedBlock {
  DiscretizationSpec spec;
  std::vector<std::vector<std::string>> W;
  std::vector<std::vector<std::string>> z;
  std::vector<std::vector<std::vector<std::string>>> alpha;  // [i][j][h]
  std::vector<std::vector<std::string>> beta;                // outer only
  std::vector<std::string> gamma;                            // outer only
  model::LinearModel model;
};

// Binary-expansion relaxation of U^row with McCormick rows for the products
// alpha = (row sum) * z and beta = (row sum) * gamma.
DiscretizedBlock build_outer(const hull::RowColBoundsD& b, int H,
                             const DiscretizeOptions& opts = {});
// Grid restriction of U^row: ratios take values in {k / (2^H - 1)}.
DiscretizedBlock build_inner(const hull::RowColBoundsD& b, int H,
                             const DiscretizeOptions& opts = {});
// Column versions: `b` holds column-sum bounds (b.n1 = rows, b.n2 = columns,
// b.l and b.u have one entry per column).
DiscretizedBlock build_outer_col(const hull::RowColBoundsD& b, int H,
                                 const DiscretizeOptions& opts = {});
DiscretizedBlock build_inner_col(const hull::RowColBoundsD& b, int H,
                                 const DiscretizeOptions& opts = {});

DiscretizedBlock build(const hull::RowColBoundsD& b, const DiscretizationSpec& spec,
                       const DiscretizeOptions& opts = {});

// Grid value of a ratio given its digits (z[0] is the 1/2 digit).
double grid_value(const std::vector<double>& digits, Mode mode);

}  // namespace rankone::discretize
