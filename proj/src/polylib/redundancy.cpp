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

#include "rankone/errors.hpp"
#include "rankone/exact_lp.hpp"
#include "rankone/polyhedron.hpp"

namespace rankone::poly {

Polyhedron remove_redundant(const Polyhedron& p, const RedundancyOptions& opts) {
  if (p.num_rows() > opts.row_cap) {
    throw RowCapExceeded("remove_redundant: " + std::to_string(p.num_rows()) +
                         " rows exceed cap " + std::to_string(opts.row_cap));
  }
  if (p.has_contradiction() || !exact_feasible(p)) {
    Polyhedron out(p.vars());
    out.add_row(std::vector<Rational>(p.dim()), Relation::LessEq, Rational(-1),
                "infeasible");
    return out;
  }

  std::vector<bool> keep(p.num_rows(), true);
  for (std::size_t r = 0; r < p.num_rows(); ++r) {
    const Row& row = p.rows()[r];
    if (row.rel == Relation::Equal) continue;
    if (row.is_zero()) {
      keep[r] = false;
      continue;
    }
    Polyhedron rest(p.vars());
    for (std::size_t q = 0; q < p.num_rows(); ++q) {
      if (q != r && keep[q]) rest.add_row(p.rows()[q]);
    }
    bool redundant = false;
    if (row.rel == Relation::LessEq) {
      auto res = exact_maximize(rest, row.coeffs);
      redundant = res.status == LpStatus::Optimal && res.value <= row.rhs;
    } else {
      auto res = exact_minimize(rest, row.coeffs);
      redundant = res.status == LpStatus::Optimal && res.value >= row.rhs;
    }
    if (redundant) keep[r] = false;
  }

  Polyhedron out(p.vars());
  for (std::size_t r = 0; r < p.num_rows(); ++r) {
    if (keep[r]) out.add_row(p.rows()[r]);
  }
  return out;
}

}  // namespace rankone::poly
