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

#include <span>
#include <vector>

#include "rankone/polyhedron.hpp"
#include "rankone/rational.hpp"

namespace rankone::poly {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct ExactLpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;  // in p.vars() order; empty unless Optimal
};

// Dense two-phase tableau simplex over the rationals with Bland's rule, so it
// always terminates. Variables are free unless a row of the form x_k >= 0 is
// present, in which case that row becomes a sign restriction.
ExactLpResult exact_maximize(const Polyhedron& p, std::span<const Rational> c);
ExactLpResult exact_minimize(const Polyhedron& p, std::span<const Rational> c);
bool exact_feasible(const Polyhedron& p);

}  // namespace rankone::poly
