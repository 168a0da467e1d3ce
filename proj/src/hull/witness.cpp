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
#include "rankone/hull.hpp"

namespace rankone::hull {

namespace {

// Grid of candidate curve parameters in [0, 1).
std::vector<Rational> witness_grid() {
  std::vector<Rational> g;
  for (long k = 0; k < 24; ++k) g.push_back(make_rational(k, 24));
  for (long k = 1; k < 10; ++k) g.push_back(make_rational(k, 10));
  for (long k = 1; k < 7; ++k) g.push_back(make_rational(k, 7));
  return g;
}

bool in_range(const Rational& v, long lo, long hi) { return v >= lo && v <= hi; }

}  // namespace

RationalMatrix row_col_witness(const Rational& a) {
  if (sgn(a) < 0 || a >= 1) throw OutOfRange("witness parameter must lie in [0, 1)");
  Rational one_minus = 1 - a;
  return RationalMatrix{{a, Rational(a * a / one_minus)}, {one_minus, a}};
}

bool row_col_witness_check(const Rational& a) {
  const RationalMatrix w = row_col_witness(a);

  if (w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0) != 0) return false;

  // Row sums in [(0,1), (1,1)]; column sums in [(1,0), (1,1)].
  Rational r0 = w(0, 0) + w(0, 1), r1 = w(1, 0) + w(1, 1);
  Rational c0 = w(0, 0) + w(1, 0), c1 = w(0, 1) + w(1, 1);
  if (!in_range(r0, 0, 1) || r1 != 1) return false;
  if (c0 != 1 || !in_range(c1, 0, 1)) return false;

  // No two other curve points average to W(a).
  const auto grid = witness_grid();
  for (const auto& p : grid) {
    if (p >= a) continue;
    for (const auto& q : grid) {
      if (q <= a) continue;
      Rational lambda = (q - a) / (q - p);
      RationalMatrix wp = row_col_witness(p), wq = row_col_witness(q);
      bool same = true;
      for (std::size_t i = 0; i < 2 && same; ++i)
        for (std::size_t j = 0; j < 2 && same; ++j)
          same = lambda * wp(i, j) + (1 - lambda) * wq(i, j) == w(i, j);
      if (same) return false;
    }
  }
  return true;
}

}  // namespace rankone::hull
