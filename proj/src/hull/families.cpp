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

// Odometer over assignments of n2 columns to `labels`.
template <class F>
void for_each_assignment(std::size_t n2, const std::vector<std::size_t>& labels,
                         F&& visit) {
  if (labels.empty()) return;
  std::vector<std::size_t> pos(n2, 0);
  std::vector<std::size_t> cls(n2, labels[0]);
  for (;;) {
    visit(cls);
    std::size_t j = 0;
    while (j < n2) {
      if (++pos[j] < labels.size()) {
        cls[j] = labels[pos[j]];
        break;
      }
      pos[j] = 0;
      cls[j] = labels[0];
      ++j;
    }
    if (j == n2) return;
  }
}

double ipow(std::size_t base, std::size_t exp) {
  double r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= static_cast<double>(base);
  return r;
}

// Nonnegativity and zero-row fixings.
void append_sign_cuts(const RowColBounds& b, std::vector<CutInequality>& cuts) {
  const std::size_t n1 = b.n1, n2 = b.n2;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      CutInequality c;
      c.coeffs[{i, j}] = 1;
      c.sense = Sense::GreaterEq;
      c.family = Family::NonNeg;
      cuts.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < n1; ++i) {
    if (sgn(b.u[i]) > 0) continue;
    for (std::size_t j = 0; j < n2; ++j) {
      CutInequality c;
      c.coeffs[{i, j}] = 1;
      c.family = Family::Fixing;
      cuts.push_back(std::move(c));
    }
  }

}

// Ratio and aggregate-ratio families (polynomially many).
void append_ratio_cuts(const RowColBounds& b, std::vector<CutInequality>& cuts) {
  const std::size_t n1 = b.n1, n2 = b.n2;
  std::vector<std::size_t> active, lower;
  for (std::size_t i = 0; i < n1; ++i) {
    if (sgn(b.u[i]) > 0) active.push_back(i + 1);
    if (sgn(b.l[i]) > 0) lower.push_back(i + 1);
  }
  const bool agg_upper = b.has_agg() && sgn(*b.agg_U) > 0;
  const bool agg_lower = b.has_agg() && sgn(b.L()) > 0;
  for (std::size_t i1 : lower) {
    for (std::size_t i2 = 0; i2 < n1; ++i2) {
      if (i2 == i1 - 1) continue;
      for (std::size_t j = 0; j < n2; ++j) {
        CutInequality c;
        c.coeffs[{i2, j}] = b.l[i1 - 1];
        c.coeffs[{i1 - 1, j}] = -b.u[i2];
        c.family = Family::Ratio;
        cuts.push_back(std::move(c));
      }
    }
  }
  if (agg_upper) {
    for (std::size_t i1 : lower) {
      for (std::size_t j = 0; j < n2; ++j) {
        CutInequality c;
        c.family = Family::AggRatio;
        for (std::size_t a : active) c.coeffs[{a - 1, j}] = b.l[i1 - 1];
        c.coeffs[{i1 - 1, j}] -= *b.agg_U;
        cuts.push_back(std::move(c));
      }
    }
  }
  if (agg_lower) {
    for (std::size_t a2 : active) {
      for (std::size_t j = 0; j < n2; ++j) {
        CutInequality c;
        c.family = Family::AggRatio;
        for (std::size_t a : active) c.coeffs[{a - 1, j}] = -b.u[a2 - 1];
        c.coeffs[{a2 - 1, j}] += b.L();
        cuts.push_back(std::move(c));
      }
    }
  }
}

}  // namespace

std::vector<CutInequality> hull_inequalities_row(const RowColBounds& raw,
                                                 const FamilyOptions& opts) {
  check_bounds(raw);
  const RowColBounds b = normalized(raw);
  const std::size_t n1 = b.n1, n2 = b.n2;
  const bool agg = b.has_agg();

  std::vector<std::size_t> active, lower;  // class labels: row i -> i + 1
  for (std::size_t i = 0; i < n1; ++i) {
    if (sgn(b.u[i]) > 0) active.push_back(i + 1);
    if (sgn(b.l[i]) > 0) lower.push_back(i + 1);
  }
  const bool agg_upper = agg && sgn(*b.agg_U) > 0;
  const bool agg_lower = agg && sgn(b.L()) > 0;

  std::vector<std::size_t> upper_labels = active;
  if (agg_upper && !active.empty()) upper_labels.insert(upper_labels.begin(), 0);
  std::vector<std::size_t> lower_labels = lower;
  if (agg_lower) lower_labels.insert(lower_labels.begin(), 0);
  if (!opts.include_lower) lower_labels.clear();

  double count = ipow(upper_labels.size(), n2) + ipow(lower_labels.size(), n2);
  if (count > static_cast<double>(opts.cap)) {
    throw FamilyCapExceeded("hull family size exceeds cap");
  }

  std::vector<CutInequality> cuts;
  append_sign_cuts(b, cuts);

  const Rational invU = agg_upper ? Rational(1 / *b.agg_U) : Rational(0);
  for_each_assignment(n2, upper_labels, [&](const std::vector<std::size_t>& cls) {
    CutInequality c;
    c.rhs = 1;
    c.family = Family::PartitionUpper;
    for (std::size_t j = 0; j < n2; ++j) {
      if (cls[j] == 0) {
        c.family = Family::AggPartitionUpper;
        for (std::size_t a : active) c.coeffs[{a - 1, j}] = invU;
      } else {
        c.coeffs[{cls[j] - 1, j}] = 1 / b.u[cls[j] - 1];
      }
    }
    cuts.push_back(std::move(c));
  });

  const Rational invL = agg_lower ? Rational(1 / b.L()) : Rational(0);
  for_each_assignment(n2, lower_labels, [&](const std::vector<std::size_t>& cls) {
    CutInequality c;
    c.rhs = 1;
    c.sense = Sense::GreaterEq;
    c.family = Family::PartitionLower;
    for (std::size_t j = 0; j < n2; ++j) {
      if (cls[j] == 0) {
        c.family = Family::AggPartitionLower;
        for (std::size_t a : active) c.coeffs[{a - 1, j}] = invL;
      } else {
        c.coeffs[{cls[j] - 1, j}] = 1 / b.l[cls[j] - 1];
      }
    }
    cuts.push_back(std::move(c));
  });

  append_ratio_cuts(b, cuts);
  return cuts;
}

std::vector<CutInequality> hull_inequalities_col(const RowColBounds& b,
                                                 const FamilyOptions& opts) {
  RowColBounds t = b;
  std::swap(t.n1, t.n2);
  auto cuts = hull_inequalities_row(t, opts);
  for (auto& c : cuts) c = c.transposed();
  return cuts;
}

std::vector<CutInequality> polynomial_inequalities_row(const RowColBounds& raw) {
  check_bounds(raw);
  const RowColBounds b = normalized(raw);
  std::vector<CutInequality> cuts;
  append_sign_cuts(b, cuts);
  append_ratio_cuts(b, cuts);
  return cuts;
}

std::vector<CutInequality> polynomial_inequalities_col(const RowColBounds& b) {
  RowColBounds t = b;
  std::swap(t.n1, t.n2);
  auto cuts = polynomial_inequalities_row(t);
  for (auto& c : cuts) c = c.transposed();
  return cuts;
}

}  // namespace rankone::hull
