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

template <class T>
void tick(OpCounter* ops) {
  if (ops) ++ops->comparisons;
}

// Shared core. `agg` selects the row+ variant; `inv_agg` is 1/U (upper) or
// 1/L (lower) and is ignored otherwise.
template <class T>
std::optional<Separation<T>> separate_core(const Matrix<T>& w,
                                           const BasicRowColBounds<T>& b,
                                           Side side, bool agg, T inv_agg,
                                           OpCounter* ops) {
  const std::size_t n1 = b.n1, n2 = b.n2;
  std::vector<std::size_t> rows;  // candidate rows for the partition classes
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n1; ++i) {
    if (b.u[i] > T(0)) active.push_back(i);
    if (side == Side::Upper ? b.u[i] > T(0) : b.l[i] > T(0)) rows.push_back(i);
  }
  if (side == Side::Lower && rows.empty() && !agg) {
    throw NoLowerBounds("lower separation needs some l_i > 0");
  }
  if (rows.empty() && !agg) return std::nullopt;
  const std::vector<T>& denom = side == Side::Upper ? b.u : b.l;

  Separation<T> out;
  out.partition.classes.assign(n2, 0);
  out.cut.rhs = T(1);
  out.cut.sense = side == Side::Upper ? Sense::LessEq : Sense::GreaterEq;
  out.cut.family = side == Side::Upper ? Family::PartitionUpper
                                       : Family::PartitionLower;
  T theta = T(0);
  for (std::size_t j = 0; j < n2; ++j) {
    std::size_t pick = n1;
    T best = T(0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const std::size_t i = rows[k];
      T r = w(i, j) / denom[i];
      if (k == 0) {
        pick = i;
        best = r;
        continue;
      }
      tick<T>(ops);
      if (side == Side::Upper ? r > best : r < best) {
        pick = i;
        best = r;
      }
    }
    if (agg) {
      T col = T(0);
      for (std::size_t i : active) col += w(i, j);
      T a = col * inv_agg;
      bool take = pick == n1;
      if (!take) {
        tick<T>(ops);
        take = side == Side::Upper ? a >= best : a <= best;
      }
      if (take) {
        out.cut.family = side == Side::Upper ? Family::AggPartitionUpper
                                             : Family::AggPartitionLower;
        for (std::size_t i : active) out.cut.coeffs[{i, j}] = inv_agg;
        theta += a;
        continue;
      }
    }
    out.partition.classes[j] = pick + 1;
    out.cut.coeffs[{pick, j}] = T(1) / denom[pick];
    theta += best;
  }
  tick<T>(ops);
  bool violated = side == Side::Upper ? theta > T(1) : theta < T(1);
  if (!violated) return std::nullopt;
  out.violation = side == Side::Upper ? T(theta - 1) : T(1 - theta);
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& w) {
  return w.transposed();
}

template <class T>
BasicRowColBounds<T> transpose_dims(const BasicRowColBounds<T>& b) {
  BasicRowColBounds<T> t = b;
  std::swap(t.n1, t.n2);
  return t;
}

template <class T>
std::optional<Separation<T>> transpose_result(std::optional<Separation<T>> s) {
  if (s) s->cut = s->cut.transposed();
  return s;
}

}  // namespace

template <class T>
std::optional<Separation<T>> separate_row(const Matrix<T>& w,
                                          const BasicRowColBounds<T>& b,
                                          Side side, OpCounter* ops) {
  return separate_core<T>(w, b, side, false, T(0), ops);
}

template <class T>
std::optional<Separation<T>> separate_rowplus(const Matrix<T>& w,
                                              const BasicRowColBounds<T>& raw,
                                              Side side, OpCounter* ops) {
  if (!raw.agg_U) throw ParamError("separate_rowplus needs an aggregate bound");
  BasicRowColBounds<T> b = normalized(raw);
  if (side == Side::Upper) {
    if (!(*b.agg_U > T(0))) return separate_core<T>(w, b, side, false, T(0), ops);
    return separate_core<T>(w, b, side, true, T(1) / *b.agg_U, ops);
  }
  if (!(b.L() > T(0))) return separate_core<T>(w, b, side, false, T(0), ops);
  return separate_core<T>(w, b, side, true, T(1) / b.L(), ops);
}

template <class T>
std::optional<Separation<T>> separate_col(const Matrix<T>& w,
                                          const BasicRowColBounds<T>& b,
                                          Side side, OpCounter* ops) {
  return transpose_result(separate_row<T>(transpose(w), transpose_dims(b), side, ops));
}

template <class T>
std::optional<Separation<T>> separate_colplus(const Matrix<T>& w,
                                              const BasicRowColBounds<T>& b,
                                              Side side, OpCounter* ops) {
  return transpose_result(
      separate_rowplus<T>(transpose(w), transpose_dims(b), side, ops));
}

#define RANKONE_INSTANTIATE(T)                                              \
  template std::optional<Separation<T>> separate_row(                       \
      const Matrix<T>&, const BasicRowColBounds<T>&, Side, OpCounter*);     \
  template std::optional<Separation<T>> separate_rowplus(                   \
      const Matrix<T>&, const BasicRowColBounds<T>&, Side, OpCounter*);     \
  template std::optional<Separation<T>> separate_col(                       \
      const Matrix<T>&, const BasicRowColBounds<T>&, Side, OpCounter*);     \
  template std::optional<Separation<T>> separate_colplus(                   \
      const Matrix<T>&, const BasicRowColBounds<T>&, Side, OpCounter*);

RANKONE_INSTANTIATE(Rational)
RANKONE_INSTANTIATE(double)

#undef RANKONE_INSTANTIATE

}  // namespace rankone::hull
