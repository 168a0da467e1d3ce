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

#include "rankone/discretize.hpp"

#include <cmath>

#include "rankone/errors.hpp"

namespace rankone::discretize {

namespace {

using model::Sense;
using model::Term;

// Names are always produced in the orientation of the matrix as given; the
// builder itself works on rows r (the summed lines) and columns c (the
// discretized ratios), which are swapped for column orientation.
struct Namer {
  const BlockNaming& nm;
  bool transposed;
  std::vector<std::string> rows, cols;

  Namer(const BlockNaming& n, bool t, std::size_t n1, std::size_t n2) : nm(n), transposed(t) {
    rows = labels(n.row_labels, n1);
    cols = labels(n.col_labels, n2);
  }
  static std::vector<std::string> labels(const std::vector<std::string>& given, std::size_t n) {
    if (given.empty()) {
      std::vector<std::string> out;
      for (std::size_t k = 0; k < n; ++k) out.push_back(std::to_string(k));
      return out;
    }
    if (given.size() != n) throw ParamError("label count does not match the block size");
    return given;
  }
  std::string stem(const std::string& s) const {
    return nm.scope.empty() ? s : s + "[" + nm.scope + "]";
  }
  // original (i, j) of block cell (r, c)
  std::pair<std::size_t, std::size_t> orig(std::size_t r, std::size_t c) const {
    return transposed ? std::pair{c, r} : std::pair{r, c};
  }
  std::string cell(std::size_t r, std::size_t c) const {
    auto [i, j] = orig(r, c);
    return rows[i] + "," + cols[j];
  }
  std::string line(std::size_t r) const { return transposed ? cols[r] : rows[r]; }
  std::string ratio(std::size_t c) const { return transposed ? rows[c] : cols[c]; }

  std::string W(std::size_t r, std::size_t c) const {
    auto [i, j] = orig(r, c);
    if (nm.w_name) return nm.w_name(i, j);
    return "W[" + rows[i] + "," + cols[j] + "]";
  }
  std::string z(std::size_t c, int h) const {
    return stem("z") + "[" + ratio(c) + "," + std::to_string(h) + "]";
  }
  std::string alpha(std::size_t r, std::size_t c, int h) const {
    return stem("alpha") + "[" + cell(r, c) + "," + std::to_string(h) + "]";
  }
  std::string beta(std::size_t r, std::size_t c) const { return stem("beta") + "[" + cell(r, c) + "]"; }
  std::string gamma(std::size_t c) const { return stem("gamma") + "[" + ratio(c) + "]"; }
  std::string row(const std::string& s, const std::string& idx) const {
    return stem(s) + "[" + idx + "]";
  }
};

DiscretizedBlock build_core(const hull::RowColBoundsD& b, int H, Mode mode, bool transposed,
                            const DiscretizeOptions& opts) {
  if (H < 1) throw ParamError("discretization level H must be at least 1");
  if (H > 40) throw ParamError("discretization level H is too large");
  const std::size_t nr = b.n1, nc = b.n2;  // block orientation
  if (b.l.size() != nr || b.u.size() != nr) throw ParamError("bound vectors do not match the block");
  for (std::size_t r = 0; r < nr; ++r) {
    if (!std::isfinite(b.u[r])) throw ParamError("discretization needs finite upper bounds");
    if (!(0 <= b.l[r] && b.l[r] <= b.u[r])) throw ParamError("bounds must satisfy 0 <= l <= u");
  }
  const bool outer = mode == Mode::Outer;
  const bool sum_to_one = opts.sum_to_one.value_or(!outer);
  const double step = std::ldexp(1.0, -H);
  const double kappa = outer ? 1.0 : std::ldexp(1.0, H) / (std::ldexp(1.0, H) - 1.0);

  Namer nm(opts.naming, transposed, transposed ? nc : nr, transposed ? nr : nc);
  DiscretizedBlock blk;
  blk.spec = {H, mode, transposed ? Orientation::Col : Orientation::Row};
  auto& m = blk.model;

  const std::size_t n1 = transposed ? nc : nr, n2 = transposed ? nr : nc;
  blk.W.assign(n1, std::vector<std::string>(n2));
  blk.alpha.assign(n1, std::vector<std::vector<std::string>>(n2, std::vector<std::string>(H)));
  if (outer) blk.beta.assign(n1, std::vector<std::string>(n2));

  std::vector<std::vector<std::size_t>> w(nr, std::vector<std::size_t>(nc));
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      auto [i, j] = nm.orig(r, c);
      blk.W[i][j] = nm.W(r, c);
      w[r][c] = m.add_var(blk.W[i][j], 0.0, model::kInf);
    }
  }
  std::vector<std::vector<std::size_t>> z(nc, std::vector<std::size_t>(H));
  std::vector<std::size_t> gamma(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    blk.z.emplace_back();
    for (int h = 0; h < H; ++h) {
      blk.z.back().push_back(nm.z(c, h));
      z[c][h] = m.add_binary(blk.z.back().back());
    }
    if (outer) {
      blk.gamma.push_back(nm.gamma(c));
      gamma[c] = m.add_var(blk.gamma.back(), 0.0, step);
    }
  }

  for (std::size_t r = 0; r < nr; ++r) {
    const double l = b.l[r], u = b.u[r];
    std::vector<Term> sum;
    for (std::size_t c = 0; c < nc; ++c) sum.push_back({w[r][c], 1.0});
    m.add_constraint(nm.row("sum_lo", nm.line(r)), sum, Sense::GreaterEq, l);
    m.add_constraint(nm.row("sum_up", nm.line(r)), sum, Sense::LessEq, u);

    for (std::size_t c = 0; c < nc; ++c) {
      auto [i, j] = nm.orig(r, c);
      std::vector<Term> link{{w[r][c], 1.0}};
      for (int h = 0; h < H; ++h) {
        const std::string name = nm.alpha(r, c, h);
        blk.alpha[i][j][h] = name;
        const std::size_t a = m.add_var(name, 0.0, u);
        const std::size_t zz = z[c][h];
        const std::string idx = nm.cell(r, c) + "," + std::to_string(h);
        m.add_constraint(nm.row("alpha_lo", idx), {{a, 1.0}, {zz, -l}}, Sense::GreaterEq, 0.0);
        m.add_constraint(nm.row("alpha_up", idx), {{a, 1.0}, {zz, -u}}, Sense::LessEq, 0.0);
        std::vector<Term> mc3{{a, 1.0}, {zz, -u}}, mc4{{a, 1.0}, {zz, -l}};
        for (const auto& t : sum) {
          mc3.push_back({t.var, -1.0});
          mc4.push_back({t.var, -1.0});
        }
        m.add_constraint(nm.row("alpha_mc3", idx), mc3, Sense::GreaterEq, -u);
        m.add_constraint(nm.row("alpha_mc4", idx), mc4, Sense::LessEq, -l);
        link.push_back({a, -kappa * std::ldexp(1.0, -(h + 1))});
      }
      if (outer) {
        const std::string name = nm.beta(r, c);
        blk.beta[i][j] = name;
        const std::size_t be = m.add_var(name, 0.0, u * step);
        const std::size_t g = gamma[c];
        const std::string idx = nm.cell(r, c);
        m.add_constraint(nm.row("beta_lo", idx), {{be, 1.0}, {g, -l}}, Sense::GreaterEq, 0.0);
        m.add_constraint(nm.row("beta_up", idx), {{be, 1.0}, {g, -u}}, Sense::LessEq, 0.0);
        std::vector<Term> mc3{{be, 1.0}, {g, -u}}, mc4{{be, 1.0}, {g, -l}};
        for (const auto& t : sum) {
          mc3.push_back({t.var, -step});
          mc4.push_back({t.var, -step});
        }
        m.add_constraint(nm.row("beta_mc3", idx), mc3, Sense::GreaterEq, -step * u);
        m.add_constraint(nm.row("beta_mc4", idx), mc4, Sense::LessEq, -step * l);
        link.push_back({be, -1.0});
      }
      m.add_constraint(nm.row("link", nm.cell(r, c)), link, Sense::Equal, 0.0);
    }
  }

  if (b.has_agg()) {
    std::vector<Term> all;
    for (const auto& row : w)
      for (std::size_t v : row) all.push_back({v, 1.0});
    m.add_constraint(nm.row("agg_lo", "all"), all, Sense::GreaterEq, b.L());
    m.add_constraint(nm.row("agg_up", "all"), all, Sense::LessEq, *b.agg_U);
  }
  if (sum_to_one) {
    std::vector<Term> grid;
    for (std::size_t c = 0; c < nc; ++c) {
      for (int h = 0; h < H; ++h) grid.push_back({z[c][h], kappa * std::ldexp(1.0, -(h + 1))});
      if (outer) grid.push_back({gamma[c], 1.0});
    }
    m.add_constraint(nm.row("grid_sum", "all"), grid, Sense::Equal, 1.0);
  }
  return blk;
}

hull::RowColBoundsD transposed(const hull::RowColBoundsD& b) {
  hull::RowColBoundsD t = b;
  std::swap(t.n1, t.n2);
  return t;
}

}  // namespace

DiscretizedBlock build_outer(const hull::RowColBoundsD& b, int H, const DiscretizeOptions& opts) {
  return build_core(b, H, Mode::Outer, false, opts);
}

DiscretizedBlock build_inner(const hull::RowColBoundsD& b, int H, const DiscretizeOptions& opts) {
  return build_core(b, H, Mode::Inner, false, opts);
}

DiscretizedBlock build_outer_col(const hull::RowColBoundsD& b, int H,
                                 const DiscretizeOptions& opts) {
  return build_core(transposed(b), H, Mode::Outer, true, opts);
}

DiscretizedBlock build_inner_col(const hull::RowColBoundsD& b, int H,
                                 const DiscretizeOptions& opts) {
  return build_core(transposed(b), H, Mode::Inner, true, opts);
}

DiscretizedBlock build(const hull::RowColBoundsD& b, const DiscretizationSpec& spec,
                       const DiscretizeOptions& opts) {
  const bool col = spec.orientation == Orientation::Col;
  return build_core(col ? transposed(b) : b, spec.H, spec.mode, col, opts);
}

double grid_value(const std::vector<double>& digits, Mode mode) {
  const int H = static_cast<int>(digits.size());
  double v = 0;
  for (int h = 0; h < H; ++h) v += std::ldexp(digits[h], -(h + 1));
  if (mode == Mode::Inner) v *= std::ldexp(1.0, H) / (std::ldexp(1.0, H) - 1.0);
  return v;
}

}  // namespace rankone::discretize
