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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "rankone/errors.hpp"
#include "rankone/polyhedron.hpp"

namespace rankone::poly {
namespace {

using IVec = std::vector<mpz_class>;
using Bits = std::vector<std::uint64_t>;

mpz_class dot(const IVec& h, const IVec& y) {
  mpz_class s = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (sgn(h[k]) != 0 && sgn(y[k]) != 0) s += h[k] * y[k];
  }
  return s;
}

void make_primitive(IVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// a*x + b*y with a, b >= 0 scalars, made primitive.
IVec combine(const mpz_class& a, const IVec& x, const mpz_class& b, const IVec& y) {
  IVec z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = a * x[k] + b * y[k];
  make_primitive(z);
  return z;
}

struct Ray {
  IVec v;
  Bits zero;  // processed inequalities tight at this ray
};

void set_bit(Bits& b, std::size_t k) { b[k / 64] |= std::uint64_t{1} << (k % 64); }

std::size_t popcount_and(const Bits& x, const Bits& y) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    n += static_cast<std::size_t>(std::popcount(x[k] & y[k]));
  }
  return n;
}

bool covers(const Bits& sup, const Bits& sub) {
  for (std::size_t k = 0; k < sub.size(); ++k) {
    if ((sub[k] & ~sup[k]) != 0) return false;
  }
  return true;
}

// Homogenized constraint h . (y0, x) >= 0 or = 0.
struct HRow {
  IVec h;
  bool equality;
};

std::vector<HRow> homogenize(const Polyhedron& p) {
  std::vector<HRow> out;
  const std::size_t d = p.dim();
  for (const auto& r : p.rows()) {
    mpz_class l = r.rhs.get_den();
    for (const auto& c : r.coeffs) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    // a.x <= b  <=>  b*y0 - a.x >= 0
    int s = r.rel == Relation::GreaterEq ? -1 : 1;
    HRow h{IVec(d + 1), r.rel == Relation::Equal};
    h.h[0] = s * r.rhs.get_num() * (l / r.rhs.get_den());
    for (std::size_t k = 0; k < d; ++k) {
      const Rational& c = r.coeffs[k];
      h.h[k + 1] = -s * c.get_num() * (l / c.get_den());
    }
    make_primitive(h.h);
    out.push_back(std::move(h));
  }
  HRow pos{IVec(d + 1), false};
  pos.h[0] = 1;
  out.push_back(std::move(pos));
  std::stable_partition(out.begin(), out.end(),
                        [](const HRow& h) { return h.equality; });
  return out;
}

}  // namespace

VertexSet vertices(const Polyhedron& p, const VertexCaps& caps) {
  if (p.dim() > caps.max_dim) {
    throw DimensionCapExceeded("vertices: dimension " + std::to_string(p.dim()) +
                               " exceeds cap " + std::to_string(caps.max_dim));
  }
  if (p.num_rows() > caps.max_rows) {
    throw RowCapExceeded("vertices: " + std::to_string(p.num_rows()) +
                         " rows exceed cap " + std::to_string(caps.max_rows));
  }
  const std::size_t D = p.dim() + 1;
  std::vector<HRow> cons = homogenize(p);
  std::size_t n_ineq = 0;
  for (const auto& c : cons) n_ineq += c.equality ? 0 : 1;
  const std::size_t words = (n_ineq + 63) / 64;

  std::vector<IVec> lines;
  for (std::size_t k = 0; k < D; ++k) {
    IVec e(D);
    e[k] = 1;
    lines.push_back(std::move(e));
  }
  std::vector<Ray> rays;
  std::size_t ineq_index = 0;
  std::size_t eq_seen = 0;

  for (const auto& con : cons) {
    const IVec& h = con.h;
    auto lit = std::find_if(lines.begin(), lines.end(),
                            [&](const IVec& l) { return sgn(dot(h, l)) != 0; });
    if (lit != lines.end()) {
      IVec l = std::move(*lit);
      lines.erase(lit);
      mpz_class hl = dot(h, l);
      if (sgn(hl) < 0) {
        for (auto& x : l) x = -x;
        hl = -hl;
      }
      for (auto& other : lines) {
        mpz_class ho = dot(h, other);
        if (sgn(ho) != 0) other = combine(hl, other, -ho, l);
      }
      for (auto& r : rays) {
        mpz_class hr = dot(h, r.v);
        if (sgn(hr) != 0) r.v = combine(hl, r.v, -hr, l);
      }
      if (!con.equality) {
        for (auto& r : rays) set_bit(r.zero, ineq_index);
        Ray nr{l, Bits(words, 0)};
        // tight on every earlier inequality because it was a lineality vector
        for (std::size_t k = 0; k < ineq_index; ++k) set_bit(nr.zero, k);
        rays.push_back(std::move(nr));
      }
    } else {
      std::vector<Ray> pos, zero, neg;
      std::vector<mpz_class> pos_val, neg_val;
      for (auto& r : rays) {
        mpz_class v = dot(h, r.v);
        int s = sgn(v);
        if (s > 0) {
          pos.push_back(std::move(r));
          pos_val.push_back(v);
        } else if (s < 0) {
          neg.push_back(std::move(r));
          neg_val.push_back(-v);
        } else {
          zero.push_back(std::move(r));
        }
      }
      // Adjacent rays share at least this many tight inequalities.
      const std::size_t eqs_so_far = eq_seen;
      const long need_l = static_cast<long>(D) - 2 - static_cast<long>(lines.size()) -
                          static_cast<long>(eqs_so_far);
      const std::size_t need = need_l > 0 ? static_cast<std::size_t>(need_l) : 0;

      std::vector<const Ray*> all;
      all.reserve(pos.size() + zero.size() + neg.size());
      for (const auto& r : pos) all.push_back(&r);
      for (const auto& r : zero) all.push_back(&r);
      for (const auto& r : neg) all.push_back(&r);

      std::vector<Ray> created;
      Bits common(words);
      for (std::size_t a = 0; a < pos.size(); ++a) {
        for (std::size_t b = 0; b < neg.size(); ++b) {
          for (std::size_t w = 0; w < words; ++w) {
            common[w] = pos[a].zero[w] & neg[b].zero[w];
          }
          if (popcount_and(common, common) < need) continue;
          bool adjacent = true;
          for (const Ray* r : all) {
            if (r == &pos[a] || r == &neg[b]) continue;
            if (covers(r->zero, common)) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          Ray nr{combine(pos_val[a], neg[b].v, neg_val[b], pos[a].v), common};
          if (!con.equality) set_bit(nr.zero, ineq_index);
          created.push_back(std::move(nr));
        }
      }
      rays.clear();
      if (!con.equality) {
        for (auto& r : pos) rays.push_back(std::move(r));
      }
      for (auto& r : zero) {
        if (!con.equality) set_bit(r.zero, ineq_index);
        rays.push_back(std::move(r));
      }
      for (auto& r : created) rays.push_back(std::move(r));
    }
    if (con.equality) {
      ++eq_seen;
    } else {
      ++ineq_index;
    }
  }

  VertexSet out;
  std::set<std::vector<Rational>> seen_points, seen_rays;
  for (const auto& r : rays) {
    if (sgn(r.v[0]) > 0) {
      std::vector<Rational> x(D - 1);
      for (std::size_t k = 1; k < D; ++k) {
        x[k - 1] = Rational(r.v[k], r.v[0]);
        x[k - 1].canonicalize();
      }
      if (seen_points.insert(x).second) out.points.push_back(std::move(x));
    } else {
      std::vector<Rational> x(D - 1);
      for (std::size_t k = 1; k < D; ++k) x[k - 1] = r.v[k];
      if (seen_rays.insert(x).second) out.rays.push_back(std::move(x));
    }
  }
  if (out.points.empty()) {
    out.rays.clear();
    return out;
  }
  for (const auto& l : lines) {
    std::vector<Rational> x(D - 1);
    for (std::size_t k = 1; k < D; ++k) x[k - 1] = l[k];
    out.lines.push_back(std::move(x));
  }
  std::sort(out.points.begin(), out.points.end());
  std::sort(out.rays.begin(), out.rays.end());
  out.is_bounded = out.rays.empty() && out.lines.empty();
  return out;
}

namespace {

bool in_recession_cone(const Polyhedron& q, const std::vector<Rational>& r) {
  for (const auto& row : q.rows()) {
    Rational v = row.lhs(r);
    switch (row.rel) {
      case Relation::LessEq:
        if (sgn(v) > 0) return false;
        break;
      case Relation::Equal:
        if (sgn(v) != 0) return false;
        break;
      case Relation::GreaterEq:
        if (sgn(v) < 0) return false;
        break;
    }
  }
  return true;
}

bool in_lineality(const Polyhedron& q, const std::vector<Rational>& l) {
  for (const auto& row : q.rows()) {
    if (sgn(row.lhs(l)) != 0) return false;
  }
  return true;
}

}  // namespace

bool poly_subset(const Polyhedron& p, const Polyhedron& q,
                 const VertexCaps& caps) {
  std::set<std::string> pv(p.vars().begin(), p.vars().end());
  std::set<std::string> qv(q.vars().begin(), q.vars().end());
  if (pv != qv) throw std::invalid_argument("poly_subset: variable sets differ");
  if (q.dim() > caps.max_dim) {
    throw DimensionCapExceeded("poly_subset: dimension exceeds cap");
  }
  Polyhedron qq = q.over(p.vars());
  VertexSet v = vertices(p, caps);
  for (const auto& x : v.points) {
    if (!contains(qq, x)) return false;
  }
  for (const auto& r : v.rays) {
    if (!in_recession_cone(qq, r)) return false;
  }
  for (const auto& l : v.lines) {
    if (!in_lineality(qq, l)) return false;
  }
  return true;
}

bool poly_equal(const Polyhedron& p, const Polyhedron& q, const VertexCaps& caps) {
  return poly_subset(p, q, caps) && poly_subset(q, p, caps);
}

}  // namespace rankone::poly
