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
#include <map>
#include <stdexcept>

#include "rankone/polyhedron.hpp"

namespace rankone::poly {
namespace {

using Bits = std::vector<std::uint64_t>;

struct WorkRow {
  std::vector<Rational> a;
  Rational b;
  bool equality = false;
  Bits hist;
  std::string name;
};

std::size_t popcount(const Bits& bits) {
  std::size_t n = 0;
  for (auto w : bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Bits bit_or(const Bits& x, const Bits& y) {
  Bits z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = x[k] | y[k];
  return z;
}

// Scales a row so that its coefficients are coprime integers. Equalities are
// additionally sign-fixed so that the first nonzero coefficient is positive.
void normalize(WorkRow& r) {
  mpz_class l = 1, g = 0;
  for (const auto& c : r.a) {
    if (sgn(c) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  for (const auto& c : r.a) {
    if (sgn(c) == 0) continue;
    mpz_class n = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return;
  Rational scale(l, g);
  scale.canonicalize();
  if (r.equality) {
    for (const auto& c : r.a) {
      if (sgn(c) != 0) {
        if (sgn(c) < 0) scale = -scale;
        break;
      }
    }
  }
  if (scale == 1) return;
  for (auto& c : r.a) {
    if (sgn(c) != 0) c *= scale;
  }
  r.b *= scale;
}

bool zero_row(const WorkRow& r) {
  return std::all_of(r.a.begin(), r.a.end(),
                     [](const Rational& c) { return sgn(c) == 0; });
}

struct System {
  std::vector<std::string> vars;
  std::vector<WorkRow> rows;
  bool infeasible = false;
};

// Drops trivial rows, detects contradictions, and keeps only the tightest of
// each family of parallel inequalities.
void tidy(System& sys) {
  std::map<std::vector<Rational>, std::size_t> seen_le;
  std::map<std::vector<Rational>, std::size_t> seen_eq;
  std::vector<WorkRow> out;
  out.reserve(sys.rows.size());
  for (auto& r : sys.rows) {
    normalize(r);
    if (zero_row(r)) {
      bool ok = r.equality ? sgn(r.b) == 0 : sgn(r.b) >= 0;
      if (!ok) sys.infeasible = true;
      continue;
    }
    if (r.equality) {
      auto [it, fresh] = seen_eq.emplace(r.a, out.size());
      if (fresh) {
        out.push_back(std::move(r));
      } else if (out[it->second].b != r.b) {
        sys.infeasible = true;
      }
      continue;
    }
    auto [it, fresh] = seen_le.emplace(r.a, out.size());
    if (fresh) {
      out.push_back(std::move(r));
      continue;
    }
    WorkRow& kept = out[it->second];
    if (r.b < kept.b ||
        (r.b == kept.b && popcount(r.hist) < popcount(kept.hist))) {
      kept = std::move(r);
    }
  }
  sys.rows = std::move(out);
}

System to_system(const Polyhedron& p) {
  System sys;
  sys.vars = p.vars();
  std::size_t n_ineq = 0;
  for (const auto& r : p.rows()) {
    if (r.rel != Relation::Equal) ++n_ineq;
  }
  std::size_t words = (n_ineq + 63) / 64;
  std::size_t next = 0;
  for (const auto& r : p.rows()) {
    WorkRow w;
    w.a = r.coeffs;
    w.b = r.rhs;
    w.name = r.name;
    w.hist.assign(words, 0);
    if (r.rel == Relation::Equal) {
      w.equality = true;
    } else {
      if (r.rel == Relation::GreaterEq) {
        for (auto& c : w.a) c = -c;
        w.b = -w.b;
      }
      w.hist[next / 64] |= std::uint64_t{1} << (next % 64);
      ++next;
    }
    sys.rows.push_back(std::move(w));
  }
  tidy(sys);
  return sys;
}

Polyhedron to_polyhedron(const System& sys) {
  Polyhedron out(sys.vars);
  if (sys.infeasible) {
    out.add_row(std::vector<Rational>(sys.vars.size()), Relation::LessEq,
                Rational(-1), "infeasible");
    return out;
  }
  for (const auto& r : sys.rows) {
    out.add_row(r.a, r.equality ? Relation::Equal : Relation::LessEq, r.b,
                r.name);
  }
  return out;
}

void drop_column(System& sys, std::size_t k) {
  sys.vars.erase(sys.vars.begin() + static_cast<std::ptrdiff_t>(k));
  for (auto& r : sys.rows) r.a.erase(r.a.begin() + static_cast<std::ptrdiff_t>(k));
}

// One elimination step. Returns true if it was a combination step (as opposed
// to an equality substitution), which is what the Chernikov count tracks.
bool eliminate(System& sys, std::size_t k) {
  if (sys.infeasible) {
    drop_column(sys, k);
    return false;
  }
  auto eq_it = std::find_if(sys.rows.begin(), sys.rows.end(),
                            [k](const WorkRow& r) {
                              return r.equality && sgn(r.a[k]) != 0;
                            });
  if (eq_it != sys.rows.end()) {
    WorkRow e = std::move(*eq_it);
    sys.rows.erase(eq_it);
    for (auto& r : sys.rows) {
      if (sgn(r.a[k]) == 0) continue;
      Rational lambda = r.a[k] / e.a[k];
      for (std::size_t c = 0; c < r.a.size(); ++c) {
        if (sgn(e.a[c]) != 0) r.a[c] -= lambda * e.a[c];
      }
      r.b -= lambda * e.b;
      r.name.clear();
    }
    drop_column(sys, k);
    tidy(sys);
    return false;
  }

  std::vector<WorkRow> keep, pos, neg;
  for (auto& r : sys.rows) {
    int s = sgn(r.a[k]);
    if (s == 0) {
      keep.push_back(std::move(r));
    } else if (s > 0) {
      pos.push_back(std::move(r));
    } else {
      neg.push_back(std::move(r));
    }
  }
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      Rational mp = -n.a[k];
      Rational mn = p.a[k];
      WorkRow c;
      c.a.resize(p.a.size());
      for (std::size_t j = 0; j < p.a.size(); ++j) {
        if (sgn(p.a[j]) == 0 && sgn(n.a[j]) == 0) continue;
        c.a[j] = mp * p.a[j] + mn * n.a[j];
      }
      c.a[k] = 0;
      c.b = mp * p.b + mn * n.b;
      c.hist = bit_or(p.hist, n.hist);
      keep.push_back(std::move(c));
    }
  }
  sys.rows = std::move(keep);
  drop_column(sys, k);
  tidy(sys);
  return true;
}

}  // namespace

Polyhedron fm_eliminate(const Polyhedron& p, std::string_view var) {
  std::size_t k = p.require_index(var);
  System sys = to_system(p);
  eliminate(sys, k);
  return to_polyhedron(sys);
}

Polyhedron fm_eliminate_all(const Polyhedron& p,
                            const std::vector<std::string>& order) {
  System sys = to_system(p);
  std::size_t steps = 0;
  for (const auto& var : order) {
    auto it = std::find(sys.vars.begin(), sys.vars.end(), var);
    if (it == sys.vars.end()) {
      throw std::invalid_argument("unknown variable " + var);
    }
    if (eliminate(sys, static_cast<std::size_t>(it - sys.vars.begin()))) {
      ++steps;
      std::erase_if(sys.rows, [steps](const WorkRow& r) {
        return !r.equality && popcount(r.hist) > steps + 1;
      });
    }
  }
  return to_polyhedron(sys);
}

}  // namespace rankone::poly
