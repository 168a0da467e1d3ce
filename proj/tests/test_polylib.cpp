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

#include "doctest.h"
#include "gen.hpp"
#include "rankone/errors.hpp"
#include "rankone/exact_lp.hpp"
#include "rankone/polyhedron.hpp"

using namespace rankone;
using namespace rankone::poly;
using rankone::testing::Gen;

namespace {

constexpr Relation LE = Relation::LessEq;
constexpr Relation GE = Relation::GreaterEq;
constexpr Relation EQ = Relation::Equal;

std::vector<Rational> R(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

Polyhedron unit_square() {
  Polyhedron p({"x", "y"});
  p.add_row(R({1, 0}), GE, 0);
  p.add_row(R({1, 0}), LE, 1);
  p.add_row(R({0, 1}), GE, 0);
  p.add_row(R({0, 1}), LE, 1);
  return p;
}

std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Random bounded polytope: a box plus a few random cuts.
Polyhedron random_polytope(Gen& g, std::size_t dim, std::size_t extra) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < dim; ++k) names.push_back("x" + std::to_string(k));
  Polyhedron p(names);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Rational> e(dim);
    e[k] = 1;
    p.add_row(e, GE, g.rational(-3, 0, 2));
    p.add_row(e, LE, g.rational(1, 4, 2));
  }
  for (std::size_t r = 0; r < extra; ++r) {
    std::vector<Rational> a(dim);
    for (auto& c : a) c = g.integer(-3, 3);
    p.add_row(a, LE, g.rational(0, 4, 3));
  }
  return p;
}

}  // namespace

TEST_CASE("parse rational literals") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-3/4") == make_rational(-3, 4));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("-1.5") == make_rational(-3, 2));
  CHECK(parse_rational(" 6/8 ") == make_rational(3, 4));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("projection of a triangle onto one axis") {
  Polyhedron p({"x", "y"});
  p.add_row(R({1, 1}), LE, 1);
  p.add_row(R({1, 0}), GE, 0);
  p.add_row(R({0, 1}), GE, 0);
  Polyhedron q = fm_eliminate(p, "y");
  REQUIRE(q.vars() == std::vector<std::string>{"x"});
  Polyhedron expect({"x"});
  expect.add_row(R({1}), GE, 0);
  expect.add_row(R({1}), LE, 1);
  CHECK(poly_equal(q, expect));
}

TEST_CASE("projection propagates infeasibility") {
  Polyhedron p({"x"});
  p.add_row(R({1}), GE, 1);
  p.add_row(R({1}), LE, 0);
  Polyhedron q = fm_eliminate(p, "x");
  CHECK(q.dim() == 0);
  CHECK(q.has_contradiction());
  CHECK(q.dump() == "infeasible: 0 <= -1\n");
}

TEST_CASE("projection substitutes through equalities") {
  Polyhedron p({"x", "y", "t"});
  p.add_row(R({1, 0, -1}), EQ, 0);
  p.add_row(R({0, 1, 1}), LE, 2);
  p.add_row(R({0, 0, 1}), GE, 0);
  p.add_row(R({0, 1, 0}), GE, 0);
  Polyhedron q = fm_eliminate(p, "t");
  Polyhedron expect({"x", "y"});
  expect.add_row(R({1, 1}), LE, 2);
  expect.add_row(R({1, 0}), GE, 0);
  expect.add_row(R({0, 1}), GE, 0);
  CHECK(poly_equal(q, expect));
}

TEST_CASE("redundancy removal") {
  Polyhedron p({"x"});
  p.add_row(R({1}), LE, 1);
  p.add_row(R({1}), LE, 2);
  p.add_row(R({1}), GE, 0);
  Polyhedron q = remove_redundant(p);
  CHECK(q.num_rows() == 2);
  CHECK(q.rows()[0].rhs == 1);
  CHECK(q.rows()[1].rel == GE);

  Polyhedron sq = unit_square();
  CHECK(remove_redundant(sq).dump() == sq.dump());

  RedundancyOptions tight;
  tight.row_cap = 2;
  CHECK_THROWS_AS(remove_redundant(p, tight), RowCapExceeded);
}

TEST_CASE("vertex enumeration on basic shapes") {
  VertexSet sq = vertices(unit_square());
  CHECK(sq.points.size() == 4);
  CHECK(sq.is_bounded);

  Polyhedron half({"x"});
  half.add_row(R({1}), GE, 0);
  VertexSet h = vertices(half);
  REQUIRE(h.points.size() == 1);
  CHECK(h.points[0][0] == 0);
  CHECK_FALSE(h.is_bounded);
  CHECK(h.rays.size() == 1);

  Polyhedron line({"x", "y"});
  line.add_row(R({0, 1}), EQ, 2);
  VertexSet l = vertices(line);
  CHECK(l.points.size() == 1);
  CHECK(l.lines.size() == 1);
  CHECK_FALSE(l.is_bounded);

  Polyhedron empty({"x"});
  empty.add_row(R({1}), GE, 1);
  empty.add_row(R({1}), LE, 0);
  CHECK(vertices(empty).empty());

  std::vector<std::string> many;
  for (int k = 0; k < 13; ++k) many.push_back("v" + std::to_string(k));
  CHECK_THROWS_AS(vertices(Polyhedron(many)), DimensionCapExceeded);
}

TEST_CASE("membership") {
  Polyhedron sq = unit_square();
  CHECK(contains(sq, std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)}));
  CHECK_FALSE(contains(sq, std::vector<Rational>{make_rational(3, 2), Rational(0)}));
}

TEST_CASE("set equality") {
  Polyhedron a({"x"}), b({"x"});
  a.add_row(R({1}), LE, 1);
  a.add_row(R({1}), GE, 0);
  b.add_row(R({2}), LE, 2);
  b.add_row(R({1}), GE, 0);
  CHECK(poly_equal(a, b));
  b.add_row(R({3}), LE, 2);
  CHECK_FALSE(poly_equal(a, b));

  Polyhedron c({"x"}), d({"x"});
  c.add_row(R({1}), GE, 0);
  d.add_row(R({1}), GE, 0);
  d.add_row(R({1}), LE, 5);
  CHECK_FALSE(poly_equal(c, d));
  CHECK(poly_subset(d, c));
}

TEST_CASE("dump format") {
  Polyhedron p({"x1", "x2"});
  p.add_row(R({2, -1}), LE, 3, "cap");
  p.add_row({{"x2", make_rational(1, 2)}}, GE, 0);
  CHECK(p.dump() == "cap: 2*x1 - 1*x2 <= 3\nr1: 1/2*x2 >= 0\n");
}

TEST_CASE("exact LP small cases") {
  Polyhedron p({"x", "y"});
  p.add_row(R({1, 1}), LE, 4);
  p.add_row(R({1, 3}), LE, 6);
  p.add_row(R({1, 0}), GE, 0);
  p.add_row(R({0, 1}), GE, 0);
  auto r = exact_maximize(p, R({1, 2}));
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 5);
  CHECK(r.x == std::vector<Rational>{Rational(3), Rational(1)});

  auto u = exact_maximize(p, R({-1, 0}));
  CHECK(u.status == LpStatus::Optimal);
  CHECK(u.value == 0);

  Polyhedron open({"x"});
  open.add_row(R({1}), GE, -2);
  CHECK(exact_maximize(open, R({1})).status == LpStatus::Unbounded);
  CHECK(exact_minimize(open, R({1})).value == -2);

  Polyhedron bad({"x"});
  bad.add_row(R({1}), GE, 1);
  bad.add_row(R({1}), LE, 0);
  CHECK(exact_maximize(bad, R({1})).status == LpStatus::Infeasible);
}

TEST_CASE("exact LP agrees with vertex maximum") {
  Gen g(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t dim = static_cast<std::size_t>(g.integer(1, 4));
    Polyhedron p = random_polytope(g, dim, static_cast<std::size_t>(g.integer(0, 4)));
    std::vector<Rational> c(dim);
    for (auto& v : c) v = g.integer(-4, 4);
    VertexSet v = vertices(p);
    auto res = exact_maximize(p, c);
    if (v.empty()) {
      CHECK(res.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(res.status == LpStatus::Optimal);
    Rational best = 0;
    bool first = true;
    for (const auto& x : v.points) {
      Rational val = 0;
      for (std::size_t k = 0; k < dim; ++k) val += c[k] * x[k];
      if (first || val > best) best = val;
      first = false;
    }
    CHECK(res.value == best);
    CHECK(contains(p, res.x));
  }
}

TEST_CASE("property: projection is sound and complete") {
  Gen g(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t dim = static_cast<std::size_t>(g.integer(2, 4));
    Polyhedron p = random_polytope(g, dim, static_cast<std::size_t>(g.integer(1, 4)));
    const std::string last = p.vars().back();
    Polyhedron q = fm_eliminate(p, last);
    VertexSet vq = vertices(q);
    // soundness: each vertex of the projection lifts
    for (const auto& v : vq.points) {
      Polyhedron fiber({last});
      for (const auto& row : p.rows()) {
        Rational rhs = row.rhs;
        for (std::size_t k = 0; k + 1 < dim; ++k) rhs -= row.coeffs[k] * v[k];
        fiber.add_row(std::vector<Rational>{row.coeffs[dim - 1]}, row.rel, rhs);
      }
      CHECK(exact_feasible(fiber));
    }
    // completeness: each vertex of p projects into q
    for (const auto& v : vertices(p).points) {
      std::vector<Rational> head(v.begin(), v.end() - 1);
      CHECK(contains(q, head));
    }
  }
}

TEST_CASE("property: eliminating in sequence equals one-at-a-time") {
  Gen g(12);
  for (int trial = 0; trial < 15; ++trial) {
    Polyhedron p = random_polytope(g, 4, static_cast<std::size_t>(g.integer(2, 5)));
    Polyhedron a = fm_eliminate(fm_eliminate(p, "x3"), "x2");
    Polyhedron b = fm_eliminate_all(p, {"x3", "x2"});
    CHECK(poly_equal(a, b));
  }
}

TEST_CASE("property: redundancy removal preserves membership") {
  Gen g(13);
  for (int trial = 0; trial < 5; ++trial) {
    Polyhedron p = random_polytope(g, 3, 6);
    p.add_row(p.rows()[0]);
    Polyhedron q = remove_redundant(p);
    CHECK(q.num_rows() <= p.num_rows() - 1);
    for (int s = 0; s < 200; ++s) {
      std::vector<Rational> x(3);
      for (auto& c : x) c = g.rational(-4, 5, 4);
      CHECK(contains(p, x) == contains(q, x));
    }
  }
}

TEST_CASE("property: vertices are basic feasible points") {
  Gen g(14);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t dim = static_cast<std::size_t>(g.integer(1, 5));
    Polyhedron p = random_polytope(g, dim, static_cast<std::size_t>(g.integer(0, 6)));
    for (const auto& v : vertices(p).points) {
      CHECK(contains(p, v));
      std::vector<std::vector<Rational>> tight;
      for (const auto& row : p.rows()) {
        if (row.lhs(v) == row.rhs) tight.push_back(row.coeffs);
      }
      CHECK(rank_of(tight) == dim);
    }
  }
}
