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

#include <cstdio>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "rankone/errors.hpp"
#include "rankone/pooling.hpp"

using namespace rankone;
using namespace rankone::pooling;
using testing::Gen;

namespace {

const char* kChain = R"({
  "sources": [{"id": "s", "U": 10, "L": 0, "lambda": {"k1": 1}}],
  "pools": [{"id": "p", "U": 4, "L": 0}],
  "terminals": [{"id": "t", "U": 10, "L": 0, "mu_lo": {"k1": 1}, "mu_hi": {"k1": 1}}],
  "arcs": [{"from": "s", "to": "p", "l": 0, "u": 1, "cost": 0},
           {"from": "p", "to": "t", "l": 0, "u": 1, "cost": -1}],
  "objective": "min_cost"
})";

PoolingInstance chain(std::vector<std::string> pools) {
  PoolingInstance inst;
  inst.sources.push_back({"s", 10, 0, {{"k1", 1.0}}, std::nullopt});
  for (const auto& p : pools) inst.pools.push_back({p, 4, 0});
  inst.terminals.push_back({"t", 10, 0, {}, {{"k1", 2.0}}});
  std::string prev = "s";
  for (const auto& p : pools) {
    inst.arcs.push_back({prev, p, 0, 1, 0});
    prev = p;
  }
  inst.arcs.push_back({prev, "t", 0, 1, -1});
  return inst;
}

bool rejects(const PoolingInstance& inst) {
  try {
    validate(inst);
  } catch (const ValidationError&) {
    return true;
  }
  return false;
}

GeneratorParams small_params(Gen& g) {
  GeneratorParams p;
  p.nS = static_cast<int>(g.integer(1, 4));
  p.nI = static_cast<int>(g.integer(0, 4));
  p.nT = static_cast<int>(g.integer(1, 4));
  p.density_si = g.uniform(0.1, 1.0);
  p.density_ii = g.uniform(0.0, 1.0);
  p.density_it = g.uniform(0.1, 1.0);
  p.density_st = g.coin() ? 0.0 : g.uniform(0.0, 1.0);
  p.K = static_cast<int>(g.integer(1, 3));
  return p;
}

}  // namespace

TEST_CASE("loading the minimal chain") {
  auto inst = from_json_text(kChain);
  CHECK(validate(inst).empty());
  auto reach = compute_reach(inst);
  CHECK(reach.S.at("p") == std::vector<std::string>{"s"});
  CHECK(reach.T.at("p") == std::vector<std::string>{"t"});
  CHECK(reach.S.at("s") == std::vector<std::string>{"s"});
  CHECK(reach.T.at("t") == std::vector<std::string>{"t"});
  CHECK(to_json_text(from_json_text(to_json_text(inst))) == to_json_text(inst));
}

TEST_CASE("schema errors carry the field path") {
  auto expect_path = [](const std::string& text, const std::string& path) {
    try {
      from_json_text(text);
      FAIL("accepted malformed input");
    } catch (const SchemaError& e) {
      CHECK(e.path() == path);
    }
  };
  expect_path(R"({"sources": [], "pools": [], "terminals": [], "arcs": [{"from": "a", "to": "b"}]})", "/arcs/0/u");
  expect_path(R"({"sources": [{"id": 3, "U": 1}], "pools": [], "terminals": [], "arcs": []})", "/sources/0/id");
  expect_path(R"({"pools": [], "terminals": [], "arcs": []})", "/sources");
  expect_path(R"({"sources": [{"id": "s", "U": 1, "lambda": {"k": "x"}}], "pools": [], "terminals": [], "arcs": []})",
              "/sources/0/lambda/k");
  expect_path("{not json", "");
  CHECK_THROWS_AS(load("/nonexistent/instance.json"), IoError);
}

TEST_CASE("validation rejects invariant violations") {
  auto base = chain({"p1", "p2"});
  CHECK_FALSE(rejects(base));
  SUBCASE("arc pattern") {
    auto inst = base;
    inst.arcs.push_back({"t", "s", 0, 1, 0});
    CHECK(rejects(inst));
  }
  SUBCASE("pool cycle") {
    auto inst = base;
    inst.arcs.push_back({"p2", "p1", 0, 1, 0});
    CHECK(rejects(inst));
  }
  SUBCASE("self loop") {
    auto inst = base;
    inst.arcs.push_back({"p1", "p1", 0, 1, 0});
    CHECK(rejects(inst));
  }
  SUBCASE("arc bounds order") {
    auto inst = base;
    inst.arcs[0].l = 2;
    CHECK(rejects(inst));
  }
  SUBCASE("node bounds order") {
    auto inst = base;
    inst.pools[0].L = 5;
    CHECK(rejects(inst));
  }
  SUBCASE("empty spec window") {
    auto inst = base;
    inst.terminals[0].mu_lo["k1"] = 3;
    CHECK(rejects(inst));
  }
  SUBCASE("duplicate ids and arcs") {
    auto inst = base;
    inst.pools.push_back({"t", 1, 0});
    CHECK(rejects(inst));
    inst = base;
    inst.arcs.push_back(inst.arcs[0]);
    CHECK(rejects(inst));
  }
  SUBCASE("ghost override on a real arc") {
    auto inst = base;
    inst.ghost_overrides.push_back({"s", "p1", 0, 1});
    CHECK(rejects(inst));
  }
}

TEST_CASE("reachability examples") {
  auto c = chain({"p1", "p2"});
  auto r = compute_reach(c);
  CHECK(r.S.at("p2") == std::vector<std::string>{"s"});
  CHECK(r.T.at("p1") == std::vector<std::string>{"t"});

  auto two = chain({"p"});
  two.sources.push_back({"s2", 10, 0, {{"k1", 3.0}}, std::nullopt});
  two.arcs.push_back({"s2", "p", 0, 1, 0});
  CHECK(compute_reach(two).S.at("p").size() == 2);

  auto lonely = two;
  lonely.terminals.push_back({"t2", 5, 0, {}, {}});
  auto warnings = validate(lonely);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("t2") != std::string::npos);
}

TEST_CASE("ghost bounds") {
  auto inst = chain({"p1", "p2"});  // U_s = 10, U_p = 4
  auto r = compute_reach(inst);
  auto g = default_ghost_bounds(inst, r);
  REQUIRE(g.source_side.count({"s", "p2"}));
  CHECK(g.source_side.at({"s", "p2"}).u == 4);
  CHECK(g.source_side.at({"s", "p2"}).l == 0);
  CHECK_FALSE(g.source_side.count({"s", "p1"}));
  CHECK(g.terminal_side.count({"p1", "t"}));
  CHECK_FALSE(g.terminal_side.count({"p2", "t"}));

  inst.ghost_overrides.push_back({"s", "p2", 0, 2});
  CHECK(ghost_bounds(inst, r).source_side.at({"s", "p2"}).u == 2);
  Network net(inst);
  CHECK(net.ghosts().source_side.at({"s", "p2"}).u == 2);
  CHECK(net.kind("p1") == NodeKind::Pool);
  CHECK(net.arc("p1", "p2").u == 1);
  CHECK_FALSE(net.no_pool_to_pool_arcs());
}

TEST_CASE("generator") {
  GeneratorParams p;
  p.nS = 3;
  p.nI = 2;
  p.nT = 2;
  CHECK(to_json_text(generate_random(p, 1)) == to_json_text(generate_random(p, 1)));
  CHECK(to_json_text(generate_random(p, 1)) != to_json_text(generate_random(p, 2)));

  for (int nI : {1, 3, 5}) {
    GeneratorParams full;
    full.nS = 4;
    full.nI = nI;
    full.nT = 3;
    full.density_si = full.density_ii = full.density_it = 1.0;
    CHECK(generate_random(full, 7).arcs.size() == static_cast<std::size_t>(4 * nI + nI * (nI - 1) / 2 + nI * 3));
    full.density_st = 1.0;
    CHECK(generate_random(full, 7).arcs.size() ==
          static_cast<std::size_t>(4 * nI + nI * (nI - 1) / 2 + nI * 3 + 12));
  }

  GeneratorParams bad = p;
  bad.density_si = 0;
  CHECK_THROWS_AS(generate_random(bad, 1), ParamError);
  bad = p;
  bad.nT = 0;
  CHECK_THROWS_AS(generate_random(bad, 1), ParamError);

  GeneratorParams f1;  // a 10 x 10 x 10 size profile
  f1.nS = f1.nI = f1.nT = 10;
  f1.density_si = 0.35;
  f1.density_ii = 0.3;
  f1.density_it = 0.35;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto n = generate_random(f1, seed).arcs.size();
    CHECK(n >= 60);
    CHECK(n <= 110);
  }
}

TEST_CASE("property: generated instances are valid and round-trip") {
  Gen g(71);
  const auto dir = std::filesystem::temp_directory_path();
  for (int trial = 0; trial < 60; ++trial) {
    auto inst = generate_random(small_params(g), g.word());
    REQUIRE_NOTHROW(validate(inst));
    Network net(inst);
    for (const auto& pool : net.pools()) {
      CHECK_FALSE(net.in(pool).empty());
      CHECK_FALSE(net.out(pool).empty());
    }
    for (const auto& a : inst.arcs)
      if (net.is_pool(a.from) && net.is_pool(a.to)) CHECK(std::stoi(a.from.substr(1)) < std::stoi(a.to.substr(1)));
    const auto path = (dir / ("rankone_pool_" + std::to_string(trial) + ".json")).string();
    save(inst, path);
    CHECK(load(path) == inst);
    std::remove(path.c_str());
  }
}

TEST_CASE("property: mutations are caught") {
  Gen g(72);
  for (int trial = 0; trial < 60; ++trial) {
    auto params = small_params(g);
    params.nI = std::max(params.nI, 2);
    params.density_ii = 1.0;
    auto inst = generate_random(params, g.word());
    auto m = inst;
    switch (trial % 4) {
      case 0: {  // arc pattern
        m.arcs.push_back({inst.terminals[0].id, inst.pools[0].id, 0, 1, 0});
        break;
      }
      case 1: {  // bounds order
        auto& a = m.arcs[static_cast<std::size_t>(g.integer(0, static_cast<long>(m.arcs.size()) - 1))];
        a.l = a.u + 1;
        break;
      }
      case 2: {  // cycle: pool 2 back to pool 1 closes p1 -> p2
        m.arcs.push_back({"p2", "p1", 0, 1, 0});
        break;
      }
      default: {  // spec window
        auto& t = m.terminals[0];
        t.mu_lo["k1"] = t.mu_hi.at("k1") + 0.5;
        break;
      }
    }
    CHECK(rejects(m));
  }
}

TEST_CASE("property: reachability matches the matrix-power closure") {
  Gen g(73);
  for (int trial = 0; trial < 80; ++trial) {
    auto params = small_params(g);
    auto inst = generate_random(params, g.word());
    std::vector<std::string> ids;
    for (const auto& s : inst.sources) ids.push_back(s.id);
    for (const auto& p : inst.pools) ids.push_back(p.id);
    for (const auto& t : inst.terminals) ids.push_back(t.id);
    REQUIRE(ids.size() <= 12);
    const std::size_t n = ids.size();
    auto idx = [&](const std::string& id) {
      return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
    };
    using Mat = std::vector<std::vector<bool>>;
    Mat A(n, std::vector<bool>(n, false));
    for (const auto& a : inst.arcs) A[idx(a.from)][idx(a.to)] = true;
    Mat R = A, P = A;
    for (std::size_t step = 1; step < n; ++step) {
      Mat Q(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          if (P[i][k])
            for (std::size_t j = 0; j < n; ++j)
              if (A[k][j]) Q[i][j] = true;
      P = Q;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (P[i][j]) R[i][j] = true;
    }
    auto reach = compute_reach(inst);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::string> S, T;
      for (const auto& s : inst.sources)
        if (R[idx(s.id)][v] || s.id == ids[v]) S.push_back(s.id);
      for (const auto& t : inst.terminals)
        if (R[v][idx(t.id)] || t.id == ids[v]) T.push_back(t.id);
      std::sort(S.begin(), S.end());
      std::sort(T.begin(), T.end());
      CHECK(reach.S.at(ids[v]) == S);
      CHECK(reach.T.at(ids[v]) == T);
    }
  }
}
