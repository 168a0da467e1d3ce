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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "../src/cli/commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "rankone/pooling.hpp"

using namespace rankone;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("rankone_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

pooling::PoolingInstance forced_chain() {
  pooling::PoolingInstance inst;
  inst.sources.push_back({"s", 1, 0, {{"k1", 1.0}}, std::nullopt});
  inst.pools.push_back({"p", 1, 0});
  inst.terminals.push_back({"t", 1, 0, {{"k1", 1.0}}, {{"k1", 1.0}}});
  inst.arcs.push_back({"s", "p", 0, 1, 0});
  inst.arcs.push_back({"p", "t", 0, 1, -1});
  return inst;
}

int run_args(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "rankone");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("solve on the forced chain") {
  TempDir dir("solve");
  const auto file = (dir.path / "chain.json").string();
  pooling::save(forced_chain(), file);
  std::string out, err;
  REQUIRE(run_args({"solve", file, "--tag", "F1S"}, out, err) == 0);
  auto doc = nlohmann::json::parse(out);
  CHECK(doc["status"] == "optimal");
  CHECK(doc["objective"].get<double>() == doctest::Approx(-1));
  CHECK(doc["tag"] == "F1S");

  REQUIRE(run_args({"solve", file, "--tag", "G1S", "--H", "2"}, out, err) == 0);
  doc = nlohmann::json::parse(out);
  CHECK(doc["objective"].get<double>() == doctest::Approx(-1));
  CHECK(doc["H"] == 2);

  CHECK(run_args({"solve", file, "--tag", "F9X"}, out, err) == 1);
  CHECK(err.find("unknown formulation tag") != std::string::npos);
}

TEST_CASE("gen is deterministic and validates") {
  TempDir dir("gen");
  std::string a, b, err;
  REQUIRE(run_args({"gen", "--seed", "7", "--nS", "4"}, a, err) == 0);
  REQUIRE(run_args({"gen", "--seed", "7", "--nS", "4"}, b, err) == 0);
  CHECK(a == b);
  REQUIRE(run_args({"gen", "--seed", "8", "--nS", "4"}, b, err) == 0);
  CHECK(a != b);

  const auto file = (dir.path / "g.json").string();
  REQUIRE(run_args({"gen", "--seed", "7", "--out", file}, a, err) == 0);
  CHECK(run_args({"validate", file}, a, err) == 0);
  CHECK(a.find("ok:") != std::string::npos);

  const auto bad = (dir.path / "bad.json").string();
  std::ofstream(bad) << R"({"sources": [], "pools": [], "terminals": [], "arcs": [{"from": "x"}]})";
  CHECK(run_args({"validate", bad}, a, err) == 1);
  CHECK_FALSE(err.empty());
  CHECK(run_args({"validate", (dir.path / "missing.json").string()}, a, err) == 1);
}

TEST_CASE("build exports LP text and MPS") {
  TempDir dir("build");
  const auto file = (dir.path / "chain.json").string();
  pooling::save(forced_chain(), file);
  std::string out, err;
  REQUIRE(run_args({"build", file, "--tag", "F2S^F2T"}, out, err) == 0);
  CHECK(out.find("f[p,t]") != std::string::npos);
  const auto mps = (dir.path / "m.mps").string();
  REQUIRE(run_args({"build", file, "--tag", "M1S", "--H", "1", "--out", mps}, out, err) == 0);
  std::ifstream f(mps);
  std::string first;
  std::getline(f, first);
  CHECK(first.rfind("NAME", 0) == 0);
}

TEST_CASE("cuts emits a round table") {
  TempDir dir("cuts");
  const auto file = (dir.path / "chain.json").string();
  pooling::save(forced_chain(), file);
  std::string out, err;
  REQUIRE(run_args({"cuts", file, "--base", "T", "--rounds", "5"}, out, err) == 0);
  auto rows = parse_csv(out);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows[0] == std::vector<std::string>{"round", "value", "cuts", "max_violation"});
  CHECK(run_args({"cuts", file, "--base", "X"}, out, err) != 0);
}

TEST_CASE("verify-hull 3 3 20 42 passes") {
  std::string out, err;
  CHECK(run_args({"verify-hull", "3", "3", "20", "42"}, out, err) == 0);
  CHECK(out.find("all checks passed") != std::string::npos);
  CHECK(out.find("FAILED") == std::string::npos);
}

TEST_CASE("experiment on generated instances") {
  TempDir dir("experiment");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    pooling::GeneratorParams p;
    p.nS = 3;
    p.nI = 2;
    p.nT = 2;
    pooling::save(pooling::generate_random(p, seed), (dir.path / ("inst" + std::to_string(seed) + ".json")).string());
  }
  cli::ExperimentArgs args;
  args.dir = dir.path.string();
  args.methods = "light-lp,medium-lp";
  args.H = 2;
  args.workers = 2;
  auto rows = cli::run_experiment(args);
  REQUIRE(rows.size() == 5 * 8 + 8);

  std::map<std::string, std::map<std::string, double>> gap;
  for (const auto& r : rows) {
    if (r.instance == "average") continue;
    CHECK(r.status == "optimal");
    CHECK(r.gap_pct >= -1e-6);
    gap[r.instance][r.method] = r.gap_pct;
  }
  REQUIRE(gap.size() == 5);
  for (auto& [inst, g] : gap) {
    CAPTURE(inst);
    CHECK(g["F2S"] <= g["F1S"] + 1e-6);
    CHECK(g["F2T"] <= g["F1T"] + 1e-6);
    for (const auto& [m, v] : g) CHECK(g["F2S^F2T"] <= v + 1e-6);
  }

  auto csv = cli::experiment_csv(rows);
  auto table = parse_csv(csv);
  CHECK(table[0] == std::vector<std::string>{"instance", "method", "dual_bound", "primal_bound", "gap_pct",
                                             "wall_time", "status"});
  CHECK(table.size() == rows.size() + 1);
  CHECK(table.back()[0] == "average");

  // Identical except for the timing column.
  args.workers = 1;
  auto again = cli::run_experiment(args);
  REQUIRE(again.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(again[k].instance == rows[k].instance);
    CHECK(again[k].method == rows[k].method);
    CHECK(again[k].gap_pct == rows[k].gap_pct);
  }
}

TEST_CASE("experiment never aborts on a bad file") {
  TempDir dir("bad");
  pooling::save(forced_chain(), (dir.path / "a.json").string());
  std::ofstream(dir.path / "b.json") << "{not json";
  cli::ExperimentArgs args;
  args.dir = dir.path.string();
  args.methods = "light-lp,heavy-lp";
  auto rows = cli::run_experiment(args);
  REQUIRE(rows.size() == 2 * 5 + 5);
  CHECK(rows[0].status == "optimal");
  CHECK(rows[0].gap_pct == doctest::Approx(0).epsilon(1e-6));
  CHECK(rows[5].status.rfind("invalid", 0) == 0);

  args.size_guard = 1;
  rows = cli::run_experiment(args);
  CHECK(rows[4].method == "F1ST");
  CHECK(rows[4].status == "skipped (size guard)");
}
