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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankone::pooling {

enum class NodeKind { Source, Pool, Terminal };

struct Source {
  std::string id;
  double U = 0;
  double L = 0;
  std::map<std::string, double> lambda;  // spec key -> quality
  std::optional<double> out_cost;        // per unit leaving the source

  bool operator==(const Source&) const = default;
};

struct Pool {
  std::string id;
  double U = 0;
  double L = 0;

  bool operator==(const Pool&) const = default;
};

struct Terminal {
  std::string id;
  double U = 0;
  double L = 0;
  std::map<std::string, double> mu_lo;  // a missing key means no lower limit
  std::map<std::string, double> mu_hi;  // a missing key means no upper limit

  bool operator==(const Terminal&) const = default;
};

struct Arc {
  std::string from;
  std::string to;
  double l = 0;
  double u = 0;
  double cost = 0;

  bool operator==(const Arc&) const = default;
};

// Replaces the default bounds of one ghost pair.
struct GhostOverride {
  std::string from;
  std::string to;
  double l = 0;
  double u = 0;

  bool operator==(const GhostOverride&) const = default;
};

struct PoolingInstance {
  std::vector<Source> sources;
  std::vector<Pool> pools;
  std::vector<Terminal> terminals;
  std::vector<Arc> arcs;
  std::vector<GhostOverride> ghost_overrides;
  std::string objective = "min_cost";

  bool operator==(const PoolingInstance&) const = default;
};

using NodePair = std::pair<std::string, std::string>;

// Members are sorted. Sources have S = {s}; terminals have T = {t}.
struct ReachSets {
  std::map<std::string, std::vector<std::string>> S;
  std::map<std::string, std::vector<std::string>> T;
  std::map<std::string, std::vector<std::string>> out;
  std::map<std::string, std::vector<std::string>> in;
};

struct Interval {
  double l = 0;
  double u = 0;
};

// source_side: (s, i) with i a pool, s in S_i and (s, i) not an arc.
// terminal_side: (j, t) with j a pool, t in T_j and (j, t) not an arc.
struct GhostBounds {
  std::map<NodePair, Interval> source_side;
  std::map<NodePair, Interval> terminal_side;
};

ReachSets compute_reach(const PoolingInstance& inst);
GhostBounds default_ghost_bounds(const PoolingInstance& inst, const ReachSets& reach);
// Defaults with the instance's ghost_overrides applied.
GhostBounds ghost_bounds(const PoolingInstance& inst, const ReachSets& reach);

// Sorted union of the spec keys used by sources.
std::vector<std::string> spec_keys(const PoolingInstance& inst);

// Throws ValidationError listing every violated invariant; returns warnings.
std::vector<std::string> validate(const PoolingInstance& inst);

PoolingInstance from_json_text(const std::string& text);
std::string to_json_text(const PoolingInstance& inst);
PoolingInstance load(const std::string& path);
void save(const PoolingInstance& inst, const std::string& path);

// Indexed read-only view of a validated instance.
class Network {
 public:
  explicit Network(PoolingInstance inst);

  const PoolingInstance& instance() const { return inst_; }
  const ReachSets& reach() const { return reach_; }
  const GhostBounds& ghosts() const { return ghosts_; }
  const std::vector<std::string>& specs() const { return specs_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const std::vector<std::string>& sources() const { return sources_; }
  const std::vector<std::string>& pools() const { return pools_; }
  const std::vector<std::string>& terminals() const { return terminals_; }
  // Arcs sorted by (from, to).
  const std::vector<NodePair>& arcs() const { return arc_keys_; }

  NodeKind kind(const std::string& id) const;
  bool is_pool(const std::string& id) const { return kind(id) == NodeKind::Pool; }
  double U(const std::string& id) const;
  double L(const std::string& id) const;
  bool has_arc(const std::string& from, const std::string& to) const;
  const Arc& arc(const std::string& from, const std::string& to) const;
  const Source& source(const std::string& id) const;
  const Terminal& terminal(const std::string& id) const;

  const std::vector<std::string>& S(const std::string& id) const { return reach_.S.at(id); }
  const std::vector<std::string>& T(const std::string& id) const { return reach_.T.at(id); }
  const std::vector<std::string>& out(const std::string& id) const { return reach_.out.at(id); }
  const std::vector<std::string>& in(const std::string& id) const { return reach_.in.at(id); }
  bool no_pool_to_pool_arcs() const;

 private:
  PoolingInstance inst_;
  ReachSets reach_;
  GhostBounds ghosts_;
  std::vector<std::string> specs_, warnings_;
  std::vector<std::string> sources_, pools_, terminals_;
  std::vector<NodePair> arc_keys_;
  std::map<std::string, std::pair<NodeKind, std::size_t>> nodes_;
  std::map<NodePair, std::size_t> arc_index_;
};

// Distributions are uniform on the given ranges; values are rounded to
// multiples of 0.5 so that instances print compactly.
struct GeneratorParams {
  int nS = 3;
  int nI = 2;
  int nT = 2;
  double density_si = 0.6;  // source -> pool
  double density_ii = 0.4;  // pool -> higher-index pool
  double density_it = 0.6;  // pool -> terminal
  double density_st = 0.0;  // source -> terminal
  int K = 1;
  double U_lo = 50, U_hi = 150;
  // Arc capacity as a fraction of min(U_from, U_to).
  double arc_u_frac_lo = 0.3, arc_u_frac_hi = 1.0;
  // Chance that a terminal has a demand L = demand_frac * U.
  double demand_prob = 0.0, demand_frac = 0.3;
  double lambda_lo = 0, lambda_hi = 10;
  double mu_hi_lo = 3, mu_hi_hi = 7;
  double mu_lo_prob = 0.25;  // chance that a terminal also has a lower limit
  double source_cost_lo = 1, source_cost_hi = 10;
  double price_lo = 8, price_hi = 20;
};

PoolingInstance generate_random(const GeneratorParams& params, std::uint64_t seed);

}  // namespace rankone::pooling
