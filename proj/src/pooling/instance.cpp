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
#include <cmath>
#include <functional>
#include <set>

#include "rankone/errors.hpp"
#include "rankone/pooling.hpp"

namespace rankone::pooling {

namespace {

struct NodeInfo {
  NodeKind kind;
  double U;
};

std::map<std::string, NodeInfo> node_table(const PoolingInstance& inst) {
  std::map<std::string, NodeInfo> t;
  for (const auto& s : inst.sources) t.emplace(s.id, NodeInfo{NodeKind::Source, s.U});
  for (const auto& p : inst.pools) t.emplace(p.id, NodeInfo{NodeKind::Pool, p.U});
  for (const auto& x : inst.terminals) t.emplace(x.id, NodeInfo{NodeKind::Terminal, x.U});
  return t;
}

std::vector<std::string> sorted_unique(std::set<std::string> s) { return {s.begin(), s.end()}; }

void collect(const std::map<std::string, std::vector<std::string>>& adj, const std::string& start,
             std::set<std::string>& seen) {
  std::vector<std::string> stack{start};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (const auto& w : it->second)
      if (seen.insert(w).second) stack.push_back(w);
  }
}

std::string arc_name(const std::string& a, const std::string& b) { return "(" + a + ", " + b + ")"; }

}  // namespace

ReachSets compute_reach(const PoolingInstance& inst) {
  ReachSets r;
  auto nodes = node_table(inst);
  for (const auto& [id, info] : nodes) {
    r.out[id];
    r.in[id];
  }
  for (const auto& a : inst.arcs) {
    r.out[a.from].push_back(a.to);
    r.in[a.to].push_back(a.from);
  }
  for (auto& [id, v] : r.out) std::sort(v.begin(), v.end());
  for (auto& [id, v] : r.in) std::sort(v.begin(), v.end());

  std::map<std::string, std::set<std::string>> S, T;
  for (const auto& [id, info] : nodes) {
    S[id];
    T[id];
  }
  for (const auto& s : inst.sources) {
    std::set<std::string> seen;
    collect(r.out, s.id, seen);
    S[s.id].insert(s.id);
    for (const auto& v : seen) S[v].insert(s.id);
  }
  for (const auto& t : inst.terminals) {
    std::set<std::string> seen;
    collect(r.in, t.id, seen);
    T[t.id].insert(t.id);
    for (const auto& v : seen) T[v].insert(t.id);
  }
  for (auto& [id, set] : S) r.S[id] = sorted_unique(std::move(set));
  for (auto& [id, set] : T) r.T[id] = sorted_unique(std::move(set));
  return r;
}

GhostBounds default_ghost_bounds(const PoolingInstance& inst, const ReachSets& reach) {
  auto nodes = node_table(inst);
  std::set<NodePair> arcs;
  for (const auto& a : inst.arcs) arcs.emplace(a.from, a.to);
  GhostBounds g;
  for (const auto& p : inst.pools) {
    for (const auto& s : reach.S.at(p.id))
      if (!arcs.count({s, p.id})) g.source_side[{s, p.id}] = {0.0, std::min(nodes.at(s).U, p.U)};
    for (const auto& t : reach.T.at(p.id))
      if (!arcs.count({p.id, t})) g.terminal_side[{p.id, t}] = {0.0, std::min(p.U, nodes.at(t).U)};
  }
  return g;
}

GhostBounds ghost_bounds(const PoolingInstance& inst, const ReachSets& reach) {
  auto g = default_ghost_bounds(inst, reach);
  for (const auto& o : inst.ghost_overrides) {
    NodePair key{o.from, o.to};
    if (auto it = g.source_side.find(key); it != g.source_side.end()) it->second = {o.l, o.u};
    else if (auto jt = g.terminal_side.find(key); jt != g.terminal_side.end()) jt->second = {o.l, o.u};
    else throw ValidationError({"ghost override " + arc_name(o.from, o.to) + " is not a ghost pair"});
  }
  return g;
}

std::vector<std::string> spec_keys(const PoolingInstance& inst) {
  std::set<std::string> keys;
  for (const auto& s : inst.sources)
    for (const auto& [k, v] : s.lambda) keys.insert(k);
  return sorted_unique(std::move(keys));
}

std::vector<std::string> validate(const PoolingInstance& inst) {
  std::vector<std::string> errs, warns;
  std::map<std::string, NodeInfo> nodes;
  auto add_node = [&](const std::string& id, NodeKind kind, double L, double U) {
    if (id.empty() || id.find_first_of(" \t\n,[]:") != std::string::npos)
      errs.push_back("invalid node id '" + id + "'");
    if (!nodes.emplace(id, NodeInfo{kind, U}).second) errs.push_back("duplicate node id '" + id + "'");
    if (!(std::isfinite(U) && std::isfinite(L))) errs.push_back("node " + id + ": bounds must be finite");
    if (L < 0) errs.push_back("node " + id + ": L < 0");
    if (L > U) errs.push_back("node " + id + ": L > U");
  };
  for (const auto& s : inst.sources) add_node(s.id, NodeKind::Source, s.L, s.U);
  for (const auto& p : inst.pools) add_node(p.id, NodeKind::Pool, p.L, p.U);
  for (const auto& t : inst.terminals) add_node(t.id, NodeKind::Terminal, t.L, t.U);
  if (inst.objective != "min_cost") errs.push_back("unsupported objective '" + inst.objective + "'");

  auto keys = spec_keys(inst);
  for (const auto& s : inst.sources) {
    if (s.lambda.size() != keys.size()) errs.push_back("source " + s.id + ": lambda must define every spec");
    for (const auto& [k, v] : s.lambda)
      if (!std::isfinite(v)) errs.push_back("source " + s.id + ": lambda[" + k + "] not finite");
    if (s.out_cost && !std::isfinite(*s.out_cost)) errs.push_back("source " + s.id + ": out_cost not finite");
  }
  for (const auto& t : inst.terminals) {
    for (const auto* m : {&t.mu_lo, &t.mu_hi})
      for (const auto& [k, v] : *m)
        if (!std::binary_search(keys.begin(), keys.end(), k))
          errs.push_back("terminal " + t.id + ": unknown spec '" + k + "'");
    for (const auto& [k, lo] : t.mu_lo) {
      auto it = t.mu_hi.find(k);
      if (it != t.mu_hi.end() && lo > it->second)
        errs.push_back("terminal " + t.id + ": spec window for '" + k + "' is empty");
    }
  }

  std::set<NodePair> seen;
  for (const auto& a : inst.arcs) {
    const auto name = arc_name(a.from, a.to);
    auto f = nodes.find(a.from), t = nodes.find(a.to);
    if (f == nodes.end() || t == nodes.end()) {
      errs.push_back("arc " + name + ": unknown endpoint");
      continue;
    }
    if (a.from == a.to) errs.push_back("arc " + name + ": self-loop");
    if (f->second.kind == NodeKind::Terminal || t->second.kind == NodeKind::Source)
      errs.push_back("arc " + name + ": arc pattern must be source/pool -> pool/terminal");
    if (!seen.insert({a.from, a.to}).second) errs.push_back("arc " + name + ": duplicate");
    if (!(std::isfinite(a.l) && std::isfinite(a.u) && std::isfinite(a.cost)))
      errs.push_back("arc " + name + ": values must be finite");
    if (a.l < 0) errs.push_back("arc " + name + ": l < 0");
    if (a.l > a.u) errs.push_back("arc " + name + ": l > u");
  }

  // Pool subgraph must be acyclic (iterative three-colour DFS).
  std::map<std::string, std::vector<std::string>> pool_adj;
  for (const auto& a : inst.arcs) {
    auto f = nodes.find(a.from), t = nodes.find(a.to);
    if (f != nodes.end() && t != nodes.end() && f->second.kind == NodeKind::Pool &&
        t->second.kind == NodeKind::Pool)
      pool_adj[a.from].push_back(a.to);
  }
  std::map<std::string, int> colour;
  bool cyclic = false;
  std::function<void(const std::string&)> dfs = [&](const std::string& v) {
    colour[v] = 1;
    for (const auto& w : pool_adj[v]) {
      if (colour[w] == 1) cyclic = true;
      else if (colour[w] == 0) dfs(w);
    }
    colour[v] = 2;
  };
  for (const auto& p : inst.pools)
    if (colour[p.id] == 0) dfs(p.id);
  if (cyclic) errs.push_back("pool-to-pool arcs contain a cycle (acyclicity)");

  if (!errs.empty()) throw ValidationError(errs);

  auto reach = compute_reach(inst);
  for (const auto& o : inst.ghost_overrides) {
    if (o.l < 0 || o.l > o.u || !std::isfinite(o.u))
      errs.push_back("ghost override " + arc_name(o.from, o.to) + ": need 0 <= l <= u < inf");
  }
  if (!errs.empty()) throw ValidationError(errs);
  ghost_bounds(inst, reach);  // throws on overrides naming non-ghost pairs

  for (const auto& t : inst.terminals) {
    const auto& S = reach.S.at(t.id);
    if (S.empty()) {
      warns.push_back("terminal " + t.id + " is unreachable from every source");
      continue;
    }
    for (const auto& k : keys) {
      double lo_q = INFINITY, hi_q = -INFINITY;
      for (const auto& s : inst.sources)
        if (std::binary_search(S.begin(), S.end(), s.id)) {
          lo_q = std::min(lo_q, s.lambda.at(k));
          hi_q = std::max(hi_q, s.lambda.at(k));
        }
      auto lo = t.mu_lo.find(k);
      auto hi = t.mu_hi.find(k);
      if ((lo != t.mu_lo.end() && hi_q < lo->second) || (hi != t.mu_hi.end() && lo_q > hi->second))
        warns.push_back("terminal " + t.id + ": no blend of reachable sources meets spec '" + k + "'");
    }
  }
  for (const auto& p : inst.pools) {
    if (reach.in.at(p.id).empty()) warns.push_back("pool " + p.id + " has no incoming arc");
    if (reach.out.at(p.id).empty()) warns.push_back("pool " + p.id + " has no outgoing arc");
  }
  return warns;
}

Network::Network(PoolingInstance inst) : inst_(std::move(inst)) {
  warnings_ = validate(inst_);
  reach_ = compute_reach(inst_);
  ghosts_ = ghost_bounds(inst_, reach_);
  specs_ = spec_keys(inst_);
  for (std::size_t k = 0; k < inst_.sources.size(); ++k) {
    sources_.push_back(inst_.sources[k].id);
    nodes_[inst_.sources[k].id] = {NodeKind::Source, k};
  }
  for (std::size_t k = 0; k < inst_.pools.size(); ++k) {
    pools_.push_back(inst_.pools[k].id);
    nodes_[inst_.pools[k].id] = {NodeKind::Pool, k};
  }
  for (std::size_t k = 0; k < inst_.terminals.size(); ++k) {
    terminals_.push_back(inst_.terminals[k].id);
    nodes_[inst_.terminals[k].id] = {NodeKind::Terminal, k};
  }
  std::sort(sources_.begin(), sources_.end());
  std::sort(pools_.begin(), pools_.end());
  std::sort(terminals_.begin(), terminals_.end());
  for (std::size_t k = 0; k < inst_.arcs.size(); ++k) arc_index_[{inst_.arcs[k].from, inst_.arcs[k].to}] = k;
  for (const auto& [key, k] : arc_index_) arc_keys_.push_back(key);
}

NodeKind Network::kind(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw OutOfRange("unknown node '" + id + "'");
  return it->second.first;
}

double Network::U(const std::string& id) const {
  const auto& [k, idx] = nodes_.at(id);
  if (k == NodeKind::Source) return inst_.sources[idx].U;
  if (k == NodeKind::Pool) return inst_.pools[idx].U;
  return inst_.terminals[idx].U;
}

double Network::L(const std::string& id) const {
  const auto& [k, idx] = nodes_.at(id);
  if (k == NodeKind::Source) return inst_.sources[idx].L;
  if (k == NodeKind::Pool) return inst_.pools[idx].L;
  return inst_.terminals[idx].L;
}

bool Network::has_arc(const std::string& from, const std::string& to) const {
  return arc_index_.count({from, to}) > 0;
}

const Arc& Network::arc(const std::string& from, const std::string& to) const {
  auto it = arc_index_.find({from, to});
  if (it == arc_index_.end()) throw OutOfRange("no arc " + arc_name(from, to));
  return inst_.arcs[it->second];
}

const Source& Network::source(const std::string& id) const {
  const auto& [k, idx] = nodes_.at(id);
  if (k != NodeKind::Source) throw OutOfRange(id + " is not a source");
  return inst_.sources[idx];
}

const Terminal& Network::terminal(const std::string& id) const {
  const auto& [k, idx] = nodes_.at(id);
  if (k != NodeKind::Terminal) throw OutOfRange(id + " is not a terminal");
  return inst_.terminals[idx];
}

bool Network::no_pool_to_pool_arcs() const {
  for (const auto& [from, to] : arc_keys_)
    if (is_pool(from) && is_pool(to)) return false;
  return true;
}

}  // namespace rankone::pooling
