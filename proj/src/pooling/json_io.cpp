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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rankone/errors.hpp"
#include "rankone/pooling.hpp"

namespace rankone::pooling {

using nlohmann::json;

namespace {

class Reader {
 public:
  const json& field(const json& obj, const std::string& path, const char* key, bool required = true) {
    static const json null_value;
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) throw SchemaError(path + "/" + key, "missing required field");
      return null_value;
    }
    return *it;
  }

  double number(const json& obj, const std::string& path, const char* key,
                std::optional<double> fallback = std::nullopt) {
    const json& v = field(obj, path, key, !fallback.has_value());
    if (v.is_null()) return *fallback;
    if (!v.is_number()) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<double>();
  }

  std::string text(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  std::map<std::string, double> number_map(const json& obj, const std::string& path, const char* key,
                                           bool required) {
    const json& v = field(obj, path, key, required);
    std::map<std::string, double> out;
    if (v.is_null()) return out;
    if (!v.is_object()) throw SchemaError(path + "/" + key, "expected an object of numbers");
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!it.value().is_number()) throw SchemaError(path + "/" + key + "/" + it.key(), "expected a number");
      out[it.key()] = it.value().get<double>();
    }
    return out;
  }

  const json& array(const json& obj, const char* key, bool required = true) {
    static const json empty = json::array();
    const json& v = field(obj, "", key, required);
    if (v.is_null()) return empty;
    if (!v.is_array()) throw SchemaError(std::string("/") + key, "expected an array");
    return v;
  }
};

json number_map(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

}  // namespace

PoolingInstance from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  Reader r;
  PoolingInstance inst;
  if (!doc.is_object()) throw SchemaError("", "expected an object");

  const json& sources = r.array(doc, "sources");
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto path = "/sources/" + std::to_string(k);
    Source s;
    s.id = r.text(sources[k], path, "id");
    s.U = r.number(sources[k], path, "U");
    s.L = r.number(sources[k], path, "L", 0.0);
    s.lambda = r.number_map(sources[k], path, "lambda", false);
    if (sources[k].contains("out_cost")) s.out_cost = r.number(sources[k], path, "out_cost");
    inst.sources.push_back(std::move(s));
  }
  const json& pools = r.array(doc, "pools");
  for (std::size_t k = 0; k < pools.size(); ++k) {
    const auto path = "/pools/" + std::to_string(k);
    inst.pools.push_back({r.text(pools[k], path, "id"), r.number(pools[k], path, "U"),
                          r.number(pools[k], path, "L", 0.0)});
  }
  const json& terminals = r.array(doc, "terminals");
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    const auto path = "/terminals/" + std::to_string(k);
    Terminal t;
    t.id = r.text(terminals[k], path, "id");
    t.U = r.number(terminals[k], path, "U");
    t.L = r.number(terminals[k], path, "L", 0.0);
    t.mu_lo = r.number_map(terminals[k], path, "mu_lo", false);
    t.mu_hi = r.number_map(terminals[k], path, "mu_hi", false);
    inst.terminals.push_back(std::move(t));
  }
  const json& arcs = r.array(doc, "arcs");
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto path = "/arcs/" + std::to_string(k);
    inst.arcs.push_back({r.text(arcs[k], path, "from"), r.text(arcs[k], path, "to"),
                         r.number(arcs[k], path, "l", 0.0), r.number(arcs[k], path, "u"),
                         r.number(arcs[k], path, "cost", 0.0)});
  }
  const json& ghosts = r.array(doc, "ghost_overrides", false);
  for (std::size_t k = 0; k < ghosts.size(); ++k) {
    const auto path = "/ghost_overrides/" + std::to_string(k);
    inst.ghost_overrides.push_back({r.text(ghosts[k], path, "from"), r.text(ghosts[k], path, "to"),
                                    r.number(ghosts[k], path, "l", 0.0), r.number(ghosts[k], path, "u")});
  }
  if (doc.contains("objective")) inst.objective = r.text(doc, "", "objective");
  return inst;
}

std::string to_json_text(const PoolingInstance& inst) {
  json doc = json::object();
  doc["sources"] = json::array();
  for (const auto& s : inst.sources) {
    json o = {{"id", s.id}, {"U", s.U}, {"L", s.L}, {"lambda", number_map(s.lambda)}};
    if (s.out_cost) o["out_cost"] = *s.out_cost;
    doc["sources"].push_back(std::move(o));
  }
  doc["pools"] = json::array();
  for (const auto& p : inst.pools) doc["pools"].push_back({{"id", p.id}, {"U", p.U}, {"L", p.L}});
  doc["terminals"] = json::array();
  for (const auto& t : inst.terminals)
    doc["terminals"].push_back({{"id", t.id}, {"U", t.U}, {"L", t.L},
                                {"mu_lo", number_map(t.mu_lo)}, {"mu_hi", number_map(t.mu_hi)}});
  doc["arcs"] = json::array();
  for (const auto& a : inst.arcs)
    doc["arcs"].push_back({{"from", a.from}, {"to", a.to}, {"l", a.l}, {"u", a.u}, {"cost", a.cost}});
  doc["ghost_overrides"] = json::array();
  for (const auto& g : inst.ghost_overrides)
    doc["ghost_overrides"].push_back({{"from", g.from}, {"to", g.to}, {"l", g.l}, {"u", g.u}});
  doc["objective"] = inst.objective;
  return doc.dump(2) + "\n";
}

PoolingInstance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto inst = from_json_text(ss.str());
  validate(inst);
  return inst;
}

void save(const PoolingInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json_text(inst);
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace rankone::pooling
