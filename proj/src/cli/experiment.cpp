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
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "rankone/errors.hpp"
#include "rankone/formulate.hpp"
#include "rankone/solver.hpp"

namespace rankone::cli {

namespace {

using formulate::Tag;

std::vector<Tag> method_tags(const std::string& set) {
  if (set == "light-lp") return {Tag::F1S, Tag::F2S, Tag::F1T, Tag::F2T};
  if (set == "medium-lp") return {Tag::F1S_F1T, Tag::F2S_F1T, Tag::F1S_F2T, Tag::F2S_F2T};
  if (set == "heavy-lp") return {Tag::F1ST};
  if (set == "milp-H") return {Tag::M1S, Tag::M2S, Tag::M3S, Tag::M1T, Tag::M2T, Tag::M3T};
  if (set == "primal-H") return {Tag::G1S, Tag::G2S, Tag::G1T, Tag::G2T};
  throw ParamError("unknown method set '" + set + "'");
}

std::vector<Tag> parse_methods(const std::string& list) {
  std::vector<Tag> tags;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    for (Tag t : method_tags(item))
      if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
  }
  return tags;
}

bool is_restriction(Tag t) { return t == Tag::G1S || t == Tag::G2S || t == Tag::G1T || t == Tag::G2T; }

struct Outcome {
  double dual = -model::kInf;
  double primal = model::kInf;
  double wall = 0;
  std::string status;
};

Outcome run_one(const pooling::Network& net, Tag tag, const ExperimentArgs& args) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    formulate::BuildOptions bo;
    bo.H = args.H;
    bo.size_guard = args.size_guard;
    auto m = formulate::build(net, tag, bo);
    solver::SolverConfig cfg;
    cfg.time_limit = args.time_limit;
    auto res = solver::solve(m, cfg);
    o.status = solver::status_name(res.status);
    if (res.status == solver::Status::Optimal) {
      o.dual = m.num_binaries() > 0 && std::isfinite(res.dual_bound) ? res.dual_bound : res.objective;
      o.primal = res.objective;
    } else {
      o.dual = res.dual_bound;
      o.primal = res.objective;
    }
  } catch (const SizeGuardExceeded& e) {
    o.status = "skipped (size guard)";
  } catch (const std::exception& e) {
    o.status = std::string("error: ") + e.what();
  }
  o.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::replace(o.status.begin(), o.status.end(), ',', ';');
  std::replace(o.status.begin(), o.status.end(), '\n', ' ');
  return o;
}

std::vector<ExperimentRow> run_instance(const std::filesystem::path& file, const std::vector<Tag>& tags,
                                        const ExperimentArgs& args) {
  const std::string id = file.stem().string();
  std::vector<ExperimentRow> rows;
  std::unique_ptr<pooling::Network> net;
  try {
    net = std::make_unique<pooling::Network>(pooling::load(file.string()));
  } catch (const std::exception& e) {
    std::string what = std::string("invalid: ") + e.what();
    std::replace(what.begin(), what.end(), ',', ';');
    std::replace(what.begin(), what.end(), '\n', ' ');
    for (Tag t : tags)
      rows.push_back({id, formulate::tag_name(t), -model::kInf, model::kInf, model::kInf, 0.0, what});
    return rows;
  }

  // The primal bound is the best restriction value, whether or not the
  // restriction rows are reported.
  std::map<Tag, Outcome> restrictions;
  double primal = model::kInf;
  for (Tag t : {Tag::G1S, Tag::G2S, Tag::G1T, Tag::G2T}) {
    restrictions[t] = run_one(*net, t, args);
    primal = std::min(primal, restrictions[t].primal);
  }
  for (Tag t : tags) {
    const Outcome o = is_restriction(t) ? restrictions[t] : run_one(*net, t, args);
    ExperimentRow r{id, formulate::tag_name(t), o.dual, primal, model::kInf, o.wall, o.status};
    if (is_restriction(t)) {
      r.primal_bound = o.primal;
      if (std::isfinite(o.primal) && std::isfinite(o.dual)) r.gap_pct = formulate::gap_percent(o.primal, o.dual);
    } else if (std::isfinite(primal) && std::isfinite(o.dual)) {
      r.gap_pct = formulate::gap_percent(primal, o.dual);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentArgs& args) {
  const auto tags = parse_methods(args.methods);
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(args.dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<std::vector<ExperimentRow>> per_file(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < files.size();) per_file[k] = run_instance(files[k], tags, args);
  };
  const auto n = static_cast<std::size_t>(std::max(1, args.workers));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(n, files.size()); ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<ExperimentRow> rows;
  for (auto& v : per_file) rows.insert(rows.end(), v.begin(), v.end());
  for (Tag t : tags) {
    const std::string name = formulate::tag_name(t);
    ExperimentRow avg{"average", name, 0, 0, 0, 0, ""};
    std::size_t count = 0;
    for (std::size_t k = 0; k < files.size(); ++k) {
      for (const auto& r : per_file[k]) {
        if (r.method != name || !std::isfinite(r.gap_pct)) continue;
        avg.dual_bound += r.dual_bound;
        avg.primal_bound += r.primal_bound;
        avg.gap_pct += r.gap_pct;
        avg.wall_time += r.wall_time;
        ++count;
      }
    }
    if (count == 0) {
      avg = {"average", name, -model::kInf, model::kInf, model::kInf, 0, "n=0"};
    } else {
      const double c = static_cast<double>(count);
      avg.dual_bound /= c;
      avg.primal_bound /= c;
      avg.gap_pct /= c;
      avg.wall_time /= c;
      avg.status = "n=" + std::to_string(count);
    }
    rows.push_back(std::move(avg));
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << "instance,method,dual_bound,primal_bound,gap_pct,wall_time,status\n";
  for (const auto& r : rows) {
    os << r.instance << ',' << r.method << ',' << fmt(r.dual_bound) << ',' << fmt(r.primal_bound) << ','
       << fmt(r.gap_pct) << ',' << fmt(r.wall_time) << ',' << r.status << '\n';
  }
  return os.str();
}

}  // namespace rankone::cli
