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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"
#include "rankone/cutloop.hpp"
#include "rankone/errors.hpp"
#include "rankone/formulate.hpp"
#include "rankone/solver.hpp"

namespace rankone::cli {

namespace {

formulate::Tag require_tag(const std::string& name) {
  auto tag = formulate::parse_tag(name);
  if (!tag) throw ParamError("unknown formulation tag '" + name + "'");
  return *tag;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << text;
}

// JSON cannot hold infinities; they are written as strings.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

model::LinearModel build_model(const ModelArgs& args, const pooling::Network& net) {
  formulate::BuildOptions o;
  o.H = args.H;
  o.size_guard = args.size_guard;
  return formulate::build(net, require_tag(args.tag), o);
}

}  // namespace

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream&) {
  auto inst = pooling::generate_random(args.params, args.seed);
  write_text(args.out, pooling::to_json_text(inst), out);
  return 0;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    auto inst = pooling::load(path);
    for (const auto& w : pooling::validate(inst)) out << "warning: " << w << '\n';
    out << "ok: " << inst.sources.size() << " sources, " << inst.pools.size() << " pools, "
        << inst.terminals.size() << " terminals, " << inst.arcs.size() << " arcs\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }
}

int cmd_build(const ModelArgs& args, std::ostream& out, std::ostream&) {
  pooling::Network net(pooling::load(args.path));
  auto m = build_model(args, net);
  if (args.out.empty()) {
    out << m.to_lp_text();
  } else if (std::filesystem::path(args.out).extension() == ".mps") {
    solver::export_mps(m, args.out);
  } else {
    solver::export_lp_text(m, args.out);
  }
  return 0;
}

int cmd_solve(const ModelArgs& args, std::ostream& out, std::ostream&) {
  pooling::Network net(pooling::load(args.path));
  auto m = build_model(args, net);
  solver::SolverConfig cfg;
  cfg.time_limit = args.time_limit;
  auto r = solver::solve(m, cfg);
  nlohmann::json doc;
  doc["tag"] = formulate::tag_name(require_tag(args.tag));
  if (formulate::needs_H(require_tag(args.tag))) doc["H"] = args.H;
  doc["status"] = solver::status_name(r.status);
  doc["objective"] = number(r.objective);
  doc["dual_bound"] = number(r.dual_bound);
  doc["gap"] = number(r.gap);
  doc["iterations"] = r.iterations;
  doc["nodes"] = r.nodes;
  doc["wall_time"] = r.wall_time;
  doc["variables"] = m.num_vars();
  doc["constraints"] = m.num_constraints();
  doc["binaries"] = m.num_binaries();
  nlohmann::json primal = nlohmann::json::object();
  if (!r.x.empty())
    for (std::size_t j = 0; j < m.num_vars(); ++j) primal[m.vars()[j].name] = r.x[j];
  doc["primal"] = std::move(primal);
  write_text(args.out, doc.dump(2) + "\n", out);
  return r.status == solver::Status::Optimal || r.status == solver::Status::Limit ? 0 : 2;
}

int cmd_cuts(const CutsArgs& args, std::ostream& out, std::ostream& err) {
  pooling::Network net(pooling::load(args.path));
  cutloop::CutLoopOptions o;
  o.base = args.base;
  o.families = cutloop::parse_families(args.families);
  o.max_rounds = args.rounds;
  auto rep = cutloop::run_cut_loop(net, o);
  write_text(args.out, cutloop::to_csv(rep), out);
  err << "final " << rep.final_value << (rep.converged ? " (converged)" : " (not converged)");
  if (rep.target_value) err << ", extended LP " << *rep.target_value;
  err << ", " << rep.total_cuts << " cuts\n";
  return 0;
}

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream&) {
  write_text(args.out, experiment_csv(run_experiment(args)), out);
  return 0;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rank-1 hull toolkit and generalized pooling relaxations"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a random pooling instance");
  g->add_option("--nS", gen.params.nS, "number of sources");
  g->add_option("--nI", gen.params.nI, "number of pools");
  g->add_option("--nT", gen.params.nT, "number of terminals");
  g->add_option("--density-si", gen.params.density_si, "source-pool arc density");
  g->add_option("--density-ii", gen.params.density_ii, "pool-pool arc density");
  g->add_option("--density-it", gen.params.density_it, "pool-terminal arc density");
  g->add_option("--density-st", gen.params.density_st, "source-terminal arc density");
  g->add_option("--K", gen.params.K, "number of specifications");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--out", gen.out, "output file (default stdout)");

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "check an instance file");
  v->add_option("path", validate_path)->required();

  ModelArgs build;
  auto* b = app.add_subcommand("build", "build a formulation and export it");
  b->add_option("path", build.path)->required();
  b->add_option("--tag", build.tag, "formulation tag, e.g. F2S^F1T or M1S");
  b->add_option("--H", build.H, "discretization level");
  b->add_option("--size-guard", build.size_guard, "variable limit for F1ST");
  b->add_option("--out", build.out, "output .mps or .lp (default LP text on stdout)");

  ModelArgs solve;
  auto* s = app.add_subcommand("solve", "build and solve a formulation");
  s->add_option("path", solve.path)->required();
  s->add_option("--tag", solve.tag, "formulation tag");
  s->add_option("--H", solve.H, "discretization level");
  s->add_option("--time-limit", solve.time_limit, "seconds");
  s->add_option("--size-guard", solve.size_guard, "variable limit for F1ST");
  s->add_option("--out", solve.out, "JSON output file (default stdout)");

  CutsArgs cuts;
  std::string base = "S";
  auto* c = app.add_subcommand("cuts", "run the cutting-plane loop");
  c->add_option("path", cuts.path)->required();
  c->add_option("--base", base, "S or T")->check(CLI::IsMember({"S", "T"}));
  c->add_option("--families", cuts.families, "rowconv,rowplusconv,ratio or all");
  c->add_option("--rounds", cuts.rounds, "maximum rounds");
  c->add_option("--out", cuts.out, "CSV output file (default stdout)");

  VerifyArgs verify;
  auto* h = app.add_subcommand("verify-hull", "run the hull verification suite");
  h->add_option("n1", verify.n1)->check(CLI::Range(1, 4));
  h->add_option("n2", verify.n2)->check(CLI::Range(1, 4));
  h->add_option("trials", verify.trials);
  h->add_option("SEED", verify.seed, "random seed (same as --seed)");
  h->add_option("--seed", verify.seed, "random seed");

  ExperimentArgs exp;
  auto* e = app.add_subcommand("experiment", "run a batch of methods over a directory of instances");
  e->add_option("dir", exp.dir)->required();
  e->add_option("--methods", exp.methods, "light-lp,medium-lp,heavy-lp,milp-H,primal-H");
  e->add_option("--H", exp.H, "discretization level");
  e->add_option("--time-limit", exp.time_limit, "seconds per MILP");
  e->add_option("--workers", exp.workers, "parallel instances")->check(CLI::PositiveNumber);
  e->add_option("--size-guard", exp.size_guard, "variable limit for F1ST");
  e->add_option("--out", exp.out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err);
  }

  try {
    if (*g) return cmd_gen(gen, out, err);
    if (*v) return cmd_validate(validate_path, out, err);
    if (*b) return cmd_build(build, out, err);
    if (*s) return cmd_solve(solve, out, err);
    if (*c) {
      cuts.base = base[0];
      return cmd_cuts(cuts, out, err);
    }
    if (*h) return cmd_verify_hull(verify, out, err);
    if (*e) return cmd_experiment(exp, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace rankone::cli
