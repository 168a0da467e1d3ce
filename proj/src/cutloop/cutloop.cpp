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
#include <set>
#include <sstream>

#include "rankone/cutloop.hpp"
#include "rankone/errors.hpp"

namespace rankone::cutloop {

using formulate::PoolBlock;
using model::LinearModel;

namespace {

hull::RowColBoundsD block_bounds(const PoolBlock& b, Orientation o, bool plus) {
  hull::RowColBoundsD out;
  out.n1 = b.rows.size();
  out.n2 = b.cols.size();
  out.l = o == Orientation::Row ? b.row_l : b.col_l;
  out.u = o == Orientation::Row ? b.row_u : b.col_u;
  if (plus) {
    out.agg_L = b.L;
    out.agg_U = b.U;
  }
  return out;
}

hull::RowColBounds exact(const hull::RowColBoundsD& b) {
  hull::RowColBounds r;
  r.n1 = b.n1;
  r.n2 = b.n2;
  for (double v : b.l) r.l.push_back(from_double(v));
  for (double v : b.u) r.u.push_back(from_double(v));
  if (b.agg_U) {
    r.agg_L = from_double(b.L());
    r.agg_U = from_double(*b.agg_U);
  }
  return r;
}

template <class T>
void add_cut(LinearModel& m, const PoolBlock& b, const hull::BasicCut<T>& cut, const std::string& name) {
  std::vector<std::pair<std::string, double>> terms;
  for (const auto& [ij, c] : cut.coeffs) {
    double v;
    if constexpr (std::is_same_v<T, double>) v = c;
    else v = c.get_d();
    terms.emplace_back(b.w[ij.first][ij.second], v);
  }
  double rhs;
  if constexpr (std::is_same_v<T, double>) rhs = cut.rhs;
  else rhs = cut.rhs.get_d();
  m.add_constraint(name, terms, cut.sense == hull::Sense::LessEq ? model::Sense::LessEq : model::Sense::GreaterEq,
                   rhs);
}

std::vector<PoolBlock> blocks_for(const pooling::Network& net, char base) {
  if (base == 'S') return formulate::source_blocks(net);
  if (base == 'T') return formulate::terminal_blocks(net);
  throw ParamError("cut loop base must be S or T");
}

struct Candidate {
  double violation;
  std::size_t block;
  std::string key;
  hull::CutInequalityD cut;
};

}  // namespace

unsigned parse_families(const std::string& text) {
  if (text == "all") return kAllFamilies;
  unsigned bits = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "rowconv") bits |= kRowConv;
    else if (item == "rowplusconv") bits |= kRowPlusConv;
    else if (item == "ratio") bits |= kRatio;
    else throw ParamError("unknown cut family '" + item + "'");
  }
  if (bits == 0) throw ParamError("no cut family selected");
  return bits;
}

LinearModel projected_base(const pooling::Network& net, char base, unsigned families) {
  LinearModel m = base == 'S' ? formulate::build_flow_source(net) : formulate::build_flow_terminal(net);
  const bool plus = (families & kRowPlusConv) != 0;
  for (const auto& b : blocks_for(net, base)) {
    for (Orientation o : {Orientation::Row, Orientation::Col}) {
      const auto eb = exact(block_bounds(b, o, plus));
      const auto cuts = o == Orientation::Row ? hull::polynomial_inequalities_row(eb)
                                              : hull::polynomial_inequalities_col(eb);
      std::size_t k = 0;
      const std::string stem = std::string(o == Orientation::Row ? "static_row[" : "static_col[") + b.pool + "].";
      for (const auto& c : cuts) {
        const bool ratio = c.family == hull::Family::Ratio || c.family == hull::Family::AggRatio;
        if (c.family == hull::Family::NonNeg) continue;
        if (ratio && !(families & kRatio)) continue;
        add_cut(m, b, c, stem + std::to_string(k++));
      }
    }
  }
  return m;
}

CutLoopReport run_cut_loop(const pooling::Network& net, const CutLoopOptions& opts) {
  CutLoopReport rep;
  const auto blocks = blocks_for(net, opts.base);
  LinearModel m = projected_base(net, opts.base, opts.families);
  if (opts.compute_target) {
    auto ext = formulate::build(net, opts.base == 'S' ? formulate::Tag::F2S : formulate::Tag::F2T);
    auto r = solver::solve_lp(ext, opts.solver);
    if (r.status == solver::Status::Optimal) rep.target_value = r.objective;
  }

  std::vector<bool> variants;  // plus flag per oracle
  if (opts.families & kRowConv) variants.push_back(false);
  if (opts.families & kRowPlusConv) variants.push_back(true);

  auto r = solver::solve_lp(m, opts.solver);
  rep.status = r.status;
  if (r.status != solver::Status::Optimal) return rep;
  rep.final_value = r.objective;
  std::size_t counter = 0;

  for (int round = 0; round < opts.max_rounds; ++round) {
    std::vector<Candidate> found;
    std::set<std::string> seen;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      Matrix<double> w(b.rows.size(), b.cols.size());
      for (std::size_t i = 0; i < b.rows.size(); ++i)
        for (std::size_t j = 0; j < b.cols.size(); ++j) w(i, j) = r.x[m.var(b.w[i][j])];
      for (Orientation o : {Orientation::Row, Orientation::Col}) {
        for (bool plus : variants) {
          const auto bounds = block_bounds(b, o, plus);
          for (hull::Side side : {hull::Side::Upper, hull::Side::Lower}) {
            std::optional<hull::Separation<double>> sep;
            try {
              if (o == Orientation::Row)
                sep = plus ? hull::separate_rowplus(w, bounds, side) : hull::separate_row(w, bounds, side);
              else
                sep = plus ? hull::separate_colplus(w, bounds, side) : hull::separate_col(w, bounds, side);
            } catch (const NoLowerBounds&) {
              continue;
            }
            if (opts.on_separation)
              opts.on_separation(SeparationEvent{&b, o, plus, side, &w, &bounds, &sep});
            if (!sep || !(sep->violation > opts.tol_violation)) continue;
            auto key = b.pool + ":" + sep->cut.to_string();
            if (!seen.insert(key).second) continue;
            found.push_back({sep->violation, bi, std::move(key), sep->cut});
          }
        }
      }
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const Candidate& a, const Candidate& b) { return a.violation > b.violation; });
    if (found.size() > opts.cuts_per_round) found.resize(opts.cuts_per_round);

    Round rd;
    rd.index = round;
    rd.lp_value = r.objective;
    rd.cuts_added = found.size();
    rd.max_violation = found.empty() ? 0.0 : found.front().violation;
    rep.rounds.push_back(rd);
    if (found.empty()) {
      rep.converged = true;
      break;
    }
    for (const auto& c : found)
      add_cut(m, blocks[c.block], c.cut, "cut[" + blocks[c.block].pool + "]." + std::to_string(counter++));
    rep.total_cuts += found.size();

    r = solver::solve_lp(m, opts.solver);
    rep.status = r.status;
    if (r.status != solver::Status::Optimal) break;
    rep.final_value = r.objective;
  }
  return rep;
}

std::string to_csv(const CutLoopReport& report) {
  std::ostringstream out;
  out << "round,value,cuts,max_violation\n";
  out.precision(12);
  for (const auto& r : report.rounds)
    out << r.index << ',' << r.lp_value << ',' << r.cuts_added << ',' << r.max_violation << '\n';
  return out.str();
}

}  // namespace rankone::cutloop
