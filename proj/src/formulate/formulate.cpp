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

#include "rankone/discretize.hpp"
#include "rankone/errors.hpp"
#include "rankone/formulate.hpp"
#include "rankone/hull.hpp"

namespace rankone::formulate {

using model::LinearModel;
using model::Sense;
using pooling::Network;
using Terms = std::vector<std::pair<std::string, double>>;

namespace {

std::string pair(const std::string& a, const std::string& b) { return "[" + a + "," + b + "]"; }
std::string f_name(const std::string& a, const std::string& b) { return "f" + pair(a, b); }
std::string g_name(const std::string& a, const std::string& b) { return "g" + pair(a, b); }
std::string xs_name(const std::string& s, const std::string& i, const std::string& j) {
  return "xs[" + s + "]" + pair(i, j);
}
std::string xt_name(const std::string& t, const std::string& i, const std::string& j) {
  return "xt[" + t + "]" + pair(i, j);
}
std::string xst_name(const std::string& s, const std::string& t, const std::string& i, const std::string& j) {
  return "xst" + pair(s, t) + pair(i, j);
}
std::string q_name(const std::string& i, const std::string& s) { return "q[" + i + "][" + s + "]"; }
std::string qt_name(const std::string& j, const std::string& t) { return "qt[" + j + "][" + t + "]"; }
std::string qst_name(const std::string& i, const std::string& j, const std::string& s, const std::string& t) {
  return "qst" + pair(i, j) + pair(s, t);
}

bool contains(const std::vector<std::string>& sorted, const std::string& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

struct Throughput {
  std::string var;
  double l = 0;
  double u = 0;
  bool is_arc = false;  // the throughput is the real arc flow itself
};

// Matrix of one pool: W(r, c) names, row and column sum bounds, aggregate.
struct PoolMatrix {
  std::string pool;
  std::vector<std::string> rows, cols;
  std::function<std::string(std::size_t, std::size_t)> w;
  std::vector<pooling::Interval> row_b, col_b;
  double L = 0, U = 0;

  bool empty() const { return rows.empty() || cols.empty(); }
};

enum class Orient { Row, Col };

class Builder {
 public:
  explicit Builder(const Network& net) : net_(net) {}

  LinearModel take() { return std::move(m_); }
  const LinearModel& model() const { return m_; }

  void core() {
    for (const auto& [from, to] : net_.arcs()) {
      const auto& a = net_.arc(from, to);
      const auto v = m_.add_var(f_name(from, to), a.l, a.u);
      double c = a.cost;
      if (net_.kind(from) == pooling::NodeKind::Source) c += net_.source(from).out_cost.value_or(0.0);
      m_.set_objective(v, c);
    }
    for (const auto& s : net_.sources()) {
      Terms out;
      for (const auto& j : net_.out(s)) out.push_back({f_name(s, j), 1.0});
      range("cap_out[" + s + "]", out, net_.L(s), net_.U(s));
    }
    for (const auto& i : net_.pools()) {
      Terms in, bal;
      for (const auto& k : net_.in(i)) in.push_back({f_name(k, i), 1.0});
      range("cap_in[" + i + "]", in, net_.L(i), net_.U(i));
      bal = in;
      for (const auto& j : net_.out(i)) bal.push_back({f_name(i, j), -1.0});
      m_.add_constraint("bal[" + i + "]", bal, Sense::Equal, 0.0);
    }
    for (const auto& t : net_.terminals()) {
      Terms in;
      for (const auto& k : net_.in(t)) in.push_back({f_name(k, t), 1.0});
      range("cap_in[" + t + "]", in, net_.L(t), net_.U(t));
    }
  }

  Throughput throughput_S(const std::string& s, const std::string& i) const {
    bool indirect = false;
    for (const auto& k : net_.in(i))
      if (net_.is_pool(k) && contains(net_.S(k), s)) indirect = true;
    if (!net_.has_arc(s, i)) {
      const auto& gb = net_.ghosts().source_side.at({s, i});
      return {f_name(s, i), gb.l, gb.u, false};
    }
    const auto& a = net_.arc(s, i);
    if (!indirect) return {f_name(s, i), a.l, a.u, true};
    return {g_name(s, i), a.l, std::max(a.l, std::min(net_.U(s), net_.U(i))), false};
  }

  Throughput throughput_T(const std::string& j, const std::string& t) const {
    bool indirect = false;
    for (const auto& k : net_.out(j))
      if (net_.is_pool(k) && contains(net_.T(k), t)) indirect = true;
    if (!net_.has_arc(j, t)) {
      const auto& gb = net_.ghosts().terminal_side.at({j, t});
      return {f_name(j, t), gb.l, gb.u, false};
    }
    const auto& a = net_.arc(j, t);
    if (!indirect) return {f_name(j, t), a.l, a.u, true};
    return {g_name(j, t), a.l, std::max(a.l, std::min(net_.U(j), net_.U(t))), false};
  }

  void source_flows() {
    for (const auto& i : net_.pools())
      for (const auto& s : net_.S(i))
        for (const auto& j : net_.out(i)) m_.add_var(xs_name(s, i, j), 0.0, model::kInf);
    for (const auto& i : net_.pools()) {
      for (const auto& s : net_.S(i)) {
        const auto thr = throughput_S(s, i);
        if (!m_.has_var(thr.var)) m_.add_var(thr.var, thr.l, thr.u);
        Terms out;
        for (const auto& j : net_.out(i)) out.push_back({xs_name(s, i, j), 1.0});
        Terms def = out;
        def.push_back({thr.var, -1.0});
        m_.add_constraint("def_s[" + i + "][" + s + "]", def, Sense::Equal, 0.0);
        if (thr.is_arc) continue;
        Terms cons;
        if (net_.has_arc(s, i)) cons.push_back({f_name(s, i), 1.0});
        for (const auto& k : net_.in(i))
          if (net_.is_pool(k) && contains(net_.S(k), s)) cons.push_back({xs_name(s, k, i), 1.0});
        for (const auto& [v, c] : out) cons.push_back({v, -c});
        m_.add_constraint("cons_s[" + i + "][" + s + "]", cons, Sense::Equal, 0.0);
      }
      for (const auto& j : net_.out(i)) {
        Terms split{{f_name(i, j), -1.0}};
        for (const auto& s : net_.S(i)) split.push_back({xs_name(s, i, j), 1.0});
        m_.add_constraint("split_s" + pair(i, j), split, Sense::Equal, 0.0);
      }
    }
    for (const auto& t : net_.terminals()) {
      for (const auto& k : net_.specs()) {
        Terms quality;
        for (const auto& j : net_.in(t)) {
          if (net_.is_pool(j)) {
            for (const auto& s : net_.S(j)) quality.push_back({xs_name(s, j, t), net_.source(s).lambda.at(k)});
          } else {
            quality.push_back({f_name(j, t), net_.source(j).lambda.at(k)});
          }
        }
        spec_rows("spec_s", t, k, quality);
      }
    }
  }

  void terminal_flows() {
    for (const auto& j : net_.pools())
      for (const auto& t : net_.T(j))
        for (const auto& i : net_.in(j)) m_.add_var(xt_name(t, i, j), 0.0, model::kInf);
    for (const auto& j : net_.pools()) {
      for (const auto& t : net_.T(j)) {
        const auto thr = throughput_T(j, t);
        if (!m_.has_var(thr.var)) m_.add_var(thr.var, thr.l, thr.u);
        Terms in;
        for (const auto& i : net_.in(j)) in.push_back({xt_name(t, i, j), 1.0});
        Terms def = in;
        def.push_back({thr.var, -1.0});
        m_.add_constraint("def_t[" + j + "][" + t + "]", def, Sense::Equal, 0.0);
        if (thr.is_arc) continue;
        Terms cons = in;
        if (net_.has_arc(j, t)) cons.push_back({f_name(j, t), -1.0});
        for (const auto& k : net_.out(j))
          if (net_.is_pool(k) && contains(net_.T(k), t)) cons.push_back({xt_name(t, j, k), -1.0});
        m_.add_constraint("cons_t[" + j + "][" + t + "]", cons, Sense::Equal, 0.0);
      }
      for (const auto& i : net_.in(j)) {
        Terms split{{f_name(i, j), -1.0}};
        for (const auto& t : net_.T(j)) split.push_back({xt_name(t, i, j), 1.0});
        m_.add_constraint("split_t" + pair(i, j), split, Sense::Equal, 0.0);
      }
    }
    for (const auto& t : net_.terminals()) {
      for (const auto& k : net_.specs()) {
        Terms quality;
        for (const auto& s : net_.sources()) {
          const double lam = net_.source(s).lambda.at(k);
          for (const auto& j : net_.out(s)) {
            if (j == t) quality.push_back({f_name(s, t), lam});
            else if (net_.is_pool(j) && contains(net_.T(j), t)) quality.push_back({xt_name(t, s, j), lam});
          }
        }
        spec_rows("spec_t", t, k, quality);
      }
    }
  }

  // Source side: rows are sources reaching the pool, columns its out-arcs.
  PoolMatrix matrix_S(const std::string& i) const {
    PoolMatrix pm;
    pm.pool = i;
    pm.rows = net_.S(i);
    pm.cols = net_.out(i);
    pm.w = [i, rows = pm.rows, cols = pm.cols](std::size_t r, std::size_t c) {
      return xs_name(rows[r], i, cols[c]);
    };
    for (const auto& s : pm.rows) {
      const auto thr = throughput_S(s, i);
      pm.row_b.push_back({thr.l, thr.u});
    }
    for (const auto& j : pm.cols) pm.col_b.push_back({net_.arc(i, j).l, net_.arc(i, j).u});
    pm.L = net_.L(i);
    pm.U = net_.U(i);
    return pm;
  }

  // Terminal side: rows are the pool's in-arcs, columns reachable terminals.
  PoolMatrix matrix_T(const std::string& j) const {
    PoolMatrix pm;
    pm.pool = j;
    pm.rows = net_.in(j);
    pm.cols = net_.T(j);
    pm.w = [j, rows = pm.rows, cols = pm.cols](std::size_t r, std::size_t c) {
      return xt_name(cols[c], rows[r], j);
    };
    for (const auto& i : pm.rows) pm.row_b.push_back({net_.arc(i, j).l, net_.arc(i, j).u});
    for (const auto& t : pm.cols) {
      const auto thr = throughput_T(j, t);
      pm.col_b.push_back({thr.l, thr.u});
    }
    pm.L = net_.L(j);
    pm.U = net_.U(j);
    return pm;
  }

  // Extended formulation of the row+ or col+ hull on one pool matrix. The
  // block's ratio variables are named by `t_name(index)`.
  void ext_block(const PoolMatrix& pm, Orient o, const std::function<std::string(std::size_t)>& t_name,
                 const std::string& prefix) {
    if (pm.empty()) return;
    hull::RowColBounds b;
    b.n1 = pm.rows.size();
    b.n2 = pm.cols.size();
    for (const auto& iv : o == Orient::Row ? pm.row_b : pm.col_b) {
      b.l.push_back(from_double(iv.l));
      b.u.push_back(from_double(iv.u));
    }
    b.agg_L = from_double(pm.L);
    b.agg_U = from_double(pm.U);
    const auto ext = o == Orient::Row ? hull::build_ext_rowplus(b) : hull::build_ext_colplus(b);
    std::map<std::string, std::string> names;
    for (std::size_t r = 0; r < b.n1; ++r)
      for (std::size_t c = 0; c < b.n2; ++c) names[hull::var_W(r, c)] = pm.w(r, c);
    const std::size_t nt = o == Orient::Row ? b.n2 : b.n1;
    for (std::size_t k = 0; k < nt; ++k) names[hull::var_t(k)] = t_name(k);
    append(ext, names, prefix);
  }

  void disc_block(const PoolMatrix& pm, Orient o, discretize::Mode mode, bool agg, int H) {
    if (pm.empty()) return;
    hull::RowColBoundsD b;
    b.n1 = pm.rows.size();
    b.n2 = pm.cols.size();
    for (const auto& iv : o == Orient::Row ? pm.row_b : pm.col_b) {
      b.l.push_back(iv.l);
      b.u.push_back(iv.u);
    }
    if (agg) {
      b.agg_L = pm.L;
      b.agg_U = pm.U;
    }
    discretize::DiscretizeOptions opts;
    opts.naming.scope = pm.pool;
    opts.naming.row_labels = pm.rows;
    opts.naming.col_labels = pm.cols;
    opts.naming.w_name = pm.w;
    discretize::DiscretizationSpec spec{H, mode,
                                        o == Orient::Row ? discretize::Orientation::Row : discretize::Orientation::Col};
    m_.merge(discretize::build(b, spec, opts).model);
  }

  void hull_S(int level) {
    for (const auto& i : net_.pools()) {
      const auto pm = matrix_S(i);
      ext_block(pm, Orient::Col, [&](std::size_t r) { return q_name(i, pm.rows[r]); }, "F1S[" + i + "]");
      if (level >= 2)
        ext_block(pm, Orient::Row, [&](std::size_t c) { return "ts[" + i + "][" + pm.cols[c] + "]"; },
                  "F2S[" + i + "]");
    }
  }

  void hull_T(int level) {
    for (const auto& j : net_.pools()) {
      const auto pm = matrix_T(j);
      ext_block(pm, Orient::Row, [&](std::size_t c) { return qt_name(j, pm.cols[c]); }, "F1T[" + j + "]");
      if (level >= 2)
        ext_block(pm, Orient::Col, [&](std::size_t r) { return "tt[" + j + "][" + pm.rows[r] + "]"; },
                  "F2T[" + j + "]");
    }
  }

  void disc_S(Orient o, discretize::Mode mode, bool agg, int H) {
    for (const auto& i : net_.pools()) disc_block(matrix_S(i), o, mode, agg, H);
  }

  void disc_T(Orient o, discretize::Mode mode, bool agg, int H) {
    for (const auto& j : net_.pools()) disc_block(matrix_T(j), o, mode, agg, H);
  }

  std::size_t st_size() const {
    std::size_t n = 0;
    for (const auto& [i, j] : net_.arcs())
      if (net_.is_pool(i) && net_.is_pool(j)) n += 2 * net_.S(i).size() * net_.T(j).size() + net_.T(j).size();
    return n;
  }

  void source_terminal() {
    for (const auto& [i, j] : net_.arcs()) {
      if (!(net_.is_pool(i) && net_.is_pool(j))) continue;
      const auto& S = net_.S(i);
      const auto& T = net_.T(j);
      if (S.empty() || T.empty()) continue;
      const auto& a = net_.arc(i, j);
      for (const auto& s : S)
        for (const auto& t : T) m_.add_var(xst_name(s, t, i, j), 0.0, model::kInf);
      for (const auto& s : S) {
        Terms link{{xs_name(s, i, j), -1.0}};
        for (const auto& t : T) link.push_back({xst_name(s, t, i, j), 1.0});
        m_.add_constraint("link_s[" + s + "]" + pair(i, j), link, Sense::Equal, 0.0);
      }
      for (const auto& t : T) {
        Terms link{{xt_name(t, i, j), -1.0}};
        for (const auto& s : S) link.push_back({xst_name(s, t, i, j), 1.0});
        m_.add_constraint("link_t[" + t + "]" + pair(i, j), link, Sense::Equal, 0.0);
      }

      PoolMatrix pm;
      pm.pool = i + "," + j;
      pm.rows = S;
      pm.cols = T;
      pm.w = [&](std::size_t r, std::size_t c) { return xst_name(S[r], T[c], i, j); };
      for (const auto& s : S) pm.row_b.push_back({0.0, std::min(a.u, throughput_S(s, i).u)});
      pm.L = a.l;
      pm.U = a.u;
      ext_block(pm, Orient::Row, [&](std::size_t c) { return "tst" + pair(i, j) + "[" + T[c] + "]"; },
                "F1ST" + pair(i, j));

      for (const auto& s : S) {
        for (const auto& t : T) {
          const auto qst = qst_name(i, j, s, t);
          const auto qs = q_name(i, s), qt = qt_name(j, t);
          m_.add_var(qst, 0.0, 1.0);
          const auto tag = pair(i, j) + pair(s, t);
          m_.add_constraint("mc_q1" + tag, Terms{{qst, 1.0}, {qs, -1.0}}, Sense::LessEq, 0.0);
          m_.add_constraint("mc_q2" + tag, Terms{{qst, 1.0}, {qt, -1.0}}, Sense::LessEq, 0.0);
          m_.add_constraint("mc_q3" + tag, Terms{{qst, 1.0}, {qs, -1.0}, {qt, -1.0}}, Sense::GreaterEq, -1.0);
          // x^{st} = qst * f with qst in [0,1] and f in [l,u].
          const auto x = xst_name(s, t, i, j), f = f_name(i, j);
          m_.add_constraint("mc_x1" + tag, Terms{{x, 1.0}, {qst, -a.l}}, Sense::GreaterEq, 0.0);
          m_.add_constraint("mc_x2" + tag, Terms{{x, 1.0}, {f, -1.0}, {qst, -a.u}}, Sense::GreaterEq, -a.u);
          m_.add_constraint("mc_x3" + tag, Terms{{x, 1.0}, {f, -1.0}, {qst, -a.l}}, Sense::LessEq, -a.l);
          m_.add_constraint("mc_x4" + tag, Terms{{x, 1.0}, {qst, -a.u}}, Sense::LessEq, 0.0);
        }
      }
    }
  }

 private:
  void range(const std::string& name, const Terms& terms, double lo, double hi) {
    m_.add_constraint(name, terms, Sense::LessEq, hi);
    if (lo > 0) m_.add_constraint(name + "_lo", terms, Sense::GreaterEq, lo);
  }

  void spec_rows(const std::string& stem, const std::string& t, const std::string& k, const Terms& quality) {
    const auto& term = net_.terminal(t);
    auto window = [&](const std::map<std::string, double>& mu, const char* side, Sense sense) {
      auto it = mu.find(k);
      if (it == mu.end()) return;
      Terms row = quality;
      for (const auto& j : net_.in(t)) row.push_back({f_name(j, t), -it->second});
      m_.add_constraint(stem + "_" + side + "[" + t + "][" + k + "]", row, sense, 0.0);
    };
    window(term.mu_lo, "lo", Sense::GreaterEq);
    window(term.mu_hi, "hi", Sense::LessEq);
  }

  // Adds every row of `p`. Single-variable rows become bounds; variables
  // not yet in the model are proportions and start in [0, 1].
  void append(const poly::Polyhedron& p, const std::map<std::string, std::string>& names,
              const std::string& prefix) {
    std::vector<std::size_t> idx;
    for (const auto& v : p.vars()) {
      const auto& name = names.at(v);
      auto found = m_.find_var(name);
      idx.push_back(found ? *found : m_.add_var(name, 0.0, 1.0));
    }
    std::size_t counter = 0;
    for (const auto& row : p.rows()) {
      std::vector<model::Term> terms;
      for (std::size_t k = 0; k < row.coeffs.size(); ++k)
        if (sgn(row.coeffs[k]) != 0) terms.push_back({idx[k], row.coeffs[k].get_d()});
      const double rhs = row.rhs.get_d();
      const Sense sense = row.rel == poly::Relation::LessEq    ? Sense::LessEq
                          : row.rel == poly::Relation::Equal   ? Sense::Equal
                                                               : Sense::GreaterEq;
      if (terms.empty()) continue;
      if (terms.size() == 1) {
        tighten(terms[0], sense, rhs);
        continue;
      }
      m_.add_constraint(prefix + "." + (row.name.empty() ? "row" : row.name) + "." + std::to_string(counter++),
                        std::move(terms), sense, rhs);
    }
  }

  void tighten(const model::Term& t, Sense sense, double rhs) {
    const auto& v = m_.vars()[t.var];
    double lo = v.lower, hi = v.upper;
    const double bound = rhs / t.coef;
    const bool upper = (sense == Sense::LessEq) == (t.coef > 0);
    if (sense == Sense::Equal) {
      lo = std::max(lo, bound);
      hi = std::min(hi, bound);
    } else if (upper) {
      hi = std::min(hi, bound);
    } else {
      lo = std::max(lo, bound);
    }
    m_.set_bounds(t.var, lo, hi);
  }

  const Network& net_;
  LinearModel m_;
};

PoolBlock to_block(const PoolMatrix& pm) {
  PoolBlock b;
  b.pool = pm.pool;
  b.rows = pm.rows;
  b.cols = pm.cols;
  b.w.assign(pm.rows.size(), std::vector<std::string>(pm.cols.size()));
  for (std::size_t r = 0; r < pm.rows.size(); ++r)
    for (std::size_t c = 0; c < pm.cols.size(); ++c) b.w[r][c] = pm.w(r, c);
  for (const auto& iv : pm.row_b) {
    b.row_l.push_back(iv.l);
    b.row_u.push_back(iv.u);
  }
  for (const auto& iv : pm.col_b) {
    b.col_l.push_back(iv.l);
    b.col_u.push_back(iv.u);
  }
  b.L = pm.L;
  b.U = pm.U;
  return b;
}

void check_H(int H) {
  if (H < 1) throw ParamError("discretization level H must be at least 1");
}

}  // namespace

std::string tag_name(Tag tag) {
  switch (tag) {
    case Tag::F1S: return "F1S";
    case Tag::F2S: return "F2S";
    case Tag::F1T: return "F1T";
    case Tag::F2T: return "F2T";
    case Tag::F1S_F1T: return "F1S^F1T";
    case Tag::F2S_F1T: return "F2S^F1T";
    case Tag::F1S_F2T: return "F1S^F2T";
    case Tag::F2S_F2T: return "F2S^F2T";
    case Tag::F1ST: return "F1ST";
    case Tag::M1S: return "M1S";
    case Tag::M2S: return "M2S";
    case Tag::M3S: return "M3S";
    case Tag::M1T: return "M1T";
    case Tag::M2T: return "M2T";
    case Tag::M3T: return "M3T";
    case Tag::G1S: return "G1S";
    case Tag::G2S: return "G2S";
    case Tag::G1T: return "G1T";
    case Tag::G2T: return "G2T";
  }
  return "?";
}

std::optional<Tag> parse_tag(const std::string& name) {
  std::string n;
  for (std::size_t k = 0; k < name.size(); ++k) {
    if (name.compare(k, 3, "\xE2\x88\xA9") == 0) {
      n += '^';
      k += 2;
    } else if (name[k] == '&') {
      n += '^';
    } else {
      n += name[k];
    }
  }
  for (Tag t : all_tags())
    if (tag_name(t) == n) return t;
  return std::nullopt;
}

const std::vector<Tag>& all_tags() {
  static const std::vector<Tag> tags = {
      Tag::F1S, Tag::F2S, Tag::F1T, Tag::F2T, Tag::F1S_F1T, Tag::F2S_F1T, Tag::F1S_F2T,
      Tag::F2S_F2T, Tag::F1ST, Tag::M1S, Tag::M2S, Tag::M3S, Tag::M1T, Tag::M2T,
      Tag::M3T, Tag::G1S, Tag::G2S, Tag::G1T, Tag::G2T};
  return tags;
}

const std::vector<Tag>& lp_tags() {
  static const std::vector<Tag> tags(all_tags().begin(), all_tags().begin() + 9);
  return tags;
}

bool needs_H(Tag tag) { return static_cast<int>(tag) >= static_cast<int>(Tag::M1S); }

std::vector<PoolBlock> source_blocks(const Network& net) {
  Builder b(net);
  std::vector<PoolBlock> out;
  for (const auto& i : net.pools()) {
    auto pm = b.matrix_S(i);
    if (!pm.empty()) out.push_back(to_block(pm));
  }
  return out;
}

std::vector<PoolBlock> terminal_blocks(const Network& net) {
  Builder b(net);
  std::vector<PoolBlock> out;
  for (const auto& j : net.pools()) {
    auto pm = b.matrix_T(j);
    if (!pm.empty()) out.push_back(to_block(pm));
  }
  return out;
}

LinearModel build_flow_source(const Network& net) {
  Builder b(net);
  b.core();
  b.source_flows();
  return b.take();
}

LinearModel build_flow_terminal(const Network& net) {
  Builder b(net);
  b.core();
  b.terminal_flows();
  return b.take();
}

LinearModel build_F1S(const Network& net) { return build(net, Tag::F1S); }
LinearModel build_F2S(const Network& net) { return build(net, Tag::F2S); }
LinearModel build_F1T(const Network& net) { return build(net, Tag::F1T); }
LinearModel build_F2T(const Network& net) { return build(net, Tag::F2T); }

LinearModel build_intersection(const Network& net, Tag s_side, Tag t_side) {
  if ((s_side != Tag::F1S && s_side != Tag::F2S) || (t_side != Tag::F1T && t_side != Tag::F2T))
    throw ParamError("build_intersection: need F1S/F2S and F1T/F2T");
  Builder b(net);
  b.core();
  b.source_flows();
  b.terminal_flows();
  b.hull_S(s_side == Tag::F1S ? 1 : 2);
  b.hull_T(t_side == Tag::F1T ? 1 : 2);
  return b.take();
}

LinearModel build_F1ST(const Network& net, std::size_t size_guard) {
  Builder b(net);
  b.core();
  b.source_flows();
  b.terminal_flows();
  b.hull_S(1);
  b.hull_T(1);
  const std::size_t total = b.model().num_vars() + b.st_size();
  if (total > size_guard)
    throw SizeGuardExceeded("F1ST would have " + std::to_string(total) + " variables (guard " +
                            std::to_string(size_guard) + ")");
  b.source_terminal();
  return b.take();
}

LinearModel build_M(const Network& net, int variant, char side, int H) {
  check_H(H);
  if (variant < 1 || variant > 3 || (side != 'S' && side != 'T')) throw ParamError("build_M: bad variant");
  Builder b(net);
  b.core();
  const auto outer = discretize::Mode::Outer;
  if (side == 'S') {
    b.source_flows();
    b.hull_S(variant == 1 ? 1 : 2);
    b.disc_S(variant == 3 ? Orient::Row : Orient::Col, outer, false, H);
  } else {
    b.terminal_flows();
    b.hull_T(variant == 1 ? 1 : 2);
    b.disc_T(variant == 3 ? Orient::Col : Orient::Row, outer, false, H);
  }
  return b.take();
}

LinearModel build_G(const Network& net, int variant, char side, int H) {
  check_H(H);
  if (variant < 1 || variant > 2 || (side != 'S' && side != 'T')) throw ParamError("build_G: bad variant");
  Builder b(net);
  b.core();
  const auto inner = discretize::Mode::Inner;
  if (side == 'S') {
    b.source_flows();
    b.disc_S(variant == 1 ? Orient::Col : Orient::Row, inner, true, H);
  } else {
    b.terminal_flows();
    b.disc_T(variant == 1 ? Orient::Row : Orient::Col, inner, true, H);
  }
  return b.take();
}

LinearModel build(const Network& net, Tag tag, const BuildOptions& opts) {
  switch (tag) {
    case Tag::F1S:
    case Tag::F2S: {
      Builder b(net);
      b.core();
      b.source_flows();
      b.hull_S(tag == Tag::F1S ? 1 : 2);
      return b.take();
    }
    case Tag::F1T:
    case Tag::F2T: {
      Builder b(net);
      b.core();
      b.terminal_flows();
      b.hull_T(tag == Tag::F1T ? 1 : 2);
      return b.take();
    }
    case Tag::F1S_F1T: return build_intersection(net, Tag::F1S, Tag::F1T);
    case Tag::F2S_F1T: return build_intersection(net, Tag::F2S, Tag::F1T);
    case Tag::F1S_F2T: return build_intersection(net, Tag::F1S, Tag::F2T);
    case Tag::F2S_F2T: return build_intersection(net, Tag::F2S, Tag::F2T);
    case Tag::F1ST: return build_F1ST(net, opts.size_guard);
    case Tag::M1S: return build_M(net, 1, 'S', opts.H);
    case Tag::M2S: return build_M(net, 2, 'S', opts.H);
    case Tag::M3S: return build_M(net, 3, 'S', opts.H);
    case Tag::M1T: return build_M(net, 1, 'T', opts.H);
    case Tag::M2T: return build_M(net, 2, 'T', opts.H);
    case Tag::M3T: return build_M(net, 3, 'T', opts.H);
    case Tag::G1S: return build_G(net, 1, 'S', opts.H);
    case Tag::G2S: return build_G(net, 2, 'S', opts.H);
    case Tag::G1T: return build_G(net, 1, 'T', opts.H);
    case Tag::G2T: return build_G(net, 2, 'T', opts.H);
  }
  throw ParamError("unknown formulation tag");
}

double gap_percent(double primal, double dual) {
  return 100.0 * (primal - dual) / std::max(1e-10, std::fabs(primal));
}

}  // namespace rankone::formulate
