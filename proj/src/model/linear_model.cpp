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

#include "rankone/linear_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "rankone/errors.hpp"

namespace rankone::model {

namespace {

void check_name(const std::string& name) {
  if (name.empty()) throw ParamError("empty name");
  for (char ch : name) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ':') {
      throw ParamError("name contains whitespace or ':': " + name);
    }
  }
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_signed(double v) {
  std::string s = fmt(v);
  return (v >= 0 || std::isnan(v)) ? "+" + s : s;
}

double parse_num(const std::string& tok) {
  const char* b = tok.data();
  const char* e = b + tok.size();
  if (!tok.empty() && tok[0] == '+') ++b;
  double v = 0;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw ParamError("bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

const char* sense_symbol(Sense s) {
  switch (s) {
    case Sense::LessEq: return "<=";
    case Sense::Equal: return "=";
    case Sense::GreaterEq: return ">=";
  }
  return "?";
}

std::size_t LinearModel::add_var(const std::string& name, double lower, double upper,
                                 bool binary) {
  check_name(name);
  if (var_index_.count(name)) throw ParamError("duplicate variable " + name);
  if (binary && (lower < 0 || upper > 1)) throw ParamError("binary bounds outside [0,1]: " + name);
  std::size_t idx = vars_.size();
  vars_.push_back({name, lower, upper, binary});
  objective_.push_back(0.0);
  var_index_.emplace(name, idx);
  return idx;
}

std::optional<std::size_t> LinearModel::find_var(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LinearModel::var(const std::string& name) const {
  auto v = find_var(name);
  if (!v) throw ParamError("unknown variable " + name);
  return *v;
}

std::size_t LinearModel::add_constraint(std::string name, std::vector<Term> terms,
                                        Sense sense, double rhs) {
  if (name.empty()) name = "c" + std::to_string(rows_.size());
  check_name(name);
  if (row_index_.count(name)) throw ParamError("duplicate constraint " + name);
  std::map<std::size_t, double> acc;
  for (const auto& t : terms) {
    if (t.var >= vars_.size()) throw ParamError("constraint " + name + " references unknown variable");
    acc[t.var] += t.coef;
  }
  Constraint c{name, {}, sense, rhs};
  for (const auto& [v, a] : acc) {
    if (a != 0.0) c.terms.push_back({v, a});
  }
  std::size_t idx = rows_.size();
  rows_.push_back(std::move(c));
  row_index_.emplace(rows_.back().name, idx);
  return idx;
}

std::size_t LinearModel::add_constraint(
    std::string name, const std::vector<std::pair<std::string, double>>& terms, Sense sense,
    double rhs) {
  std::vector<Term> t;
  t.reserve(terms.size());
  for (const auto& [n, a] : terms) t.push_back({var(n), a});
  return add_constraint(std::move(name), std::move(t), sense, rhs);
}

void LinearModel::set_bounds(std::size_t v, double lower, double upper) {
  vars_.at(v).lower = lower;
  vars_.at(v).upper = upper;
}

void LinearModel::set_objective(std::size_t v, double c) { objective_.at(v) = c; }

std::size_t LinearModel::num_binaries() const {
  return static_cast<std::size_t>(
      std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.is_binary; }));
}

void LinearModel::merge(const LinearModel& other) {
  std::vector<std::size_t> map(other.vars_.size());
  for (std::size_t k = 0; k < other.vars_.size(); ++k) {
    const Variable& ov = other.vars_[k];
    if (auto idx = find_var(ov.name)) {
      Variable& v = vars_[*idx];
      v.lower = std::max(v.lower, ov.lower);
      v.upper = std::min(v.upper, ov.upper);
      v.is_binary = v.is_binary || ov.is_binary;
      map[k] = *idx;
    } else {
      map[k] = add_var(ov.name, ov.lower, ov.upper, ov.is_binary);
    }
    objective_[map[k]] += other.objective_[k];
  }
  for (const auto& c : other.rows_) {
    std::vector<Term> t;
    for (const auto& term : c.terms) t.push_back({map[term.var], term.coef});
    add_constraint(c.name, std::move(t), c.sense, c.rhs);
  }
}

LinearModel LinearModel::relaxed() const {
  LinearModel m = *this;
  for (auto& v : m.vars_) v.is_binary = false;
  return m;
}

double LinearModel::evaluate(const std::vector<double>& x) const {
  double z = 0;
  for (std::size_t j = 0; j < vars_.size(); ++j) z += objective_[j] * x.at(j);
  return z;
}

double LinearModel::max_violation(const std::vector<double>& x) const {
  double worst = 0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max({worst, vars_[j].lower - x.at(j), x.at(j) - vars_[j].upper});
  }
  for (const auto& c : rows_) {
    double lhs = 0;
    for (const auto& t : c.terms) lhs += t.coef * x.at(t.var);
    double v = 0;
    if (c.sense != Sense::GreaterEq) v = std::max(v, lhs - c.rhs);
    if (c.sense != Sense::LessEq) v = std::max(v, c.rhs - lhs);
    worst = std::max(worst, v);
  }
  return worst;
}

std::string LinearModel::to_lp_text() const {
  std::ostringstream out;
  out << "minimize\n  obj:";
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    if (objective_[j] != 0.0) out << ' ' << fmt_signed(objective_[j]) << ' ' << vars_[j].name;
  }
  out << "\nsubject to\n";
  for (const auto& c : rows_) {
    out << "  " << c.name << ':';
    for (const auto& t : c.terms) out << ' ' << fmt_signed(t.coef) << ' ' << vars_[t.var].name;
    out << ' ' << sense_symbol(c.sense) << ' ' << fmt(c.rhs) << '\n';
  }
  out << "bounds\n";
  for (const auto& v : vars_) {
    out << "  " << fmt(v.lower) << " <= " << v.name << " <= " << fmt(v.upper) << '\n';
  }
  out << "binaries\n";
  for (const auto& v : vars_) {
    if (v.is_binary) out << "  " << v.name << '\n';
  }
  out << "end\n";
  return out.str();
}

LinearModel LinearModel::from_lp_text(const std::string& text) {
  enum class Section { None, Objective, Rows, Bounds, Binaries, End };
  Section sec = Section::None;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  // Variables are declared by the bounds section, so rows are parsed after.
  std::vector<std::string> objective_line;
  std::vector<std::vector<std::string>> row_lines;
  LinearModel m;
  auto fail = [&](const std::string& why) {
    throw IoError("LP text line " + std::to_string(lineno) + ": " + why);
  };
  try {
    while (std::getline(in, line)) {
      ++lineno;
      auto tok = split(line);
      if (tok.empty() || tok[0][0] == '\\') continue;
      if (tok.size() == 1 && tok[0] == "minimize") { sec = Section::Objective; continue; }
      if (tok.size() == 2 && tok[0] == "subject" && tok[1] == "to") { sec = Section::Rows; continue; }
      if (tok.size() == 1 && tok[0] == "bounds") { sec = Section::Bounds; continue; }
      if (tok.size() == 1 && tok[0] == "binaries") { sec = Section::Binaries; continue; }
      if (tok.size() == 1 && tok[0] == "end") { sec = Section::End; continue; }
      switch (sec) {
        case Section::Objective:
          if (tok[0] != "obj:") fail("expected 'obj:'");
          objective_line.assign(tok.begin() + 1, tok.end());
          break;
        case Section::Rows:
          row_lines.push_back(tok);
          break;
        case Section::Bounds:
          if (tok.size() != 5 || tok[1] != "<=" || tok[3] != "<=") fail("malformed bound");
          m.add_var(tok[2], parse_num(tok[0]), parse_num(tok[4]));
          break;
        case Section::Binaries:
          m.vars_[m.var(tok[0])].is_binary = true;
          break;
        default:
          fail("content outside a section");
      }
    }
    if (objective_line.size() % 2 != 0) fail("odd objective term list");
    for (std::size_t k = 0; k < objective_line.size(); k += 2) {
      m.add_objective(m.var(objective_line[k + 1]), parse_num(objective_line[k]));
    }
    for (const auto& tok : row_lines) {
      if (tok.size() < 3 || tok[0].back() != ':') fail("malformed row");
      std::size_t n = tok.size();
      Sense s;
      if (tok[n - 2] == "<=") s = Sense::LessEq;
      else if (tok[n - 2] == ">=") s = Sense::GreaterEq;
      else if (tok[n - 2] == "=") s = Sense::Equal;
      else fail("missing relation");
      if ((n - 3) % 2 != 0) fail("odd term list");
      std::vector<Term> terms;
      for (std::size_t k = 1; k + 2 < n; k += 2) terms.push_back({m.var(tok[k + 1]), parse_num(tok[k])});
      m.add_constraint(tok[0].substr(0, tok[0].size() - 1), std::move(terms), s, parse_num(tok[n - 1]));
    }
  } catch (const ParamError& e) {
    fail(e.what());
  }
  if (sec != Section::End) throw IoError("LP text: missing 'end'");
  return m;
}

}  // namespace rankone::model
