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
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "rankone/errors.hpp"
#include "rankone/solver.hpp"

namespace rankone::solver {

namespace {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_num(const std::string& tok) {
  double v = 0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  if (b != e && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw IoError("MPS: bad number '" + tok + "'");
  return v;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '\'' && s.back() == '\'') return s.substr(1, s.size() - 2);
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string to_mps(const LinearModel& m, const std::string& name) {
  std::string obj = "obj";
  while (m.has_constraint(obj)) obj += "_";

  std::vector<std::vector<std::pair<std::size_t, double>>> col_rows(m.num_vars());
  for (std::size_t i = 0; i < m.num_constraints(); ++i) {
    for (const auto& t : m.constraints()[i].terms) col_rows[t.var].push_back({i, t.coef});
  }
  std::vector<std::size_t> cont, bin;
  for (std::size_t j = 0; j < m.num_vars(); ++j) (m.vars()[j].is_binary ? bin : cont).push_back(j);
  auto by_name = [&](std::size_t a, std::size_t b) { return m.vars()[a].name < m.vars()[b].name; };
  std::sort(cont.begin(), cont.end(), by_name);
  std::sort(bin.begin(), bin.end(), by_name);

  std::ostringstream out;
  out << "NAME " << name << "\nROWS\n N " << obj << '\n';
  for (const auto& c : m.constraints()) {
    const char* t = c.sense == model::Sense::LessEq ? "L" : c.sense == model::Sense::GreaterEq ? "G" : "E";
    out << ' ' << t << ' ' << c.name << '\n';
  }
  out << "COLUMNS\n";
  auto write_col = [&](std::size_t j) {
    const std::string& v = m.vars()[j].name;
    bool any = false;
    if (m.objective()[j] != 0.0) {
      out << ' ' << v << ' ' << obj << ' ' << num(m.objective()[j]) << '\n';
      any = true;
    }
    for (const auto& [i, a] : col_rows[j]) {
      out << ' ' << v << ' ' << m.constraints()[i].name << ' ' << num(a) << '\n';
      any = true;
    }
    if (!any) out << ' ' << v << ' ' << obj << " 0\n";
  };
  for (std::size_t j : cont) write_col(j);
  if (!bin.empty()) {
    out << " MARKER 'MARKER' 'INTORG'\n";
    for (std::size_t j : bin) write_col(j);
    out << " MARKER 'MARKER' 'INTEND'\n";
  }
  out << "RHS\n";
  for (const auto& c : m.constraints()) {
    if (c.rhs != 0.0) out << " RHS " << c.name << ' ' << num(c.rhs) << '\n';
  }
  out << "BOUNDS\n";
  auto write_bounds = [&](std::size_t j) {
    const auto& v = m.vars()[j];
    const double lo = v.lower, up = v.upper;
    if (v.is_binary && lo == 0.0 && up == 1.0) {
      out << " BV BND " << v.name << '\n';
    } else if (std::isinf(lo) && lo < 0 && std::isinf(up) && up > 0) {
      out << " FR BND " << v.name << '\n';
    } else if (lo == up) {
      out << " FX BND " << v.name << ' ' << num(lo) << '\n';
    } else {
      if (std::isinf(lo)) {
        out << " MI BND " << v.name << '\n';
      } else if (lo != 0.0 || v.is_binary || up < 0) {
        out << " LO BND " << v.name << ' ' << num(lo) << '\n';
      }
      if (!std::isinf(up)) out << " UP BND " << v.name << ' ' << num(up) << '\n';
    }
  };
  for (std::size_t j : cont) write_bounds(j);
  for (std::size_t j : bin) write_bounds(j);
  out << "ENDATA\n";
  return out.str();
}

LinearModel from_mps(const std::string& text) {
  enum class Sec { None, Rows, Columns, Rhs, Bounds, End };
  struct Col {
    std::string name;
    bool integer = false;
    double lo = 0.0, up = model::kInf;
    bool explicit_up = false;
    std::vector<std::pair<std::string, double>> entries;
  };
  Sec sec = Sec::None;
  std::string obj;
  std::vector<std::pair<std::string, model::Sense>> rows;
  std::map<std::string, double> rhs;
  std::vector<Col> cols;
  std::map<std::string, std::size_t> col_index;
  bool in_int = false;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      if (tok[0] == "NAME") continue;
      if (tok[0] == "ROWS") sec = Sec::Rows;
      else if (tok[0] == "COLUMNS") sec = Sec::Columns;
      else if (tok[0] == "RHS") sec = Sec::Rhs;
      else if (tok[0] == "BOUNDS") sec = Sec::Bounds;
      else if (tok[0] == "ENDATA") sec = Sec::End;
      else throw IoError("MPS: unknown section " + tok[0]);
      continue;
    }
    switch (sec) {
      case Sec::Rows: {
        if (tok.size() != 2) throw IoError("MPS: malformed ROWS line");
        if (tok[0] == "N") {
          if (obj.empty()) obj = tok[1];
        } else if (tok[0] == "L") rows.push_back({tok[1], model::Sense::LessEq});
        else if (tok[0] == "G") rows.push_back({tok[1], model::Sense::GreaterEq});
        else if (tok[0] == "E") rows.push_back({tok[1], model::Sense::Equal});
        else throw IoError("MPS: bad row type " + tok[0]);
        break;
      }
      case Sec::Columns: {
        if (tok.size() == 3 && unquote(tok[1]) == "MARKER") {
          in_int = unquote(tok[2]) == "INTORG";
          break;
        }
        if (tok.size() != 3 && tok.size() != 5) throw IoError("MPS: malformed COLUMNS line");
        auto it = col_index.find(tok[0]);
        if (it == col_index.end()) {
          it = col_index.emplace(tok[0], cols.size()).first;
          Col c;
          c.name = tok[0];
          c.integer = in_int;
          if (in_int) c.up = 1.0;
          cols.push_back(c);
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          cols[it->second].entries.push_back({tok[k], parse_num(tok[k + 1])});
        }
        break;
      }
      case Sec::Rhs: {
        if (tok.size() != 3 && tok.size() != 5) throw IoError("MPS: malformed RHS line");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) rhs[tok[k]] = parse_num(tok[k + 1]);
        break;
      }
      case Sec::Bounds: {
        if (tok.size() < 3) throw IoError("MPS: malformed BOUNDS line");
        auto it = col_index.find(tok[2]);
        if (it == col_index.end()) throw IoError("MPS: bound on unknown column " + tok[2]);
        Col& c = cols[it->second];
        const std::string& t = tok[0];
        const double v = tok.size() > 3 ? parse_num(tok[3]) : 0.0;
        if (t == "LO") c.lo = v;
        else if (t == "UP") c.up = v;
        else if (t == "FX") c.lo = c.up = v;
        else if (t == "FR") { c.lo = -model::kInf; c.up = model::kInf; }
        else if (t == "MI") c.lo = -model::kInf;
        else if (t == "PL") c.up = model::kInf;
        else if (t == "BV") { c.lo = 0; c.up = 1; c.integer = true; }
        else throw IoError("MPS: unsupported bound type " + t);
        break;
      }
      default:
        throw IoError("MPS: data outside a section");
    }
  }
  if (sec != Sec::End) throw IoError("MPS: missing ENDATA");

  LinearModel m;
  std::map<std::string, std::vector<model::Term>> row_terms;
  try {
    for (const auto& c : cols) {
      const std::size_t j = m.add_var(c.name, c.lo, c.up, c.integer);
      for (const auto& [row, a] : c.entries) {
        if (row == obj) m.add_objective(j, a);
        else row_terms[row].push_back({j, a});
      }
    }
    for (const auto& [name, sense] : rows) {
      auto it = rhs.find(name);
      m.add_constraint(name, row_terms[name], sense, it == rhs.end() ? 0.0 : it->second);
    }
  } catch (const ParamError& e) {
    throw IoError(std::string("MPS: ") + e.what());
  }
  return m;
}

void export_mps(const LinearModel& m, const std::string& path) { write_file(path, to_mps(m)); }

void export_lp_text(const LinearModel& m, const std::string& path) {
  write_file(path, m.to_lp_text());
}

LinearModel import_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const bool mps = path.size() >= 4 && path.compare(path.size() - 4, 4, ".mps") == 0;
  return mps ? from_mps(ss.str()) : LinearModel::from_lp_text(ss.str());
}

}  // namespace rankone::solver
