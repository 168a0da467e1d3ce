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

#include <set>
#include <sstream>
#include <stdexcept>

#include "rankone/polyhedron.hpp"

namespace rankone::poly {

const char* relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

bool Row::is_zero() const {
  for (const auto& c : coeffs) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

Rational Row::lhs(std::span<const Rational> x) const {
  Rational s = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (sgn(coeffs[k]) != 0) s += coeffs[k] * x[k];
  }
  return s;
}

bool Row::satisfied_by(std::span<const Rational> x) const {
  Rational v = lhs(x);
  switch (rel) {
    case Relation::LessEq: return v <= rhs;
    case Relation::Equal: return v == rhs;
    case Relation::GreaterEq: return v >= rhs;
  }
  return false;
}

Polyhedron::Polyhedron(std::vector<std::string> vars) : vars_(std::move(vars)) {
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (!index_.emplace(vars_[k], k).second) {
      throw std::invalid_argument("duplicate variable " + vars_[k]);
    }
  }
}

std::optional<std::size_t> Polyhedron::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Polyhedron::require_index(std::string_view name) const {
  auto k = index_of(name);
  if (!k) throw std::invalid_argument("unknown variable " + std::string(name));
  return *k;
}

void Polyhedron::add_row(std::vector<Rational> coeffs, Relation rel,
                         Rational rhs, std::string name) {
  if (coeffs.size() != vars_.size()) {
    throw std::invalid_argument("row length does not match variable count");
  }
  rows_.push_back(Row{std::move(coeffs), rel, std::move(rhs), std::move(name)});
}

void Polyhedron::add_row(const std::map<std::string, Rational>& coeffs,
                         Relation rel, Rational rhs, std::string name) {
  std::vector<Rational> dense(vars_.size());
  for (const auto& [var, c] : coeffs) dense[require_index(var)] += c;
  add_row(std::move(dense), rel, std::move(rhs), std::move(name));
}

void Polyhedron::add_row(Row row) {
  add_row(std::move(row.coeffs), row.rel, std::move(row.rhs),
          std::move(row.name));
}

Polyhedron Polyhedron::over(const std::vector<std::string>& new_vars) const {
  Polyhedron out(new_vars);
  std::vector<std::size_t> target(vars_.size());
  std::vector<bool> present(vars_.size(), false);
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (auto t = out.index_of(vars_[k])) {
      target[k] = *t;
      present[k] = true;
    }
  }
  for (const auto& r : rows_) {
    std::vector<Rational> dense(new_vars.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (sgn(r.coeffs[k]) == 0) continue;
      if (!present[k]) {
        throw std::invalid_argument("variable " + vars_[k] +
                                    " missing from target variable list");
      }
      dense[target[k]] = r.coeffs[k];
    }
    out.add_row(std::move(dense), r.rel, r.rhs, r.name);
  }
  return out;
}

Polyhedron Polyhedron::renamed(
    const std::map<std::string, std::string>& mapping) const {
  std::vector<std::string> names = vars_;
  for (auto& n : names) {
    if (auto it = mapping.find(n); it != mapping.end()) n = it->second;
  }
  Polyhedron out(std::move(names));
  for (const auto& r : rows_) out.add_row(r);
  return out;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  std::vector<std::string> names = vars_;
  for (const auto& n : other.vars_) {
    if (!index_of(n)) names.push_back(n);
  }
  Polyhedron out = over(names);
  Polyhedron rhs = other.over(names);
  for (const auto& r : rhs.rows()) out.add_row(r);
  return out;
}

bool Polyhedron::has_contradiction() const {
  for (const auto& r : rows_) {
    if (!r.is_zero()) continue;
    switch (r.rel) {
      case Relation::LessEq:
        if (sgn(r.rhs) < 0) return true;
        break;
      case Relation::Equal:
        if (sgn(r.rhs) != 0) return true;
        break;
      case Relation::GreaterEq:
        if (sgn(r.rhs) > 0) return true;
        break;
    }
  }
  return false;
}

std::string Polyhedron::dump() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    os << (row.name.empty() ? "r" + std::to_string(r) : row.name) << ":";
    bool first = true;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      const Rational& c = row.coeffs[k];
      if (sgn(c) == 0) continue;
      if (first) {
        os << ' ' << (sgn(c) < 0 ? "-" : "");
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      os << Rational(abs(c)).get_str() << '*' << vars_[k];
      first = false;
    }
    if (first) os << " 0";
    os << ' ' << relation_symbol(row.rel) << ' ' << row.rhs.get_str() << '\n';
  }
  return os.str();
}

bool contains(const Polyhedron& p, std::span<const Rational> x) {
  if (x.size() != p.dim()) {
    throw std::invalid_argument("point dimension does not match polyhedron");
  }
  for (const auto& r : p.rows()) {
    if (!r.satisfied_by(x)) return false;
  }
  return true;
}

}  // namespace rankone::poly
