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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankone/rational.hpp"

// Exact-rational polyhedral kernel: inequality systems, Fourier-Motzkin
// projection, vertex enumeration and set comparison. Everything here is
// exact; there are no tolerances anywhere in this namespace.
namespace rankone::poly {

enum class Relation { LessEq, Equal, GreaterEq };

const char* relation_symbol(Relation rel);

struct Row {
  std::vector<Rational> coeffs;  // aligned with Polyhedron::vars()
  Relation rel = Relation::LessEq;
  Rational rhs;
  std::string name;

  bool is_zero() const;
  // a.x evaluated exactly.
  Rational lhs(std::span<const Rational> x) const;
  bool satisfied_by(std::span<const Rational> x) const;
};

// A system {x : rows} over an ordered list of named variables.
class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(std::vector<std::string> vars);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t dim() const { return vars_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws std::invalid_argument for unknown names.
  std::size_t require_index(std::string_view name) const;

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs,
               std::string name = {});
  void add_row(const std::map<std::string, Rational>& coeffs, Relation rel,
               Rational rhs, std::string name = {});
  void add_row(Row row);

  // Same system over `new_vars`; variables missing from this polyhedron get
  // zero coefficients, and every variable with a nonzero coefficient must be
  // present in `new_vars`.
  Polyhedron over(const std::vector<std::string>& new_vars) const;
  // Renames variables; names absent from `mapping` are kept.
  Polyhedron renamed(const std::map<std::string, std::string>& mapping) const;
  // Intersection of two systems over the union of their variables.
  Polyhedron intersect(const Polyhedron& other) const;

  // True if some row reads 0 <= negative (or 0 = nonzero), which the
  // projection code uses to mark an empty system.
  bool has_contradiction() const;

  // `name: c1*x1 + c2*x2 <= r`, one row per line.
  std::string dump() const;

 private:
  std::vector<std::string> vars_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<Row> rows_;
};

// Orthogonal projection that eliminates one variable. Equalities with a
// nonzero coefficient on `var` are used for substitution; otherwise every
// (positive, negative) pair of inequalities is combined. Duplicate and
// parallel-dominated rows are dropped; other redundancy may remain.
Polyhedron fm_eliminate(const Polyhedron& p, std::string_view var);

// Eliminates the variables in the given order. Between steps rows whose
// derivation history exceeds the Chernikov bound are discarded, which never
// changes the projected set.
Polyhedron fm_eliminate_all(const Polyhedron& p,
                            const std::vector<std::string>& order);

struct RedundancyOptions {
  std::size_t row_cap = 5000;
};

// Drops every inequality implied by the others (one exact LP per row).
// Equalities are kept. An infeasible system collapses to {0 <= -1}.
Polyhedron remove_redundant(const Polyhedron& p,
                            const RedundancyOptions& opts = {});

struct VertexCaps {
  std::size_t max_dim = 12;
  std::size_t max_rows = 5000;
};

// V-description: P = conv(points) + cone(rays) + span(lines). For pointed
// polyhedra `points` are exactly the vertices and `rays` the extreme rays.
struct VertexSet {
  std::vector<std::vector<Rational>> points;
  std::vector<std::vector<Rational>> rays;
  std::vector<std::vector<Rational>> lines;
  bool is_bounded = true;
  bool empty() const { return points.empty(); }
};

// Exact double-description enumeration on the homogenized cone.
VertexSet vertices(const Polyhedron& p, const VertexCaps& caps = {});

bool contains(const Polyhedron& p, std::span<const Rational> x);

// True iff every generator of `p` lies in `q` (rays and lines in the
// recession cone / lineality space of `q`).
bool poly_subset(const Polyhedron& p, const Polyhedron& q,
                 const VertexCaps& caps = {});
bool poly_equal(const Polyhedron& p, const Polyhedron& q,
                const VertexCaps& caps = {});

}  // namespace rankone::poly
