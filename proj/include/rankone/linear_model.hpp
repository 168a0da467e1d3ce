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
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rankone::model {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEq, Equal, GreaterEq };

const char* sense_symbol(Sense s);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool is_binary = false;
};

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEq;
  double rhs = 0.0;
};

// Floating-point LP/MILP: named variables with bounds and an optional binary
// flag, named linear constraints and a linear minimization objective.
// Variable and constraint names are unique and never contain whitespace.
class LinearModel {
 public:
  std::size_t add_var(const std::string& name, double lower, double upper,
                      bool binary = false);
  std::size_t add_binary(const std::string& name) { return add_var(name, 0, 1, true); }

  std::optional<std::size_t> find_var(const std::string& name) const;
  std::size_t var(const std::string& name) const;  // throws ParamError
  bool has_var(const std::string& name) const { return find_var(name).has_value(); }
  bool has_constraint(const std::string& name) const { return row_index_.count(name) > 0; }

  // Duplicate terms are summed and zero coefficients dropped. An empty name
  // is replaced by "c<index>".
  std::size_t add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                             double rhs);
  std::size_t add_constraint(std::string name,
                             const std::vector<std::pair<std::string, double>>& terms,
                             Sense sense, double rhs);

  void set_bounds(std::size_t v, double lower, double upper);
  void set_objective(std::size_t v, double c);
  void add_objective(std::size_t v, double c) { set_objective(v, objective_.at(v) + c); }

  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  std::size_t num_binaries() const;
  bool has_binaries() const { return num_binaries() > 0; }

  // Appends `other`. Variables are matched by name: bounds are intersected
  // and the binary flag is kept if either side sets it. Objectives add up.
  void merge(const LinearModel& other);

  // Copy with every binary turned into a continuous [0,1] variable.
  LinearModel relaxed() const;

  // Objective value and maximum constraint/bound violation at x.
  double evaluate(const std::vector<double>& x) const;
  double max_violation(const std::vector<double>& x) const;

  std::string to_lp_text() const;
  static LinearModel from_lp_text(const std::string& text);

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> objective_;
  std::unordered_map<std::string, std::size_t> var_index_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

}  // namespace rankone::model
