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

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <chrono>
#include <cstddef>
#include <vector>

#include "rankone/linear_model.hpp"
#include "rankone/solver.hpp"

namespace rankone::solver::detail {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, AtZero };

struct Basis {
  std::vector<std::size_t> head;    // basic variable per row position
  std::vector<VarState> state;      // per structural + slack variable
};

// Bounded revised simplex on  A x + s = b,  lo <= (x, s) <= up.
// Slack bounds encode the row sense. The basis inverse is an LU factor of
// the basis matrix followed by a product-form eta file.
class SimplexEngine {
 public:
  using Clock = std::chrono::steady_clock;

  SimplexEngine(const model::LinearModel& m, const SolverConfig& cfg);

  std::size_t num_structural() const { return n_; }
  void set_bounds(std::size_t j, double lower, double upper);
  double lower(std::size_t j) const { return lo_[j]; }
  double upper(std::size_t j) const { return up_[j]; }

  void set_deadline(Clock::time_point t) { deadline_ = t; }

  Status solve();

  double objective() const;
  std::vector<double> primal() const;  // structural part
  std::vector<double> duals() const;   // one per row
  std::size_t iterations() const { return iterations_; }

  Basis basis() const { return {head_, state_}; }
  void load_basis(const Basis& b);

 private:
  enum class Outcome { Done, Infeasible, Unbounded, Limit };

  void factorize();
  bool try_factorize();
  void restore(const Basis& b);
  void ftran(std::vector<double>& v) const;
  void btran(std::vector<double>& v) const;
  void pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha);
  bool stable_pivot(std::size_t q, double from_column, double from_row);
  void perturb();
  void unperturb();
  void recompute_primal();
  void place_nonbasic(std::size_t j);
  std::vector<double> compute_duals(const std::vector<double>& cost) const;
  double reduced_cost(std::size_t j, const std::vector<double>& y,
                      const std::vector<double>& cost) const;
  double column_dot(std::size_t j, const std::vector<double>& y) const;
  void add_column(std::size_t j, double scale, std::vector<double>& v) const;
  double infeasibility(std::size_t j) const;
  bool primal_feasible() const;
  bool dual_feasible(const std::vector<double>& cost) const;
  bool out_of_budget() const;

  Outcome primal_simplex();
  Outcome dual_simplex(const std::vector<double>& cost);

  const SolverConfig& cfg_;
  std::size_t n_ = 0;  // structural variables
  std::size_t m_ = 0;  // rows
  std::vector<std::vector<std::pair<std::size_t, double>>> cols_;  // structural columns
  std::vector<double> b_, lo_, up_, cost_, zero_cost_, x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> head_;
  std::vector<long> pos_;  // row position of basic variables, -1 otherwise

  struct Eta {
    std::size_t r;
    std::vector<double> alpha;
  };
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  std::vector<Eta> etas_;
  bool factored_ = false;
  // Last basis that factorized cleanly; singular bases fall back to it with
  // a larger pivot tolerance.
  Basis last_good_;
  double pivot_tol_ = 1e-7;
  std::size_t repairs_ = 0;
  std::vector<char> rejected_;
  std::vector<double> saved_lo_, saved_up_;
  bool perturbed_ = false;  // entering candidates with unstable pivots

  std::size_t iterations_ = 0;
  Clock::time_point deadline_ = Clock::time_point::max();
};

}  // namespace rankone::solver::detail
