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

#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rankone/errors.hpp"

namespace rankone::solver::detail {

namespace {

constexpr double kMaxPivotTol = 1e-5;
constexpr std::size_t kMaxRepairs = 50;
constexpr double kFactorTol = 1e-6;
constexpr double kPerturbSize = 1e-7;
constexpr std::uint64_t kPerturbSeed = 0x5eed;
constexpr double kAgreeTol = 1e-8;
constexpr std::size_t kRefactorEvery = 64;
constexpr std::size_t kStallLimit = 100;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

SimplexEngine::SimplexEngine(const model::LinearModel& m, const SolverConfig& cfg)
    : cfg_(cfg), n_(m.num_vars()), m_(m.num_constraints()) {
  const std::size_t total = n_ + m_;
  cols_.resize(n_);
  b_.resize(m_);
  lo_.resize(total);
  up_.resize(total);
  cost_.assign(total, 0.0);
  zero_cost_.assign(total, 0.0);
  x_.assign(total, 0.0);
  state_.assign(total, VarState::AtLower);
  pos_.assign(total, -1);
  head_.resize(m_);
  rejected_.assign(total, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    lo_[j] = m.vars()[j].lower;
    up_[j] = m.vars()[j].upper;
    cost_[j] = m.objective()[j];
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const auto& c = m.constraints()[i];
    for (const auto& t : c.terms) cols_[t.var].push_back({i, t.coef});
    b_[i] = c.rhs;
    const std::size_t s = n_ + i;
    lo_[s] = c.sense == model::Sense::GreaterEq ? -model::kInf : 0.0;
    up_[s] = c.sense == model::Sense::LessEq ? model::kInf : 0.0;
    head_[i] = s;
    pos_[s] = static_cast<long>(i);
    state_[s] = VarState::Basic;
  }
  for (std::size_t j = 0; j < n_; ++j) place_nonbasic(j);
}

void SimplexEngine::set_bounds(std::size_t j, double lower, double upper) {
  lo_[j] = lower;
  up_[j] = upper;
  if (state_[j] != VarState::Basic) place_nonbasic(j);
}

void SimplexEngine::place_nonbasic(std::size_t j) {
  if (state_[j] == VarState::AtUpper && finite(up_[j])) {
    x_[j] = up_[j];
  } else if (finite(lo_[j])) {
    state_[j] = VarState::AtLower;
    x_[j] = lo_[j];
  } else if (finite(up_[j])) {
    state_[j] = VarState::AtUpper;
    x_[j] = up_[j];
  } else {
    state_[j] = VarState::AtZero;
    x_[j] = 0.0;
  }
}

void SimplexEngine::load_basis(const Basis& b) {
  restore(b);
  factored_ = false;
}

void SimplexEngine::restore(const Basis& b) {
  head_ = b.head;
  state_ = b.state;
  std::fill(pos_.begin(), pos_.end(), -1);
  for (std::size_t k = 0; k < m_; ++k) pos_[head_[k]] = static_cast<long>(k);
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] != VarState::Basic) place_nonbasic(j);
  }
}

bool SimplexEngine::try_factorize() {
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t k = 0; k < m_; ++k) {
    const std::size_t j = head_[k];
    if (j < n_) {
      for (const auto& [i, a] : cols_[j]) trip.emplace_back(static_cast<int>(i), static_cast<int>(k), a);
    } else {
      trip.emplace_back(static_cast<int>(j - n_), static_cast<int>(k), 1.0);
    }
  }
  Eigen::SparseMatrix<double> B(static_cast<int>(m_), static_cast<int>(m_));
  B.setFromTriplets(trip.begin(), trip.end());
  B.makeCompressed();
  etas_.clear();
  factored_ = true;
  if (m_ == 0) return true;
  lu_.analyzePattern(B);
  lu_.factorize(B);
  if (lu_.info() != Eigen::Success) return false;
  // Near-singular bases factorize without complaint; solve B x = B 1 and
  // reject the factors when x drifts from 1.
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m_));
  Eigen::VectorXd x = lu_.solve(B * ones);
  return ((x - ones).cwiseAbs().maxCoeff() <= kFactorTol);
}

void SimplexEngine::factorize() {
  if (try_factorize()) {
    last_good_ = {head_, state_};
    return;
  }
  if (++repairs_ > kMaxRepairs) throw NumericalFailure("simplex basis is singular");
  pivot_tol_ = std::min(kMaxPivotTol, pivot_tol_ * 10);
  if (!last_good_.head.empty()) {
    restore(last_good_);
    if (try_factorize()) return;
  }
  // The slack basis is always nonsingular.
  Basis slack{head_, state_};
  for (std::size_t j = 0; j < n_; ++j)
    if (slack.state[j] == VarState::Basic) slack.state[j] = VarState::AtLower;
  for (std::size_t i = 0; i < m_; ++i) {
    slack.head[i] = n_ + i;
    slack.state[n_ + i] = VarState::Basic;
  }
  restore(slack);
  if (!try_factorize()) throw NumericalFailure("simplex basis is singular");
  last_good_ = {head_, state_};
}

void SimplexEngine::ftran(std::vector<double>& v) const {
  if (m_ == 0) return;
  Eigen::Map<Eigen::VectorXd> in(v.data(), static_cast<Eigen::Index>(m_));
  Eigen::VectorXd out = lu_.solve(in);
  in = out;
  for (const auto& e : etas_) {
    const double xr = v[e.r] / e.alpha[e.r];
    for (std::size_t i = 0; i < m_; ++i) v[i] -= e.alpha[i] * xr;
    v[e.r] = xr;
  }
}

void SimplexEngine::btran(std::vector<double>& v) const {
  if (m_ == 0) return;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->r];
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != it->r) s -= it->alpha[i] * v[i];
    }
    v[it->r] = s / it->alpha[it->r];
  }
  Eigen::Map<Eigen::VectorXd> in(v.data(), static_cast<Eigen::Index>(m_));
  Eigen::VectorXd out = lu_.transpose().solve(in);
  in = out;
}

void SimplexEngine::add_column(std::size_t j, double scale, std::vector<double>& v) const {
  if (j < n_) {
    for (const auto& [i, a] : cols_[j]) v[i] += scale * a;
  } else {
    v[j - n_] += scale;
  }
}

double SimplexEngine::column_dot(std::size_t j, const std::vector<double>& y) const {
  if (j >= n_) return y[j - n_];
  double s = 0;
  for (const auto& [i, a] : cols_[j]) s += a * y[i];
  return s;
}

void SimplexEngine::recompute_primal() {
  std::vector<double> rhs = b_;
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] != VarState::Basic && x_[j] != 0.0) add_column(j, -x_[j], rhs);
  }
  ftran(rhs);
  for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] = rhs[k];
}

std::vector<double> SimplexEngine::compute_duals(const std::vector<double>& cost) const {
  std::vector<double> y(m_);
  for (std::size_t k = 0; k < m_; ++k) y[k] = cost[head_[k]];
  btran(y);
  return y;
}

double SimplexEngine::reduced_cost(std::size_t j, const std::vector<double>& y,
                                   const std::vector<double>& cost) const {
  return cost[j] - column_dot(j, y);
}

double SimplexEngine::infeasibility(std::size_t j) const {
  return std::max({lo_[j] - x_[j], x_[j] - up_[j], 0.0});
}

bool SimplexEngine::primal_feasible() const {
  for (std::size_t k = 0; k < m_; ++k) {
    if (infeasibility(head_[k]) > cfg_.tol_feas) return false;
  }
  return true;
}

bool SimplexEngine::dual_feasible(const std::vector<double>& cost) const {
  auto y = compute_duals(cost);
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
    const double d = reduced_cost(j, y, cost);
    if (state_[j] == VarState::AtLower && d < -cfg_.tol_opt) return false;
    if (state_[j] == VarState::AtUpper && d > cfg_.tol_opt) return false;
    if (state_[j] == VarState::AtZero && std::fabs(d) > cfg_.tol_opt) return false;
  }
  return true;
}

bool SimplexEngine::out_of_budget() const {
  if (iterations_ >= cfg_.iteration_limit) return true;
  return iterations_ % 32 == 0 && Clock::now() > deadline_;
}

// The pivot element computed from the column (ftran) and from the row
// (btran) must agree. On disagreement the factors are refreshed; with fresh
// factors the entering candidate is set aside until the next pivot.
bool SimplexEngine::stable_pivot(std::size_t q, double from_column, double from_row) {
  const double scale = std::max(1.0, std::fabs(from_column));
  if (std::fabs(from_column) > pivot_tol_ && std::fabs(from_column - from_row) <= kAgreeTol * scale) return true;
  if (!etas_.empty()) {
    factorize();
    recompute_primal();
  } else {
    rejected_[q] = 1;
  }
  return false;
}

void SimplexEngine::pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha) {
  std::fill(rejected_.begin(), rejected_.end(), 0);
  const std::size_t leaving = head_[r];
  etas_.push_back({r, alpha});
  head_[r] = q;
  pos_[q] = static_cast<long>(r);
  pos_[leaving] = -1;
  state_[q] = VarState::Basic;
  ++iterations_;
  if (etas_.size() >= kRefactorEvery) {
    factorize();
    recompute_primal();
  }
}

SimplexEngine::Outcome SimplexEngine::primal_simplex() {
  double best_obj = model::kInf;
  std::size_t stall = 0;
  bool bland = false;
  for (;;) {
    if (out_of_budget()) return Outcome::Limit;
    const auto y = compute_duals(cost_);
    std::size_t q = n_ + m_;
    double dq = 0, best = 0;
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
      if (rejected_[j]) continue;
      const double d = reduced_cost(j, y, cost_);
      const bool eligible = (state_[j] == VarState::AtLower && d < -cfg_.tol_opt) ||
                            (state_[j] == VarState::AtUpper && d > cfg_.tol_opt) ||
                            (state_[j] == VarState::AtZero && std::fabs(d) > cfg_.tol_opt);
      if (!eligible) continue;
      if (bland) {
        q = j;
        dq = d;
        break;
      }
      if (std::fabs(d) > best) {
        best = std::fabs(d);
        q = j;
        dq = d;
      }
    }
    if (q == n_ + m_) return Outcome::Done;
    const double dir = dq < 0 ? 1.0 : -1.0;

    std::vector<double> alpha(m_, 0.0);
    add_column(q, 1.0, alpha);
    ftran(alpha);

    // ratio test; basic k moves by -dir * theta * alpha[k]
    auto ratio = [&](std::size_t k, double slack_tol) {
      const double a = dir * alpha[k];
      const std::size_t j = head_[k];
      if (a > pivot_tol_ && finite(lo_[j])) return std::max(0.0, x_[j] - lo_[j] + slack_tol) / a;
      if (a < -pivot_tol_ && finite(up_[j])) return std::max(0.0, up_[j] - x_[j] + slack_tol) / -a;
      return model::kInf;
    };
    std::size_t r = m_;
    double theta = model::kInf;
    if (bland) {
      for (std::size_t k = 0; k < m_; ++k) {
        const double t = ratio(k, 0.0);
        if (t < theta || (t == theta && r < m_ && head_[k] < head_[r])) {
          theta = t;
          r = k;
        }
      }
    } else {
      double theta_max = model::kInf;
      for (std::size_t k = 0; k < m_; ++k) theta_max = std::min(theta_max, ratio(k, cfg_.tol_feas));
      double best_abs = 0;
      for (std::size_t k = 0; k < m_; ++k) {
        const double t = ratio(k, 0.0);
        if (finite(t) && t <= theta_max && std::fabs(alpha[k]) > best_abs) {
          best_abs = std::fabs(alpha[k]);
          theta = t;
          r = k;
        }
      }
    }
    const double range = up_[q] - lo_[q];
    if (r == m_ && !finite(range)) return Outcome::Unbounded;

    if (finite(range) && (r == m_ || range <= theta)) {
      // bound flip, no basis change
      for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] -= dir * range * alpha[k];
      state_[q] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
      x_[q] = dir > 0 ? up_[q] : lo_[q];
      ++iterations_;
      stall = 0;
      continue;
    }
    std::vector<double> rho(m_, 0.0);
    rho[r] = 1.0;
    btran(rho);
    if (!stable_pivot(q, alpha[r], column_dot(q, rho))) continue;
    for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] -= dir * theta * alpha[k];
    x_[q] += dir * theta;
    const std::size_t leaving = head_[r];
    if (dir * alpha[r] > 0) {
      x_[leaving] = lo_[leaving];
      state_[leaving] = VarState::AtLower;
    } else {
      x_[leaving] = up_[leaving];
      state_[leaving] = VarState::AtUpper;
    }
    pivot(r, q, alpha);

    const double obj = objective();
    if (obj < best_obj - 1e-12 * (1.0 + std::fabs(obj))) {
      best_obj = obj;
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      if (perturbed_) {
        bland = true;
      } else {
        perturb();
        stall = 0;
      }
    }
  }
}

// Widens the bounds of the basic variables by small random amounts so that
// degenerate basics move off their bounds.
void SimplexEngine::perturb() {
  saved_lo_ = lo_;
  saved_up_ = up_;
  perturbed_ = true;
  std::mt19937_64 rng(kPerturbSeed);
  auto draw = [&](double v) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return kPerturbSize * (1.0 + std::fabs(v)) * (1.0 + u);
  };
  for (std::size_t k = 0; k < m_; ++k) {
    const std::size_t j = head_[k];
    if (finite(lo_[j])) lo_[j] -= draw(lo_[j]);
    if (finite(up_[j])) up_[j] += draw(up_[j]);
  }
}

void SimplexEngine::unperturb() {
  if (!perturbed_) return;
  lo_ = saved_lo_;
  up_ = saved_up_;
  perturbed_ = false;
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] != VarState::Basic) place_nonbasic(j);
  }
}

SimplexEngine::Outcome SimplexEngine::dual_simplex(const std::vector<double>& cost) {
  double best_infeas = model::kInf;
  std::size_t stall = 0;
  bool bland = false;
  for (;;) {
    if (out_of_budget()) return Outcome::Limit;
    std::size_t r = m_;
    double worst = cfg_.tol_feas, total = 0;
    for (std::size_t k = 0; k < m_; ++k) {
      const double inf = infeasibility(head_[k]);
      total += inf;
      if (inf <= cfg_.tol_feas) continue;
      if (bland ? (r == m_ || head_[k] < head_[r]) : inf > worst) {
        worst = inf;
        r = k;
      }
    }
    if (r == m_) return Outcome::Done;
    const std::size_t jr = head_[r];
    const bool below = x_[jr] < lo_[jr];
    const double delta = below ? x_[jr] - lo_[jr] : x_[jr] - up_[jr];

    std::vector<double> rho(m_, 0.0);
    rho[r] = 1.0;
    btran(rho);
    const auto y = compute_duals(cost);

    struct Cand {
      std::size_t j;
      double at;
      double d;
    };
    std::vector<Cand> cands;
    double theta_max = model::kInf;
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::Basic || lo_[j] == up_[j] || rejected_[j]) continue;
      double at = column_dot(j, rho);
      if (below) at = -at;
      double d = reduced_cost(j, y, cost);
      bool eligible = false;
      if (state_[j] == VarState::AtLower && at > pivot_tol_) {
        d = std::max(d, 0.0);
        eligible = true;
        theta_max = std::min(theta_max, (d + cfg_.tol_opt) / at);
      } else if (state_[j] == VarState::AtUpper && at < -pivot_tol_) {
        d = std::min(d, 0.0);
        eligible = true;
        theta_max = std::min(theta_max, (d - cfg_.tol_opt) / at);
      } else if (state_[j] == VarState::AtZero && std::fabs(at) > pivot_tol_) {
        d = 0.0;
        eligible = true;
        theta_max = std::min(theta_max, cfg_.tol_opt / std::fabs(at));
      }
      if (eligible) cands.push_back({j, at, d});
    }
    if (cands.empty()) return Outcome::Infeasible;

    std::size_t q = n_ + m_;
    if (bland) {
      double theta = model::kInf;
      for (const auto& c : cands) {
        const double t = c.d / c.at;
        if (t < theta) {
          theta = t;
          q = c.j;
        }
      }
    } else {
      double best_abs = 0;
      for (const auto& c : cands) {
        if (c.d / c.at <= theta_max && std::fabs(c.at) > best_abs) {
          best_abs = std::fabs(c.at);
          q = c.j;
        }
      }
    }

    std::vector<double> alpha(m_, 0.0);
    add_column(q, 1.0, alpha);
    ftran(alpha);
    if (!stable_pivot(q, alpha[r], column_dot(q, rho))) continue;
    const double step = delta / alpha[r];
    for (std::size_t k = 0; k < m_; ++k) x_[head_[k]] -= step * alpha[k];
    x_[q] += step;
    x_[jr] = below ? lo_[jr] : up_[jr];
    state_[jr] = below ? VarState::AtLower : VarState::AtUpper;
    pivot(r, q, alpha);

    if (total < best_infeas - 1e-12 * (1.0 + total)) {
      best_infeas = total;
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      bland = true;
    }
  }
}

Status SimplexEngine::solve() {
  if (!factored_) factorize();
  recompute_primal();
  for (int round = 0; round < 4; ++round) {
    if (!primal_feasible()) {
      const auto& c = dual_feasible(cost_) ? cost_ : zero_cost_;
      switch (dual_simplex(c)) {
        case Outcome::Infeasible: return Status::Infeasible;
        case Outcome::Limit: return Status::Limit;
        default: break;
      }
    }
    const Outcome primal = primal_simplex();
    unperturb();
    switch (primal) {
      case Outcome::Unbounded: return Status::Unbounded;
      case Outcome::Limit: return Status::Limit;
      default: break;
    }
    factorize();
    recompute_primal();
    if (primal_feasible() && dual_feasible(cost_)) return Status::Optimal;
  }
  throw NumericalFailure("simplex failed to settle on a feasible optimal basis");
}

double SimplexEngine::objective() const {
  double z = 0;
  for (std::size_t j = 0; j < n_; ++j) z += cost_[j] * x_[j];
  return z;
}

std::vector<double> SimplexEngine::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + static_cast<long>(n_));
}

std::vector<double> SimplexEngine::duals() const { return compute_duals(cost_); }

}  // namespace rankone::solver::detail
