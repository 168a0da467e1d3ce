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
#include <random>

#include "rankone/errors.hpp"
#include "rankone/pooling.hpp"

namespace rankone::pooling {

namespace {

// Platform-independent draws on top of the standard engine.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return p >= 1.0 || unit() < p; }
  double half_steps(double lo, double hi) { return std::round(2.0 * (lo + (hi - lo) * unit())) / 2.0; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

void check_params(const GeneratorParams& p) {
  auto fail = [](const std::string& m) { throw ParamError("generate_random: " + m); };
  if (p.nS < 1 || p.nT < 1 || p.nI < 0) fail("need nS >= 1, nT >= 1, nI >= 0");
  if (p.K < 0) fail("K must be non-negative");
  for (double d : {p.density_si, p.density_it})
    if (!(d > 0 && d <= 1)) fail("layer densities must lie in (0, 1]");
  for (double d : {p.density_ii, p.density_st})
    if (!(d >= 0 && d <= 1)) fail("optional densities must lie in [0, 1]");
  if (!(p.mu_lo_prob >= 0 && p.mu_lo_prob <= 1)) fail("mu_lo_prob must lie in [0, 1]");
  if (!(p.demand_prob >= 0 && p.demand_prob <= 1)) fail("demand_prob must lie in [0, 1]");
  if (!(p.demand_frac >= 0 && p.demand_frac <= 1)) fail("demand_frac must lie in [0, 1]");
  if (!(p.arc_u_frac_lo > 0 && p.arc_u_frac_lo <= p.arc_u_frac_hi && p.arc_u_frac_hi <= 1))
    fail("arc capacity fractions need 0 < lo <= hi <= 1");
  const std::pair<double, double> ranges[] = {{p.U_lo, p.U_hi},
                                              {p.lambda_lo, p.lambda_hi},
                                              {p.mu_hi_lo, p.mu_hi_hi},
                                              {p.source_cost_lo, p.source_cost_hi},
                                              {p.price_lo, p.price_hi}};
  for (const auto& [lo, hi] : ranges)
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) fail("every range needs finite lo <= hi");
  if (p.U_lo <= 0) fail("capacities must be positive");
}

}  // namespace

PoolingInstance generate_random(const GeneratorParams& p, std::uint64_t seed) {
  check_params(p);
  Draw rng(seed);
  PoolingInstance inst;
  std::vector<std::string> keys;
  for (int k = 1; k <= p.K; ++k) keys.push_back("k" + std::to_string(k));

  std::vector<double> source_cost, price;
  for (int s = 1; s <= p.nS; ++s) {
    Source src;
    src.id = "s" + std::to_string(s);
    src.U = rng.half_steps(p.U_lo, p.U_hi);
    double quality = 0;
    for (const auto& k : keys) {
      src.lambda[k] = rng.half_steps(p.lambda_lo, p.lambda_hi);
      if (p.lambda_hi > p.lambda_lo) quality += (p.lambda_hi - src.lambda[k]) / (p.lambda_hi - p.lambda_lo);
    }
    inst.sources.push_back(std::move(src));
    // Cleaner sources (low lambda) cost more.
    const double share = keys.empty() ? rng.unit() : quality / static_cast<double>(keys.size());
    const double jitter = 0.15 * (2 * rng.unit() - 1);
    const double cost = p.source_cost_lo + (p.source_cost_hi - p.source_cost_lo) * std::clamp(share + jitter, 0.0, 1.0);
    source_cost.push_back(std::round(2 * cost) / 2);
  }
  for (int i = 1; i <= p.nI; ++i) inst.pools.push_back({"p" + std::to_string(i), rng.half_steps(p.U_lo, p.U_hi), 0.0});
  for (int t = 1; t <= p.nT; ++t) {
    Terminal term;
    term.id = "t" + std::to_string(t);
    term.U = rng.half_steps(p.U_lo, p.U_hi);
    if (rng.chance(p.demand_prob)) term.L = std::round(2 * p.demand_frac * term.U) / 2;
    for (const auto& k : keys) {
      const double hi = rng.half_steps(p.mu_hi_lo, p.mu_hi_hi);
      term.mu_hi[k] = hi;
      if (rng.chance(p.mu_lo_prob)) term.mu_lo[k] = std::max(0.0, hi - rng.half_steps(1.0, 3.0));
    }
    inst.terminals.push_back(std::move(term));
    price.push_back(rng.half_steps(p.price_lo, p.price_hi));
  }

  auto add_arc = [&](const std::string& from, double Uf, const std::string& to, double Ut, double cost) {
    const double frac = p.arc_u_frac_lo + (p.arc_u_frac_hi - p.arc_u_frac_lo) * rng.unit();
    inst.arcs.push_back({from, to, 0.0, std::round(2 * frac * std::min(Uf, Ut)) / 2, cost});
  };
  const auto nS = static_cast<std::size_t>(p.nS), nI = static_cast<std::size_t>(p.nI),
             nT = static_cast<std::size_t>(p.nT);
  std::vector<bool> has_in(nI, false), has_out(nI, false);
  for (std::size_t s = 0; s < nS; ++s)
    for (std::size_t i = 0; i < nI; ++i)
      if (rng.chance(p.density_si)) {
        add_arc(inst.sources[s].id, inst.sources[s].U, inst.pools[i].id, inst.pools[i].U, source_cost[s]);
        has_in[i] = true;
      }
  for (std::size_t i = 0; i < nI; ++i)
    for (std::size_t j = i + 1; j < nI; ++j)
      if (p.density_ii > 0 && rng.chance(p.density_ii)) {
        add_arc(inst.pools[i].id, inst.pools[i].U, inst.pools[j].id, inst.pools[j].U, 0.0);
        has_out[i] = has_in[j] = true;
      }
  for (std::size_t i = 0; i < nI; ++i)
    for (std::size_t t = 0; t < nT; ++t)
      if (rng.chance(p.density_it)) {
        add_arc(inst.pools[i].id, inst.pools[i].U, inst.terminals[t].id, inst.terminals[t].U, -price[t]);
        has_out[i] = true;
      }
  for (std::size_t s = 0; s < nS; ++s)
    for (std::size_t t = 0; t < nT; ++t)
      if (p.density_st > 0 && rng.chance(p.density_st))
        add_arc(inst.sources[s].id, inst.sources[s].U, inst.terminals[t].id, inst.terminals[t].U,
                source_cost[s] - price[t]);
  for (std::size_t i = 0; i < nI; ++i) {
    if (!has_in[i]) {
      const auto s = rng.index(nS);
      add_arc(inst.sources[s].id, inst.sources[s].U, inst.pools[i].id, inst.pools[i].U, source_cost[s]);
    }
    if (!has_out[i]) {
      const auto t = rng.index(nT);
      add_arc(inst.pools[i].id, inst.pools[i].U, inst.terminals[t].id, inst.terminals[t].U, -price[t]);
    }
  }
  return inst;
}

}  // namespace rankone::pooling
