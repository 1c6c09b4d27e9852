#pragma once

// Test-side reference computations. These deliberately avoid the library's
// solver and oracle code paths: plain bitmask enumeration and textbook DPs.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "kkp/generator.hpp"
#include "kkp/instance.hpp"
#include "kkp/small_items.hpp"

namespace ref {

using kkp::Instance;
using kkp::Rational;

struct Optimum {
  bool feasible = false;
  Rational value = 0;
  std::uint32_t mask = 0;
};

// Exact optimum over all subsets, as a bitmask sweep.
inline Optimum enumerate(const Instance& inst) {
  const std::size_t n = inst.items.size();
  const bool exact = inst.mode == kkp::CardinalityMode::kExactly;
  Optimum best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const std::int64_t count = __builtin_popcount(mask);
    if (count > inst.cardinality || (exact && count != inst.cardinality)) continue;
    Rational w = 0, p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        w += inst.items[i].weight;
        p += inst.items[i].profit;
      }
    }
    if (w > inst.budget) continue;
    if (!best.feasible || p > best.value) {
      best.feasible = true;
      best.value = p;
      best.mask = mask;
    }
  }
  return best;
}

// max sum of profits over at most k items with integer weight sum <= omega.
inline double best_profit_dp(const std::vector<double>& profit, const std::vector<std::int64_t>& weight,
                             std::int64_t omega, std::int64_t k) {
  if (omega < 0) return 0;
  const double none = -std::numeric_limits<double>::infinity();
  const std::size_t cols = static_cast<std::size_t>(omega) + 1;
  std::vector<double> dp(static_cast<std::size_t>(k + 1) * cols, none);
  for (std::size_t w = 0; w < cols; ++w) dp[w] = 0;
  for (std::size_t i = 0; i < profit.size(); ++i) {
    if (weight[i] > omega) continue;
    for (std::int64_t c = k; c >= 1; --c) {
      for (std::int64_t w = omega; w >= weight[i]; --w) {
        double from = dp[static_cast<std::size_t>(c - 1) * cols + static_cast<std::size_t>(w - weight[i])];
        double& to = dp[static_cast<std::size_t>(c) * cols + static_cast<std::size_t>(w)];
        if (from != none) to = std::max(to, from + profit[i]);
      }
    }
  }
  double best = 0;
  for (std::int64_t c = 0; c <= k; ++c) best = std::max(best, dp[static_cast<std::size_t>(c) * cols + cols - 1]);
  return best;
}

inline double small_phi_exact(const std::vector<kkp::SmallItem>& items, std::int64_t omega, std::int64_t k) {
  std::vector<double> p;
  std::vector<std::int64_t> w;
  for (const auto& it : items) {
    p.push_back(it.profit);
    w.push_back(it.weight);
  }
  return best_profit_dp(p, w, omega, k);
}

// Sum of the ell largest values.
inline double top_sum(std::vector<double> v, std::int64_t ell) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0;
  for (std::size_t i = 0; i < v.size() && static_cast<std::int64_t>(i) < ell; ++i) s += v[i];
  return s;
}

inline kkp::Distribution distribution_for(std::size_t i) {
  static const kkp::Distribution all[] = {kkp::Distribution::kUniform, kkp::Distribution::kCorrelated,
                                          kkp::Distribution::kSubsetSum};
  return all[i % 3];
}

// Mixed-distribution instance with n, K and budget fraction drawn from rng.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n, std::int64_t max_k, bool integer_weights,
                                kkp::CardinalityMode mode = kkp::CardinalityMode::kAtMost) {
  kkp::GeneratorParams p;
  p.n = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  p.cardinality = std::uniform_int_distribution<std::int64_t>(1, max_k)(rng);
  p.distribution = distribution_for(rng());
  p.integer_weights = integer_weights;
  p.max_weight = std::uniform_int_distribution<std::int64_t>(5, 200)(rng);
  p.max_profit = std::uniform_int_distribution<std::int64_t>(5, 200)(rng);
  p.budget_num = std::uniform_int_distribution<std::int64_t>(1, 9)(rng);
  p.budget_den = 10;
  p.mode = mode;
  return kkp::generate_instance(p, rng());
}

}  // namespace ref
