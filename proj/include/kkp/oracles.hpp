#pragma once

#include <cstdint>
#include <vector>

#include "kkp/instance.hpp"
#include "kkp/large_items.hpp"

namespace kkp {

// Ground-truth solvers. None of them shares code with the module it checks.

enum class OracleMethod { kBruteForce, kExactDP, kNaiveConvolve, kLpVertex, kLinearScan };

struct OracleResult {
  Rational value;
  std::vector<ItemId> solution;  // sorted; empty when not tracked
  bool feasible = true;          // false for an infeasible exactly-K instance
  bool has_solution = false;
  OracleMethod method = OracleMethod::kBruteForce;
};

inline constexpr std::size_t kBruteForceLimit = 22;

// Depth-first enumeration of all subsets of at most K (exactly K) items.
// Throws std::length_error above kBruteForceLimit items.
OracleResult brute_force(const Instance& inst);

// Cardinality- and weight-indexed DP. Requires integer weights; the budget is
// floored. Throws std::invalid_argument on fractional weights and
// std::length_error when n (K+1) (W+1) exceeds `cell_budget`.
OracleResult exact_dp(const Instance& inst, std::int64_t cell_budget = 2'000'000'000);

struct NaiveConvolution {
  WeightTable table;
  std::vector<std::uint16_t> theta;  // ceil(p1 / step) of the winning split
};

// out(p, k) = min over p1 <= p, k1 <= k of a(p1, k1) + b(p - p1, k - k1).
// Among equal minima the smallest class count ceil(p1 / step) wins.
NaiveConvolution naive_convolve(const WeightTable& a, const WeightTable& b, std::int64_t step);

// Per-column argmin over theta of a(theta * step, theta) + acc(rest), read
// directly from the tables; smallest theta on ties.
std::vector<std::int32_t> column_scan(const Slice& slice, const WeightTable& base, const WeightTable& acc);

struct LpVertexResult {
  long double value = 0;
  std::vector<long double> x;
};

inline constexpr std::size_t kLpVertexLimit = 12;

// max c x  s.t.  w x <= budget, sum x <= cap, 0 <= x <= upper, by enumerating
// basic solutions: every variable at a bound except at most two, which are
// pinned by the two rows. Throws std::length_error above kLpVertexLimit.
LpVertexResult lp_vertex(const std::vector<double>& profit, const std::vector<double>& weight,
                         const std::vector<double>& upper, double budget, double cap);

}  // namespace kkp
