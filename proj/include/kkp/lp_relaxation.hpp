#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kkp {

// One LP column group: `count` identical copies of an item, each relaxed to
// [0, 1]. The aggregated amount of the group lies in [0, count].
struct LpUnit {
  double profit = 0;
  double weight = 0;
  std::int64_t count = 1;
};

struct LpResult {
  double value = 0;       // primal objective of `amount`
  double dual_value = 0;  // Lagrangian bound at `multiplier`; >= optimum
  double multiplier = 0;  // budget multiplier certifying the primal
  std::vector<double> amount;
  int fractional_groups = 0;  // groups whose amount is not integral
  bool budget_binding = false;
};

// Lagrangian of the budget row with the cardinality row kept explicit:
//   L(mu) = mu * budget + max { sum (p - mu w) x : sum x <= cap, x in box }.
// Convex and piecewise linear in mu; the LP optimum is min over mu >= 0.
double budget_lagrangian(std::span<const LpUnit> units, double multiplier, double budget, std::int64_t cap);

// Exact optimum of
//   max sum p x   s.t.   sum w x <= budget,  sum x <= cap,  0 <= x <= count
// by a search on the budget multiplier. The returned point is a vertex: at
// most two groups are fractional, and when two are, their amounts sum to an
// integer. Ties in the greedy order are broken by weight then by index.
LpResult solve_budget_cardinality_lp(std::span<const LpUnit> units, double budget, std::int64_t cap);

}  // namespace kkp
