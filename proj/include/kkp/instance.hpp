#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kkp/rational.hpp"

namespace kkp {

using ItemId = std::int64_t;

enum class CardinalityMode { kAtMost, kExactly };

struct Item {
  Item() = default;
  Item(ItemId i, Rational p, Rational w) : id(i), profit(std::move(p)), weight(std::move(w)) {}
  // mpq_class moves do not throw but are not marked; without this vectors
  // of items copy on growth.
  Item(const Item&) = default;
  Item(Item&&) noexcept = default;
  Item& operator=(const Item&) = default;
  Item& operator=(Item&&) noexcept = default;

  ItemId id = 0;
  Rational profit;
  Rational weight;

  friend bool operator==(const Item&, const Item&) = default;
};

struct Instance {
  std::vector<Item> items;
  Rational budget;
  std::int64_t cardinality = 1;
  CardinalityMode mode = CardinalityMode::kAtMost;

  friend bool operator==(const Instance&, const Instance&) = default;
};

enum class SolveStatus {
  kOptimalityCertified,  // approximation guarantee applies
  kTrivial,              // nothing with positive profit fits; empty set is optimal
  kInfeasible,           // exact-K mode with no K items fitting the budget
};

struct Solution {
  std::vector<ItemId> selected;  // sorted ascending
  Rational total_profit;
  Rational total_weight;
  std::int64_t count = 0;
  Rational epsilon_used;
  // Value of the feasible solution behind the OPT estimate; OPT lies in
  // [opt_lower_bound, 2 * opt_lower_bound]. Zero for trivial instances.
  Rational opt_lower_bound;
  SolveStatus status = SolveStatus::kOptimalityCertified;
};

struct ValidationReport {
  std::vector<std::string> errors;    // fatal
  std::vector<std::string> warnings;  // informational
  std::vector<ItemId> oversize;       // items with weight > budget

  bool ok() const { return errors.empty(); }
};

// Checks structural invariants. Oversize items are reported, never removed.
ValidationReport validate_instance(const Instance& inst);

struct FeasibilityReport {
  Rational profit;
  Rational weight;
  std::int64_t count = 0;
  bool feasible = false;
  Rational weight_excess;            // max(0, weight - budget)
  std::int64_t cardinality_excess = 0;  // positive when too many, negative when too few (exact mode)
};

// Recomputes the selection's sums exactly. Throws std::invalid_argument on
// an unknown or repeated id.
FeasibilityReport evaluate_solution(const Instance& inst, const std::vector<ItemId>& selected);
FeasibilityReport evaluate_solution(const Instance& inst, const Solution& sol);

struct ConvertedInstance {
  Instance instance;  // at-most-K, every profit shifted by `shift`
  Rational shift;     // 1 + sum of original profits
};

// Exact-K to at-most-K by a uniform profit shift. The exact objective of a
// K-item selection equals its shifted objective minus K * shift.
ConvertedInstance convert_exact_to_atmost(const Instance& inst);

const char* mode_name(CardinalityMode mode);
std::optional<CardinalityMode> parse_mode(const std::string& text);

}  // namespace kkp
