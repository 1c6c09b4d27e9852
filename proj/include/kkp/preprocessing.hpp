#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "kkp/instance.hpp"

namespace kkp {

// Maps rational weights to non-negative 64-bit integers. When `exact` the
// map is multiplication by the common denominator; otherwise weights are
// rounded up and the budget down, so every scaled-feasible set is feasible.
struct WeightScale {
  Rational factor = 1;
  bool exact = true;
  std::int64_t budget = 0;

  std::int64_t scale(const Rational& weight) const;
};

// Chooses a scale for `items` (all assumed to fit) under `budget`.
WeightScale choose_weight_scale(const std::vector<Item>& items, const Rational& budget);

struct HalfApproximation {
  Rational value;                // OPT' with OPT' <= OPT <= 2 OPT'
  std::vector<ItemId> solution;  // a feasible set achieving `value`
};

// Rounds the LP relaxation down to its integral part and compares with the
// best single fitting item. Returns value 0 when no item has positive profit
// and fits.
HalfApproximation half_approx_opt(const Instance& inst);

// Cached powers (1 + eps)^i for integer i of either sign.
class GeometricPowers {
 public:
  explicit GeometricPowers(const Rational& eps);
  const Rational& get(long exponent);
  const Rational& ratio() const { return ratio_; }

 private:
  Rational ratio_;
  std::map<long, Rational> cache_;
  std::mutex mu_;
};

struct LargeClass {
  long index = 0;
  Rational rounded_profit;               // eps (1+eps)^index OPT^
  std::vector<Item> members;             // weight ascending, then id
  std::vector<Rational> prefix_weights;  // prefix_weights[j] = sum of j lightest
  std::vector<std::int64_t> scaled_prefix;  // same on the integer scale, saturating
};

struct SmallClass {
  long index = 0;
  Rational rounded_profit;   // eps (1+eps)^-index OPT^
  double relative_profit = 0;  // rounded_profit / OPT^
  std::vector<Item> members;   // the K lightest of the class, weight ascending
};

struct Partition {
  Rational opt_lower_bound;  // OPT'
  Rational opt_estimate;     // 2 OPT'
  Rational epsilon;
  std::int64_t z = 0;
  std::int64_t cardinality = 0;
  std::vector<LargeClass> large_classes;  // index ascending, non-empty
  std::vector<SmallClass> small_classes;  // index ascending, non-empty
  std::vector<ItemId> discarded;          // below threshold or oversize
  WeightScale scale;
  std::vector<ItemId> half_solution;      // items achieving opt_lower_bound

  std::size_t small_item_count() const;
};

// z = min(K, ceil(1/eps)).
std::int64_t cardinality_cap(std::int64_t cardinality, const Rational& eps);

// Index i >= 1 with ratio in ((1+eps)^(i-1), (1+eps)^i]; requires ratio > 1.
long large_class_index(const Rational& ratio, GeometricPowers& powers);
// Index i >= 1 with ratio in [(1+eps)^(i-1), (1+eps)^i); requires ratio >= 1.
long small_class_index(const Rational& ratio, GeometricPowers& powers);

// Throws std::domain_error when OPT' = 0 (the empty set is optimal) and
// std::invalid_argument unless 0 < eps < 1.
Partition build_partition(const Instance& inst, const Rational& eps);

}  // namespace kkp
