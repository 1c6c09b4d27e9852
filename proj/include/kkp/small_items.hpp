#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kkp/preprocessing.hpp"

namespace kkp {

// A small item on the solver scales: profit relative to OPT^ (the rounded
// class profit) and weight on the integer weight scale.
struct SmallItem {
  ItemId id = 0;
  double profit = 0;
  std::int64_t weight = 0;
  long profit_class = 0;
};

// All pruned small-class members, ordered by profit class, weight, then id.
std::vector<SmallItem> flatten_small(const Partition& part);

struct SmallEval {
  double value = 0;
  double dual_value = 0;  // LP bound of the relaxed part (equals value at optimum)
  double multiplier = 0;
  std::vector<std::pair<ItemId, double>> fractional_solution;  // 0 < x < 1
  std::vector<ItemId> integral_ids;                            // x = 1, sorted
  std::int64_t ell = 0;                                        // Upsilon2 split
};

// Exact LP: max sum p x, sum w x <= omega, sum x <= k, 0 <= x <= 1.
SmallEval upsilon1(std::span<const SmallItem> items, std::int64_t omega, std::int64_t k);

// Items sharing profit class and rounded weight exponent.
struct SmallType {
  long profit_class = 0;
  long weight_exponent = 0;  // j in (eps omega / K)(1+eps)^j
  double profit = 0;
  double weight = 0;            // rounded weight
  std::vector<ItemId> members;  // by weight, then id
};

struct RoundedSmall {
  std::int64_t omega = 0;
  std::int64_t threshold = 0;   // floor(eps omega / K): S1 holds weights <= threshold
  std::vector<SmallItem> s1;
  std::vector<SmallType> s2;    // ordered by (profit class, exponent)
};

// Splits at eps omega / K and rounds S2 weights up to (eps omega / K)(1+eps)^j.
RoundedSmall round_small_weights(std::span<const SmallItem> items, std::int64_t omega, const Rational& eps,
                                 std::int64_t cardinality);

// S1 members of each query weight, bucketed by consecutive query weights.
class WeightBuckets {
 public:
  WeightBuckets() = default;
  WeightBuckets(std::span<const SmallItem> items, std::vector<std::int64_t> omegas, const Rational& eps,
                std::int64_t cardinality);

  // Position of omega among the sorted query weights, or -1.
  std::ptrdiff_t find(std::int64_t omega) const;
  const std::vector<std::int64_t>& omegas() const { return omegas_; }
  // Sum of the ell largest profits of S1(omegas()[query]).
  double top_sum(std::size_t query, std::int64_t ell) const;
  std::int64_t available(std::size_t query) const { return available_[query]; }
  const std::vector<SmallItem>& bucket(std::size_t i) const { return buckets_[i]; }
  // partial(i)[j] = sum of the j most profitable members of bucket i.
  const std::vector<double>& partial(std::size_t i) const { return partial_[i]; }

 private:
  std::vector<std::int64_t> omegas_;
  std::vector<std::vector<SmallItem>> buckets_;  // profit descending, id ascending
  std::vector<std::vector<double>> partial_;
  std::vector<std::int64_t> available_;
  std::vector<double> distinct_profits_;  // descending
};

// Top-ell profit sum of S1(omega) by direct sorting; the ids are returned when
// `ids` is non-null.
double upsilon3_direct(std::span<const SmallItem> items, std::int64_t omega, const Rational& eps,
                       std::int64_t cardinality, std::int64_t ell, std::vector<ItemId>* ids = nullptr);

// L(mu) = mu (1 - eps) omega + top-cap positive adjusted profits of the types.
double dual_value(double mu, const RoundedSmall& rounded, const Rational& eps, std::int64_t cap);

// min over mu of the dual; recovers a primal vertex with one or two
// fractional units.
SmallEval upsilon4(const RoundedSmall& rounded, const Rational& eps, std::int64_t cap);

// Candidate multipliers (1+eps)^b ((1+eps)^c - 1) / ((1+eps)^d - 1) with
// |b| <= b_bound, 0 < |c|, |d| <= cd_bound, plus 0; sorted and deduplicated
// exactly.
struct BreakpointSet {
  std::vector<double> values;

  static BreakpointSet make(const Rational& eps, long b_bound, long cd_bound);
  // True when some member lies within relative distance `tol` of mu.
  bool contains(double mu, double tol) const;
};

// Small-item approximation function with memoised evaluation.
class SmallSolver {
 public:
  explicit SmallSolver(const Partition& part);

  // Precomputes the buckets for the given residual weights.
  void prepare(std::vector<std::int64_t> omegas);

  bool uses_upsilon1() const { return use_upsilon1_; }
  std::span<const SmallItem> items() const { return items_; }

  double upsilon3(std::int64_t omega, std::int64_t ell) const;
  double upsilon5(std::int64_t omega, std::int64_t ell, std::int64_t k) const;
  SmallEval upsilon2(std::int64_t omega, std::int64_t k) const;
  double upsilon2_linear(std::int64_t omega, std::int64_t k) const;

  // Upsilon1 or Upsilon2 depending on K versus 1/eps; memoised per (omega, k).
  double phi_dag(std::int64_t omega, std::int64_t k);
  // Same dispatch with the primal solution attached.
  SmallEval evaluate(std::int64_t omega, std::int64_t k) const;

 private:
  double upsilon5_from(const RoundedSmall& rounded, std::int64_t omega, std::int64_t ell, std::int64_t k) const;
  double upsilon2_search(const RoundedSmall& rounded, std::int64_t omega, std::int64_t k, std::int64_t* ell) const;

  std::vector<SmallItem> items_;
  Rational eps_;
  std::int64_t cardinality_ = 0;
  bool use_upsilon1_ = true;
  WeightBuckets buckets_;

  struct KeyHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::int64_t>()(k.first) * 1000003u ^ std::hash<std::int64_t>()(k.second);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, double, KeyHash> memo_;
  std::mutex memo_mu_;
};

}  // namespace kkp
