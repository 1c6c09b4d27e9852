#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kkp/instance.hpp"
#include "kkp/large_items.hpp"
#include "kkp/small_items.hpp"

namespace kkp {

struct SolveOptions {
  // Accuracy of the pipeline; defaults to eps_user / 8.
  std::optional<Rational> internal_eps;
  bool parallel = true;
  ConvolveOptions convolve;
};

struct SplitCandidate {
  std::int64_t x = 0;  // grid index of the large-item profit target
  std::int64_t k = 0;  // large-item cardinality
  std::int64_t large_weight = 0;
  double small_value = 0;  // relative to OPT^
  double total = 0;        // relative to OPT^
};

struct SolveDiagnostics {
  Rational internal_eps;
  std::int64_t z = 0;
  std::size_t large_classes = 0;
  std::size_t small_classes = 0;
  std::size_t small_items = 0;
  std::size_t discarded = 0;
  std::int64_t table_cells = 0;
  std::size_t candidates = 0;
  SplitCandidate best;
  ConvolveStats convolve;
  std::size_t repaired = 0;  // items dropped by the exact feasibility recheck
};

// Internal accuracy used for a given user accuracy.
Rational default_internal_eps(const Rational& eps_user);

// Evaluates every split (x, k), x in X' and k in [0, z], and keeps the best.
// Ties go to the smaller k, then the smaller x.
SplitCandidate best_split(const LargeTables& tables, SmallSolver& small, std::int64_t budget,
                          std::int64_t cardinality, bool parallel, std::size_t* evaluated = nullptr);

// Ids with x = 1 in a small-item evaluation; fractional entries are dropped.
std::vector<ItemId> retrieve_small(const SmallEval& eval);

// Full pipeline. At-most-K instances are solved directly; exactly-K instances
// through the profit-shift conversion with an accuracy tightened so that the
// guarantee transfers back. Throws std::invalid_argument on structural errors
// or eps_user outside (0, 1).
Solution solve(const Instance& inst, const Rational& eps_user, const SolveOptions& options = {},
               SolveDiagnostics* diag = nullptr);

// Exactly-K feasibility: the K lightest items fit.
bool exact_feasible(const Instance& inst);

// Largest single profit that extends to a feasible K-item set; zero when no
// positive-profit item does. It lies in [OPT/K, OPT] for the exact problem.
Rational exact_lower_bound(const Instance& inst);

}  // namespace kkp
