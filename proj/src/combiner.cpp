#include "kkp/combiner.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace kkp {
namespace {

bool lighter(const Item& a, const Item& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.id < b.id;
}

Solution finish(const Instance& inst, std::vector<ItemId> ids, const Rational& eps_user, const Rational& lower,
                SolveStatus status) {
  std::sort(ids.begin(), ids.end());
  Solution sol;
  sol.selected = std::move(ids);
  FeasibilityReport rep = evaluate_solution(inst, sol.selected);
  sol.total_profit = rep.profit;
  sol.total_weight = rep.weight;
  sol.count = rep.count;
  sol.epsilon_used = eps_user;
  sol.opt_lower_bound = lower;
  sol.status = status;
  return sol;
}

// Drops small items, heaviest first, until the selection is feasible. The
// relaxations work in floating point, so this only triggers on rounding.
std::size_t repair(const Instance& inst, std::vector<ItemId>& large, std::vector<ItemId>& small) {
  std::unordered_map<ItemId, const Item*> by_id;
  for (const Item& item : inst.items) by_id.emplace(item.id, &item);
  Rational weight = 0;
  for (ItemId id : large) weight += by_id.at(id)->weight;
  for (ItemId id : small) weight += by_id.at(id)->weight;
  std::sort(small.begin(), small.end(), [&](ItemId a, ItemId b) { return lighter(*by_id.at(a), *by_id.at(b)); });
  std::size_t dropped = 0;
  while (!small.empty() &&
         (weight > inst.budget || static_cast<std::int64_t>(large.size() + small.size()) > inst.cardinality)) {
    weight -= by_id.at(small.back())->weight;
    small.pop_back();
    ++dropped;
  }
  if (weight > inst.budget) throw std::logic_error("large-item retrieval exceeds the budget");
  return dropped;
}

Solution solve_at_most(const Instance& inst, const Rational& eps_user, const Rational& internal,
                       const SolveOptions& options, SolveDiagnostics* diag) {
  Partition part;
  try {
    part = build_partition(inst, internal);
  } catch (const std::domain_error&) {
    return finish(inst, {}, eps_user, 0, SolveStatus::kTrivial);
  }
  ConvolveOptions conv = options.convolve;
  conv.parallel = conv.parallel && options.parallel;
  LargeTables tables = build_phi_L(part, conv);
  SmallSolver small(part);
  std::size_t evaluated = 0;
  SplitCandidate best = best_split(tables, small, part.scale.budget, inst.cardinality, options.parallel, &evaluated);

  std::vector<ItemId> large_ids = retrieve_large(tables, part, best.x, best.k);
  std::int64_t omega = part.scale.budget - best.large_weight;
  std::vector<ItemId> small_ids = retrieve_small(small.evaluate(omega, inst.cardinality - best.k));
  std::size_t dropped = repair(inst, large_ids, small_ids);
  large_ids.insert(large_ids.end(), small_ids.begin(), small_ids.end());

  if (diag) {
    diag->internal_eps = internal;
    diag->z = part.z;
    diag->large_classes = part.large_classes.size();
    diag->small_classes = part.small_classes.size();
    diag->small_items = part.small_item_count();
    diag->discarded = part.discarded.size();
    diag->table_cells = tables.cell_count();
    diag->candidates = evaluated;
    diag->best = best;
    diag->convolve = tables.stats;
    diag->repaired = dropped;
  }
  return finish(inst, std::move(large_ids), eps_user, part.opt_lower_bound, SolveStatus::kOptimalityCertified);
}

// Largest 2^-m not above `bound`.
Rational power_of_two_below(const Rational& bound) {
  Rational v = 1;
  while (v > bound) v /= 2;
  return v;
}

Solution solve_exact(const Instance& inst, const Rational& eps_user, const SolveOptions& options,
                     SolveDiagnostics* diag) {
  if (!exact_feasible(inst)) return finish(inst, {}, eps_user, 0, SolveStatus::kInfeasible);
  std::vector<Item> sorted = inst.items;
  std::sort(sorted.begin(), sorted.end(), lighter);
  const std::size_t K = static_cast<std::size_t>(inst.cardinality);

  Rational lower = exact_lower_bound(inst);
  if (lower == 0) {
    std::vector<ItemId> ids;
    for (std::size_t i = 0; i < K; ++i) ids.push_back(sorted[i].id);
    return finish(inst, std::move(ids), eps_user, 0, SolveStatus::kTrivial);
  }

  ConvertedInstance conv = convert_exact_to_atmost(inst);
  std::vector<Rational> profits;
  for (const Item& item : inst.items) profits.push_back(item.profit);
  std::sort(profits.begin(), profits.end(), std::greater<>());
  Rational top = 0;
  for (std::size_t i = 0; i < K && i < profits.size(); ++i) top += profits[i];
  // A (1 - eps_conv) answer on the shifted scale keeps K items and loses at
  // most eps_user * lower <= eps_user * OPT on the original scale.
  Rational eps_conv = eps_user * lower / (conv.shift * inst.cardinality + top);
  Rational internal = options.internal_eps ? *options.internal_eps : power_of_two_below(eps_conv / 8);

  Solution shifted = solve_at_most(conv.instance, eps_conv, internal, options, diag);
  std::vector<ItemId> ids = shifted.selected;
  if (ids.size() < K) {
    // Only reachable with a user-supplied internal accuracy: top up with the
    // lightest unused items, which keeps the set feasible.
    std::vector<ItemId> lightest;
    for (std::size_t i = 0; i < K; ++i) lightest.push_back(sorted[i].id);
    Solution sol = finish(inst, ids, eps_user, lower, SolveStatus::kOptimalityCertified);
    for (const Item& item : sorted) {
      if (ids.size() >= K) break;
      if (std::find(ids.begin(), ids.end(), item.id) != ids.end()) continue;
      if (sol.total_weight + item.weight > inst.budget) continue;
      ids.push_back(item.id);
      sol.total_weight += item.weight;
    }
    if (ids.size() < K) ids = lightest;
  }
  return finish(inst, std::move(ids), eps_user, lower, SolveStatus::kOptimalityCertified);
}

}  // namespace

Rational default_internal_eps(const Rational& eps_user) {
  Rational e = eps_user / 8;
  e.canonicalize();
  return e;
}

SplitCandidate best_split(const LargeTables& tables, SmallSolver& small, std::int64_t budget,
                          std::int64_t cardinality, bool parallel, std::size_t* evaluated) {
  const std::int64_t z = tables.table.z();
  const double unit = to_double(tables.grid.epsilon) / static_cast<double>(z);
  std::vector<SplitCandidate> cands;
  for (std::int64_t k = 0; k <= z; ++k) {
    for (std::int64_t x : tables.grid.reduced_indices()) {
      std::int64_t w = tables.table.at(x, k);
      if (w == kInfWeight || w > budget) continue;
      cands.push_back({x, k, w, 0.0, 0.0});
    }
  }
  std::vector<std::int64_t> omegas;
  omegas.reserve(cands.size());
  for (const SplitCandidate& c : cands) omegas.push_back(budget - c.large_weight);
  small.prepare(std::move(omegas));

  const std::int64_t count = static_cast<std::int64_t>(cands.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    SplitCandidate& c = cands[static_cast<std::size_t>(i)];
    c.small_value = small.phi_dag(budget - c.large_weight, cardinality - c.k);
    c.total = static_cast<double>(c.x) * unit + c.small_value;
  }
  if (evaluated) *evaluated = cands.size();
  // Candidates are ordered by (k, x); the first maximum wins.
  SplitCandidate best = cands.front();
  for (const SplitCandidate& c : cands) {
    if (c.total > best.total) best = c;
  }
  return best;
}

std::vector<ItemId> retrieve_small(const SmallEval& eval) { return eval.integral_ids; }

bool exact_feasible(const Instance& inst) {
  const std::size_t K = static_cast<std::size_t>(inst.cardinality);
  if (inst.items.size() < K) return false;
  std::vector<Rational> weights;
  for (const Item& item : inst.items) weights.push_back(item.weight);
  std::nth_element(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(K - 1), weights.end());
  Rational sum = 0;
  for (std::size_t i = 0; i < K; ++i) sum += weights[i];
  return sum <= inst.budget;
}

Rational exact_lower_bound(const Instance& inst) {
  const std::size_t K = static_cast<std::size_t>(inst.cardinality);
  if (inst.items.size() < K || K == 0) return 0;
  std::vector<const Item*> sorted;
  for (const Item& item : inst.items) sorted.push_back(&item);
  std::sort(sorted.begin(), sorted.end(), [](const Item* a, const Item* b) { return lighter(*a, *b); });
  Rational first_k = 0, first_k1 = 0;
  for (std::size_t i = 0; i < K; ++i) {
    first_k += sorted[i]->weight;
    if (i + 1 < K) first_k1 += sorted[i]->weight;
  }
  Rational best = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Item& item = *sorted[i];
    if (item.profit <= best) continue;
    Rational weight = i < K ? first_k : first_k1 + item.weight;
    if (weight <= inst.budget) best = item.profit;
  }
  return best;
}

Solution solve(const Instance& inst, const Rational& eps_user, const SolveOptions& options, SolveDiagnostics* diag) {
  ValidationReport report = validate_instance(inst);
  if (!report.ok()) throw std::invalid_argument(report.errors.front());
  if (!(eps_user > 0 && eps_user < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (inst.mode == CardinalityMode::kExactly) return solve_exact(inst, eps_user, options, diag);
  Rational internal = options.internal_eps ? *options.internal_eps : default_internal_eps(eps_user);
  return solve_at_most(inst, eps_user, internal, options, diag);
}

}  // namespace kkp
