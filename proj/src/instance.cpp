#include "kkp/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kkp {

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  if (inst.cardinality < 1) report.errors.push_back("cardinality bound must be at least 1");
  if (inst.budget < 0) report.errors.push_back("budget must be non-negative");

  std::unordered_set<ItemId> seen;
  std::int64_t fitting = 0;
  for (const Item& item : inst.items) {
    if (!seen.insert(item.id).second) {
      report.errors.push_back("duplicate item id " + std::to_string(item.id));
    }
    if (item.profit < 0) report.errors.push_back("negative profit on item " + std::to_string(item.id));
    if (item.weight < 0) report.errors.push_back("negative weight on item " + std::to_string(item.id));
    if (item.weight > inst.budget) {
      report.oversize.push_back(item.id);
      report.warnings.push_back("item " + std::to_string(item.id) + " exceeds the budget and is removable");
    } else {
      ++fitting;
    }
  }
  if (inst.items.empty()) report.warnings.push_back("trivial instance: no items");
  if (inst.mode == CardinalityMode::kExactly && fitting < inst.cardinality) {
    report.warnings.push_back("fewer than K items fit individually; exact-K may be infeasible");
  }
  return report;
}

FeasibilityReport evaluate_solution(const Instance& inst, const std::vector<ItemId>& selected) {
  std::unordered_map<ItemId, const Item*> by_id;
  by_id.reserve(inst.items.size());
  for (const Item& item : inst.items) by_id.emplace(item.id, &item);

  FeasibilityReport report;
  std::unordered_set<ItemId> used;
  for (ItemId id : selected) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw std::invalid_argument("unknown item id " + std::to_string(id));
    if (!used.insert(id).second) throw std::invalid_argument("item id selected twice: " + std::to_string(id));
    report.profit += it->second->profit;
    report.weight += it->second->weight;
  }
  report.count = static_cast<std::int64_t>(selected.size());
  report.weight_excess = report.weight > inst.budget ? Rational(report.weight - inst.budget) : Rational(0);
  report.cardinality_excess = report.count - inst.cardinality;
  bool card_ok = inst.mode == CardinalityMode::kExactly ? report.count == inst.cardinality
                                                         : report.count <= inst.cardinality;
  if (inst.mode == CardinalityMode::kAtMost && report.cardinality_excess < 0) report.cardinality_excess = 0;
  report.feasible = report.weight <= inst.budget && card_ok;
  return report;
}

FeasibilityReport evaluate_solution(const Instance& inst, const Solution& sol) {
  return evaluate_solution(inst, sol.selected);
}

ConvertedInstance convert_exact_to_atmost(const Instance& inst) {
  ConvertedInstance out;
  Rational total = 0;
  for (const Item& item : inst.items) total += item.profit;
  out.shift = total + 1;
  out.instance = inst;
  out.instance.mode = CardinalityMode::kAtMost;
  for (Item& item : out.instance.items) item.profit += out.shift;
  return out;
}

const char* mode_name(CardinalityMode mode) {
  return mode == CardinalityMode::kExactly ? "exact" : "at_most";
}

std::optional<CardinalityMode> parse_mode(const std::string& text) {
  if (text == "at_most") return CardinalityMode::kAtMost;
  if (text == "exact") return CardinalityMode::kExactly;
  return std::nullopt;
}

}  // namespace kkp
