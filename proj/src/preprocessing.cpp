#include "kkp/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kkp/lp_relaxation.hpp"

namespace kkp {
namespace {

constexpr long kScaleBits = 50;

bool lighter(const Item& a, const Item& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.id < b.id;
}

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == INT64_MAX || b == INT64_MAX || a > INT64_MAX - b) return INT64_MAX;
  return a + b;
}

}  // namespace

std::int64_t WeightScale::scale(const Rational& weight) const {
  Rational v = weight * factor;
  return exact ? floor_to_int64(v) : ceil_to_int64(v);
}

WeightScale choose_weight_scale(const std::vector<Item>& items, const Rational& budget) {
  mpz_class lcm = budget.get_den();
  for (const Item& item : items) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), item.weight.get_den().get_mpz_t());
  WeightScale s;
  mpz_class limit = mpz_class(1) << kScaleBits;
  Rational scaled_budget = budget * Rational(lcm);
  if (scaled_budget <= Rational(limit)) {
    s.factor = Rational(lcm);
    s.exact = true;
    s.budget = floor_to_int64(scaled_budget);
    return s;
  }
  s.factor = Rational(limit) / budget;
  s.factor.canonicalize();
  s.exact = false;
  s.budget = floor_to_int64(budget * s.factor);
  return s;
}

HalfApproximation half_approx_opt(const Instance& inst) {
  std::vector<const Item*> fitting;
  for (const Item& item : inst.items) {
    if (item.weight <= inst.budget && item.profit > 0) fitting.push_back(&item);
  }
  HalfApproximation out;
  if (fitting.empty() || inst.cardinality < 1) return out;

  std::vector<LpUnit> units;
  units.reserve(fitting.size());
  for (const Item* item : fitting) units.push_back({to_double(item->profit), to_double(item->weight), 1});
  LpResult lp = solve_budget_cardinality_lp(units, to_double(inst.budget), inst.cardinality);

  std::vector<const Item*> chosen;
  for (std::size_t i = 0; i < fitting.size(); ++i) {
    if (lp.amount[i] >= 1.0) chosen.push_back(fitting[i]);
  }
  std::sort(chosen.begin(), chosen.end(), [](const Item* a, const Item* b) { return lighter(*a, *b); });
  Rational weight = 0;
  for (const Item* item : chosen) weight += item->weight;
  // Floating-point rounding may leave the set marginally over budget.
  while (!chosen.empty() && (weight > inst.budget || static_cast<std::int64_t>(chosen.size()) > inst.cardinality)) {
    weight -= chosen.back()->weight;
    chosen.pop_back();
  }
  Rational integral = 0;
  for (const Item* item : chosen) integral += item->profit;

  const Item* best = fitting.front();
  for (const Item* item : fitting) {
    if (item->profit > best->profit || (item->profit == best->profit && item->id < best->id)) best = item;
  }
  if (best->profit > integral) {
    out.value = best->profit;
    out.solution = {best->id};
  } else {
    out.value = integral;
    for (const Item* item : chosen) out.solution.push_back(item->id);
    std::sort(out.solution.begin(), out.solution.end());
  }
  return out;
}

GeometricPowers::GeometricPowers(const Rational& eps) : ratio_(eps + 1) { ratio_.canonicalize(); }

const Rational& GeometricPowers::get(long exponent) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(exponent);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(exponent, pow(ratio_, exponent)).first->second;
}

std::int64_t cardinality_cap(std::int64_t cardinality, const Rational& eps) {
  Rational inv = 1 / eps;
  return std::min<std::int64_t>(cardinality, ceil_to_int64(inv));
}

long large_class_index(const Rational& ratio, GeometricPowers& powers) {
  double est = std::log(to_double(ratio)) / std::log(to_double(powers.ratio()));
  long i = std::max(1L, static_cast<long>(std::ceil(est)));
  while (powers.get(i) < ratio) ++i;
  while (i > 1 && powers.get(i - 1) >= ratio) --i;
  return i;
}

long small_class_index(const Rational& ratio, GeometricPowers& powers) {
  double est = std::log(to_double(ratio)) / std::log(to_double(powers.ratio()));
  long i = std::max(1L, static_cast<long>(std::floor(est)) + 1);
  while (powers.get(i - 1) > ratio) --i;
  while (powers.get(i) <= ratio) ++i;
  return i;
}

std::size_t Partition::small_item_count() const {
  std::size_t n = 0;
  for (const SmallClass& c : small_classes) n += c.members.size();
  return n;
}

Partition build_partition(const Instance& inst, const Rational& eps) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  Partition part;
  part.epsilon = eps;
  part.cardinality = inst.cardinality;
  part.z = cardinality_cap(inst.cardinality, eps);

  HalfApproximation half = half_approx_opt(inst);
  if (half.value == 0) throw std::domain_error("trivial instance: no item with positive profit fits");
  part.opt_lower_bound = half.value;
  part.opt_estimate = half.value * 2;
  part.half_solution = std::move(half.solution);

  std::vector<Item> fitting;
  fitting.reserve(inst.items.size());
  for (const Item& item : inst.items) {
    if (item.weight <= inst.budget) {
      fitting.push_back(item);
    } else {
      part.discarded.push_back(item.id);
    }
  }
  part.scale = choose_weight_scale(fitting, inst.budget);

  const Rational large_threshold = eps * part.opt_estimate;
  const Rational small_threshold = large_threshold / inst.cardinality;
  GeometricPowers powers(eps);
  std::map<long, std::vector<Item>> large, small;
  for (Item& item : fitting) {
    if (item.profit > large_threshold) {
      Rational ratio = item.profit / large_threshold;
      large[large_class_index(ratio, powers)].push_back(std::move(item));
    } else if (item.profit >= small_threshold && item.profit > 0) {
      Rational ratio = large_threshold / item.profit;
      small[small_class_index(ratio, powers)].push_back(std::move(item));
    } else {
      part.discarded.push_back(item.id);
    }
  }

  part.large_classes.reserve(large.size());
  part.small_classes.reserve(small.size());
  for (auto& [index, members] : large) {
    LargeClass c;
    c.index = index;
    c.rounded_profit = large_threshold * powers.get(index);
    std::sort(members.begin(), members.end(), lighter);
    c.prefix_weights.reserve(members.size() + 1);
    c.prefix_weights.emplace_back(0);
    for (const Item& m : members) c.prefix_weights.push_back(c.prefix_weights.back() + m.weight);
    std::size_t keep = std::min<std::size_t>(members.size(), static_cast<std::size_t>(part.z));
    c.scaled_prefix.assign(1, 0);
    for (std::size_t j = 0; j < keep; ++j) {
      c.scaled_prefix.push_back(saturating_add(c.scaled_prefix.back(), part.scale.scale(members[j].weight)));
    }
    c.members = std::move(members);
    part.large_classes.push_back(std::move(c));
  }
  for (auto& [index, members] : small) {
    SmallClass c;
    c.index = index;
    c.rounded_profit = large_threshold / powers.get(index);
    c.relative_profit = to_double(eps / powers.get(index));
    std::sort(members.begin(), members.end(), lighter);
    if (static_cast<std::int64_t>(members.size()) > inst.cardinality) {
      for (std::size_t j = static_cast<std::size_t>(inst.cardinality); j < members.size(); ++j) {
        part.discarded.push_back(members[j].id);
      }
      members.resize(static_cast<std::size_t>(inst.cardinality));
    }
    c.members = std::move(members);
    part.small_classes.push_back(std::move(c));
  }
  std::sort(part.discarded.begin(), part.discarded.end());
  return part;
}

}  // namespace kkp
