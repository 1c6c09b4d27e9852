#include "kkp/small_items.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kkp/lp_relaxation.hpp"

namespace kkp {
namespace {

std::int64_t s1_threshold(std::int64_t omega, const Rational& eps, std::int64_t cardinality) {
  if (omega <= 0) return omega < 0 ? -1 : 0;
  return floor_to_int64(eps * Rational(omega) / cardinality);
}

bool by_profit_desc(const SmallItem& a, const SmallItem& b) {
  if (a.profit != b.profit) return a.profit > b.profit;
  return a.id < b.id;
}

bool by_class_weight(const SmallItem& a, const SmallItem& b) {
  if (a.profit_class != b.profit_class) return a.profit_class < b.profit_class;
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.id < b.id;
}

std::vector<LpUnit> type_units(const RoundedSmall& rounded) {
  std::vector<LpUnit> units;
  units.reserve(rounded.s2.size());
  for (const SmallType& t : rounded.s2) {
    units.push_back({t.profit, t.weight, static_cast<std::int64_t>(t.members.size())});
  }
  return units;
}

double relaxed_budget(const RoundedSmall& rounded, const Rational& eps) {
  return static_cast<double>((1.0L - static_cast<long double>(to_double(eps))) * rounded.omega);
}

}  // namespace

std::vector<SmallItem> flatten_small(const Partition& part) {
  std::vector<SmallItem> out;
  out.reserve(part.small_item_count());
  for (const SmallClass& c : part.small_classes) {
    for (const Item& m : c.members) out.push_back({m.id, c.relative_profit, part.scale.scale(m.weight), c.index});
  }
  std::sort(out.begin(), out.end(), by_class_weight);
  return out;
}

SmallEval upsilon1(std::span<const SmallItem> items, std::int64_t omega, std::int64_t k) {
  SmallEval ev;
  if (k <= 0 || omega < 0 || items.empty()) return ev;
  std::vector<LpUnit> units;
  units.reserve(items.size());
  for (const SmallItem& it : items) units.push_back({it.profit, static_cast<double>(it.weight), 1});
  LpResult lp = solve_budget_cardinality_lp(units, static_cast<double>(omega), k);
  ev.value = lp.value;
  ev.dual_value = lp.dual_value;
  ev.multiplier = lp.multiplier;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (lp.amount[i] >= 1.0) {
      ev.integral_ids.push_back(items[i].id);
    } else if (lp.amount[i] > 0) {
      ev.fractional_solution.emplace_back(items[i].id, lp.amount[i]);
    }
  }
  std::sort(ev.integral_ids.begin(), ev.integral_ids.end());
  return ev;
}

RoundedSmall round_small_weights(std::span<const SmallItem> items, std::int64_t omega, const Rational& eps,
                                 std::int64_t cardinality) {
  RoundedSmall out;
  out.omega = omega;
  out.threshold = s1_threshold(omega, eps, cardinality);
  if (omega < 0) return out;
  const long double q = 1.0L + static_cast<long double>(to_double(eps));
  const long double base = static_cast<long double>(to_double(eps)) * omega / cardinality;
  // levels[j] = base (1+eps)^j up to the first level at or above omega.
  std::vector<long double> levels(1, base);
  while (levels.back() < static_cast<long double>(omega)) levels.push_back(levels.back() * q);
  // Within a profit class the exponent is monotone in the weight, so each
  // type is a run of consecutive items.
  std::vector<SmallItem> sorted;
  if (!std::is_sorted(items.begin(), items.end(), by_class_weight)) {
    sorted.assign(items.begin(), items.end());
    std::sort(sorted.begin(), sorted.end(), by_class_weight);
    items = sorted;
  }
  std::vector<long> exponent(items.size(), -1);
  std::size_t s1_count = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const SmallItem& it = items[i];
    if (it.weight <= out.threshold) {
      ++s1_count;
    } else if (it.weight <= omega) {
      const long double w = static_cast<long double>(it.weight);
      exponent[i] = std::lower_bound(levels.begin(), levels.end(), w) - levels.begin();
    }
  }
  out.s1.reserve(s1_count);
  for (std::size_t i = 0; i < items.size();) {
    const SmallItem& it = items[i];
    if (exponent[i] < 0) {
      if (it.weight <= out.threshold) out.s1.push_back(it);
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < items.size() && exponent[end] == exponent[i] && items[end].profit_class == it.profit_class) ++end;
    SmallType t;
    t.profit_class = it.profit_class;
    t.weight_exponent = exponent[i];
    t.profit = it.profit;
    t.weight = std::max(static_cast<double>(levels[static_cast<std::size_t>(exponent[i])]),
                        static_cast<double>(items[end - 1].weight));
    t.members.reserve(end - i);
    for (std::size_t m = i; m < end; ++m) t.members.push_back(items[m].id);
    out.s2.push_back(std::move(t));
    i = end;
  }
  return out;
}

WeightBuckets::WeightBuckets(std::span<const SmallItem> items, std::vector<std::int64_t> omegas, const Rational& eps,
                             std::int64_t cardinality)
    : omegas_(std::move(omegas)) {
  std::sort(omegas_.begin(), omegas_.end());
  omegas_.erase(std::unique(omegas_.begin(), omegas_.end()), omegas_.end());
  std::vector<std::int64_t> thresholds;
  thresholds.reserve(omegas_.size());
  for (std::int64_t w : omegas_) thresholds.push_back(s1_threshold(w, eps, cardinality));
  buckets_.assign(omegas_.size(), {});
  for (const SmallItem& it : items) {
    auto pos = std::lower_bound(thresholds.begin(), thresholds.end(), it.weight);
    if (pos != thresholds.end()) buckets_[static_cast<std::size_t>(pos - thresholds.begin())].push_back(it);
  }
  partial_.resize(buckets_.size());
  available_.resize(buckets_.size());
  std::int64_t running = 0;
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    std::sort(buckets_[i].begin(), buckets_[i].end(), by_profit_desc);
    partial_[i].assign(1, 0.0);
    for (const SmallItem& it : buckets_[i]) {
      partial_[i].push_back(partial_[i].back() + it.profit);
      distinct_profits_.push_back(it.profit);
    }
    running += static_cast<std::int64_t>(buckets_[i].size());
    available_[i] = running;
  }
  std::sort(distinct_profits_.begin(), distinct_profits_.end(), std::greater<>());
  distinct_profits_.erase(std::unique(distinct_profits_.begin(), distinct_profits_.end()), distinct_profits_.end());
}

std::ptrdiff_t WeightBuckets::find(std::int64_t omega) const {
  auto it = std::lower_bound(omegas_.begin(), omegas_.end(), omega);
  if (it == omegas_.end() || *it != omega) return -1;
  return it - omegas_.begin();
}

double WeightBuckets::top_sum(std::size_t query, std::int64_t ell) const {
  if (ell <= 0) return 0;
  auto count_at_least = [&](double v, double* sum) {
    std::int64_t n = 0;
    double s = 0;
    for (std::size_t j = 0; j <= query; ++j) {
      const auto& b = buckets_[j];
      auto pos = std::partition_point(b.begin(), b.end(), [v](const SmallItem& it) { return it.profit >= v; });
      std::size_t c = static_cast<std::size_t>(pos - b.begin());
      n += static_cast<std::int64_t>(c);
      s += partial_[j][c];
    }
    if (sum) *sum = s;
    return n;
  };
  if (ell >= available_[query]) {
    double s = 0;
    for (std::size_t j = 0; j <= query; ++j) s += partial_[j].back();
    return s;
  }
  // Smallest profit level at which at least ell items are available.
  std::size_t lo = 0, hi = distinct_profits_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (count_at_least(distinct_profits_[mid], nullptr) >= ell) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  double above_sum = 0;
  std::int64_t above = lo == 0 ? 0 : count_at_least(distinct_profits_[lo - 1], &above_sum);
  return above_sum + static_cast<double>(ell - above) * distinct_profits_[lo];
}

double upsilon3_direct(std::span<const SmallItem> items, std::int64_t omega, const Rational& eps,
                       std::int64_t cardinality, std::int64_t ell, std::vector<ItemId>* ids) {
  std::int64_t threshold = s1_threshold(omega, eps, cardinality);
  std::vector<SmallItem> s1;
  for (const SmallItem& it : items) {
    if (it.weight <= threshold) s1.push_back(it);
  }
  std::sort(s1.begin(), s1.end(), by_profit_desc);
  double sum = 0;
  for (std::size_t i = 0; i < s1.size() && static_cast<std::int64_t>(i) < ell; ++i) {
    sum += s1[i].profit;
    if (ids) ids->push_back(s1[i].id);
  }
  return sum;
}

double dual_value(double mu, const RoundedSmall& rounded, const Rational& eps, std::int64_t cap) {
  std::vector<LpUnit> units = type_units(rounded);
  return budget_lagrangian(units, mu, relaxed_budget(rounded, eps), cap);
}

SmallEval upsilon4(const RoundedSmall& rounded, const Rational& eps, std::int64_t cap) {
  SmallEval ev;
  if (cap <= 0 || rounded.s2.empty() || rounded.omega <= 0) return ev;
  std::vector<LpUnit> units = type_units(rounded);
  LpResult lp = solve_budget_cardinality_lp(units, relaxed_budget(rounded, eps), cap);
  ev.value = lp.value;
  ev.dual_value = lp.dual_value;
  ev.multiplier = lp.multiplier;
  for (std::size_t t = 0; t < units.size(); ++t) {
    double whole = std::floor(lp.amount[t]);
    std::size_t taken = static_cast<std::size_t>(whole);
    // Units of a type are interchangeable; the lowest ids are used.
    std::vector<ItemId> members = rounded.s2[t].members;
    std::sort(members.begin(), members.end());
    for (std::size_t j = 0; j < taken && j < members.size(); ++j) ev.integral_ids.push_back(members[j]);
    double frac = lp.amount[t] - whole;
    if (frac > 0 && taken < members.size()) ev.fractional_solution.emplace_back(members[taken], frac);
  }
  std::sort(ev.integral_ids.begin(), ev.integral_ids.end());
  return ev;
}

BreakpointSet BreakpointSet::make(const Rational& eps, long b_bound, long cd_bound) {
  Rational q = eps + 1;
  std::vector<Rational> vals;
  vals.emplace_back(0);
  std::vector<Rational> diff;  // (1+eps)^c - 1 for c in [-cd, cd] \ {0}
  std::vector<long> exps;
  for (long c = -cd_bound; c <= cd_bound; ++c) {
    if (c == 0) continue;
    diff.push_back(pow(q, c) - 1);
    exps.push_back(c);
  }
  for (long b = -b_bound; b <= b_bound; ++b) {
    Rational scale = pow(q, b);
    for (const Rational& num : diff) {
      for (const Rational& den : diff) {
        Rational v = scale * num / den;
        if (v > 0) vals.push_back(std::move(v));
      }
    }
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  BreakpointSet out;
  out.values.reserve(vals.size());
  for (const Rational& v : vals) out.values.push_back(to_double(v));
  return out;
}

bool BreakpointSet::contains(double mu, double tol) const {
  auto it = std::lower_bound(values.begin(), values.end(), mu);
  auto close = [&](double v) { return std::fabs(v - mu) <= tol * std::max(std::fabs(mu), 1e-300); };
  if (it != values.end() && close(*it)) return true;
  return it != values.begin() && close(*std::prev(it));
}

SmallSolver::SmallSolver(const Partition& part)
    : items_(flatten_small(part)), eps_(part.epsilon), cardinality_(part.cardinality) {
  use_upsilon1_ = Rational(cardinality_) * eps_ <= 1;
}

void SmallSolver::prepare(std::vector<std::int64_t> omegas) {
  if (!use_upsilon1_) buckets_ = WeightBuckets(items_, std::move(omegas), eps_, cardinality_);
}

double SmallSolver::upsilon3(std::int64_t omega, std::int64_t ell) const {
  std::ptrdiff_t q = buckets_.find(omega);
  if (q >= 0) return buckets_.top_sum(static_cast<std::size_t>(q), ell);
  return upsilon3_direct(items_, omega, eps_, cardinality_, ell);
}

double SmallSolver::upsilon5_from(const RoundedSmall& rounded, std::int64_t omega, std::int64_t ell,
                                  std::int64_t k) const {
  return upsilon3(omega, ell) + upsilon4(rounded, eps_, k - ell).value;
}

double SmallSolver::upsilon5(std::int64_t omega, std::int64_t ell, std::int64_t k) const {
  RoundedSmall rounded = round_small_weights(items_, omega, eps_, cardinality_);
  return upsilon5_from(rounded, omega, ell, k);
}

double SmallSolver::upsilon2_search(const RoundedSmall& rounded, std::int64_t omega, std::int64_t k,
                                    std::int64_t* ell) const {
  std::int64_t hi = std::min<std::int64_t>(k, static_cast<std::int64_t>(rounded.s1.size()));
  const std::vector<LpUnit> units = type_units(rounded);
  const double budget = relaxed_budget(rounded, eps_);
  const bool relaxed = !rounded.s2.empty() && rounded.omega > 0;
  std::vector<double> cache(static_cast<std::size_t>(hi) + 1, std::numeric_limits<double>::quiet_NaN());
  auto g = [&](std::int64_t l) {
    double& slot = cache[static_cast<std::size_t>(l)];
    if (std::isnan(slot)) {
      slot = upsilon3(omega, l);
      if (relaxed && k - l > 0) slot += solve_budget_cardinality_lp(units, budget, k - l).value;
    }
    return slot;
  };
  // Bracket: with S1 items weightless, one LP over S1 and S2 together peaks
  // at a fractional ell next to the integer peak. Both ends are checked and
  // widened to the full range if the check fails.
  std::int64_t lo = 0;
  if (relaxed && hi > 1) {
    std::vector<LpUnit> joint = units;
    for (const SmallItem& it : rounded.s1) joint.push_back({it.profit, 0.0, 1});
    LpResult lp = solve_budget_cardinality_lp(joint, budget, k);
    double light = 0;
    for (std::size_t i = units.size(); i < joint.size(); ++i) light += lp.amount[i];
    std::int64_t a = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(light + 1e-9)), 0, hi);
    std::int64_t b = std::min(hi, a + 1);
    std::int64_t new_lo = (a == 0 || g(a) > g(a - 1)) ? a : 0;
    std::int64_t new_hi = (b == hi || g(b + 1) <= g(b)) ? b : hi;
    lo = new_lo;
    hi = new_hi;
  }
  // The sequence is concave in ell: find the first non-positive difference.
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (g(mid + 1) > g(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (ell) *ell = lo;
  return g(lo);
}

SmallEval SmallSolver::upsilon2(std::int64_t omega, std::int64_t k) const {
  SmallEval ev;
  if (k <= 0 || omega < 0 || items_.empty()) return ev;
  RoundedSmall rounded = round_small_weights(items_, omega, eps_, cardinality_);
  ev.value = upsilon2_search(rounded, omega, k, &ev.ell);
  upsilon3_direct(items_, omega, eps_, cardinality_, ev.ell, &ev.integral_ids);
  SmallEval relaxed = upsilon4(rounded, eps_, k - ev.ell);
  ev.dual_value = upsilon3(omega, ev.ell) + relaxed.dual_value;
  ev.multiplier = relaxed.multiplier;
  ev.integral_ids.insert(ev.integral_ids.end(), relaxed.integral_ids.begin(), relaxed.integral_ids.end());
  ev.fractional_solution = std::move(relaxed.fractional_solution);
  std::sort(ev.integral_ids.begin(), ev.integral_ids.end());
  return ev;
}

double SmallSolver::upsilon2_linear(std::int64_t omega, std::int64_t k) const {
  if (k <= 0 || omega < 0 || items_.empty()) return 0;
  RoundedSmall rounded = round_small_weights(items_, omega, eps_, cardinality_);
  double best = 0;
  for (std::int64_t ell = 0; ell <= k; ++ell) best = std::max(best, upsilon5_from(rounded, omega, ell, k));
  return best;
}

SmallEval SmallSolver::evaluate(std::int64_t omega, std::int64_t k) const {
  if (use_upsilon1_) return upsilon1(items_, omega, k);
  return upsilon2(omega, k);
}

double SmallSolver::phi_dag(std::int64_t omega, std::int64_t k) {
  if (k <= 0 || omega < 0 || items_.empty()) return 0;
  auto key = std::make_pair(omega, k);
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  double v;
  if (use_upsilon1_) {
    v = upsilon1(items_, omega, k).value;
  } else {
    RoundedSmall rounded = round_small_weights(items_, omega, eps_, cardinality_);
    v = upsilon2_search(rounded, omega, k, nullptr);
  }
  std::lock_guard<std::mutex> lock(memo_mu_);
  memo_.emplace(key, v);
  return v;
}

}  // namespace kkp
