#include "kkp/lp_relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace kkp {
namespace {

constexpr double kCertifyTolerance = 1e-13;
constexpr int kMaxBisections = 300;

// Greedy solution of the Lagrangian inner problem at a fixed multiplier.
// Reuses its scratch buffer across calls.
class LagrangianGreedy {
 public:
  explicit LagrangianGreedy(std::span<const LpUnit> units) : units_(units) {}

  struct Eval {
    long double weight = 0;
    long double profit = 0;
    long double adjusted = 0;
  };

  // Greedy optimum of the inner problem at `mu`; per-group counts go to
  // `taken` when given.
  Eval run(double mu, std::int64_t cap, std::vector<std::int64_t>* taken) {
    if (taken) taken->assign(units_.size(), 0);
    std::size_t m = collect(mu, cap);
    Eval e;
    std::int64_t left = cap;
    for (std::size_t g = 0; g < m && left > 0; ++g) {
      const auto& [adj, i] = scratch_[g];
      std::int64_t take = std::min(units_[i].count, left);
      if (taken) (*taken)[i] = take;
      e.weight += static_cast<long double>(take) * units_[i].weight;
      e.profit += static_cast<long double>(take) * units_[i].profit;
      e.adjusted += static_cast<long double>(take) * adj;
      left -= take;
    }
    return e;
  }

 private:
  bool better(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
    if (a.first != b.first) return a.first > b.first;
    double wa = units_[a.second].weight, wb = units_[b.second].weight;
    if (wa != wb) return wa < wb;
    return a.second < b.second;
  }

  // Gathers the positive groups and moves the best `cap` units to the front
  // (in no particular order) by a weighted quickselect. Returns the number of
  // leading groups that hold them; only the last one may be cut.
  std::size_t collect(double mu, std::int64_t cap) {
    scratch_.clear();
    std::int64_t positive_units = 0;
    for (std::size_t i = 0; i < units_.size(); ++i) {
      double adj = units_[i].profit - mu * units_[i].weight;
      if (adj > 0 && units_[i].count > 0) {
        scratch_.emplace_back(adj, static_cast<int>(i));
        positive_units += units_[i].count;
      }
    }
    if (positive_units <= cap) return scratch_.size();
    auto cmp = [this](const auto& a, const auto& b) { return better(a, b); };
    std::size_t lo = 0, hi = scratch_.size();
    std::int64_t need = cap;
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      std::nth_element(scratch_.begin() + lo, scratch_.begin() + mid, scratch_.begin() + hi, cmp);
      std::int64_t front = 0;
      for (std::size_t g = lo; g < mid; ++g) front += units_[scratch_[g].second].count;
      if (front >= need) {
        hi = mid;
      } else {
        need -= front;
        lo = mid;
      }
    }
    return lo + 1;
  }

  std::span<const LpUnit> units_;
  std::vector<std::pair<double, int>> scratch_;
};

struct PathPoint {
  bool ok = false;
  std::vector<double> amount;
  long double value = 0;
};

// Walks from `over` (weight above budget) towards `under` by trading heavy
// units of `over` for light units of `under` until the budget row is tight.
// Only the final trade is partial, so at most two groups end fractional.
PathPoint interpolate(std::span<const LpUnit> units, const std::vector<std::int64_t>& over,
                      const std::vector<std::int64_t>& under, double budget) {
  PathPoint out;
  out.amount.assign(units.size(), 0.0);
  long double weight = 0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    out.amount[i] = static_cast<double>(over[i]);
    weight += static_cast<long double>(over[i]) * units[i].weight;
  }
  std::vector<std::pair<int, std::int64_t>> removals, additions;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (over[i] > under[i]) removals.emplace_back(static_cast<int>(i), over[i] - under[i]);
    if (under[i] > over[i]) additions.emplace_back(static_cast<int>(i), under[i] - over[i]);
  }
  std::sort(removals.begin(), removals.end(), [&](const auto& a, const auto& b) {
    if (units[a.first].weight != units[b.first].weight) return units[a.first].weight > units[b.first].weight;
    return a.first < b.first;
  });
  std::sort(additions.begin(), additions.end(), [&](const auto& a, const auto& b) {
    if (units[a.first].weight != units[b.first].weight) return units[a.first].weight < units[b.first].weight;
    return a.first < b.first;
  });

  long double excess = weight - budget;
  std::size_t ia = 0;
  for (auto& [r, left] : removals) {
    while (left > 0 && excess > 0) {
      const LpUnit& ur = units[r];
      if (ia < additions.size()) {
        auto& [a, a_left] = additions[ia];
        const LpUnit& ua = units[a];
        long double d = static_cast<long double>(ur.weight) - ua.weight;
        if (d <= 0) {
          ++ia;
          continue;
        }
        std::int64_t m = std::min(left, a_left);
        if (static_cast<long double>(m) * d >= excess) {
          long double t = excess / d;
          out.amount[r] -= static_cast<double>(t);
          out.amount[a] += static_cast<double>(t);
          excess = 0;
          break;
        }
        out.amount[r] -= static_cast<double>(m);
        out.amount[a] += static_cast<double>(m);
        excess -= m * d;
        left -= m;
        a_left -= m;
        if (a_left == 0) ++ia;
      } else {
        if (ur.weight <= 0) break;
        long double d = ur.weight;
        if (static_cast<long double>(left) * d >= excess) {
          long double t = excess / d;
          out.amount[r] -= static_cast<double>(t);
          excess = 0;
          break;
        }
        out.amount[r] -= static_cast<double>(left);
        excess -= left * d;
        left = 0;
      }
    }
    if (excess <= 0) break;
  }
  if (excess > 0) return out;
  out.ok = true;
  for (std::size_t i = 0; i < units.size(); ++i) {
    out.value += static_cast<long double>(out.amount[i]) * units[i].profit;
  }
  return out;
}

int count_fractional(const std::vector<double>& amount) {
  int f = 0;
  for (double x : amount) {
    if (x != std::floor(x)) ++f;
  }
  return f;
}

}  // namespace

double budget_lagrangian(std::span<const LpUnit> units, double multiplier, double budget, std::int64_t cap) {
  if (cap <= 0) return multiplier * budget;
  LagrangianGreedy greedy(units);
  return static_cast<double>(static_cast<long double>(multiplier) * budget + greedy.run(multiplier, cap, nullptr).adjusted);
}

LpResult solve_budget_cardinality_lp(std::span<const LpUnit> units, double budget, std::int64_t cap) {
  if (budget < 0) throw std::invalid_argument("LP budget must be non-negative");
  LpResult res;
  res.amount.assign(units.size(), 0.0);
  if (cap <= 0 || units.empty()) return res;

  LagrangianGreedy greedy(units);
  std::vector<std::int64_t> taken_lo, taken_hi, taken_mid;
  LagrangianGreedy::Eval e_lo = greedy.run(0.0, cap, &taken_lo);
  if (e_lo.weight <= budget) {
    for (std::size_t i = 0; i < units.size(); ++i) res.amount[i] = static_cast<double>(taken_lo[i]);
    res.value = static_cast<double>(e_lo.profit);
    res.dual_value = res.value;
    return res;
  }

  res.budget_binding = true;
  double hi = 0;
  for (const LpUnit& u : units) {
    if (u.weight > 0) hi = std::max(hi, u.profit / u.weight);
  }
  hi = hi * 2 + 1e-300;
  double lo = 0;
  LagrangianGreedy::Eval e_hi = greedy.run(hi, cap, &taken_hi);

  long double best_dual = std::numeric_limits<long double>::infinity();
  double best_mu = hi;
  auto note_dual = [&](double mu, const LagrangianGreedy::Eval& e) {
    long double d = static_cast<long double>(mu) * budget + e.adjusted;
    if (d < best_dual) {
      best_dual = d;
      best_mu = mu;
    }
  };
  note_dual(lo, e_lo);
  note_dual(hi, e_hi);

  // Newton steps on the dual: probe where the lines of the two bracketing
  // selections cross. If the dual there equals the line value, both
  // selections are optimal at that multiplier. Every third step bisects.
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    long double slope_gap = e_lo.weight - e_hi.weight;
    double cross = static_cast<double>((e_lo.profit - e_hi.profit) / slope_gap);
    bool newton = iter % 3 != 2 && cross > lo && cross < hi;
    double mu = newton ? cross : lo + (hi - lo) / 2;
    if (!(mu > lo && mu < hi)) break;
    LagrangianGreedy::Eval e = greedy.run(mu, cap, &taken_mid);
    note_dual(mu, e);
    if (newton) {
      long double line = static_cast<long double>(mu) * budget + e_lo.profit - mu * e_lo.weight;
      long double dual = static_cast<long double>(mu) * budget + e.adjusted;
      if (dual - line <= kCertifyTolerance * std::max<long double>(1.0L, std::fabs(line))) break;
    }
    if (e.weight > budget) {
      lo = mu;
      e_lo = e;
      taken_lo.swap(taken_mid);
    } else {
      hi = mu;
      e_hi = e;
      taken_hi.swap(taken_mid);
    }
  }

  PathPoint best = interpolate(units, taken_lo, taken_hi, budget);
  if (!best.ok || best.value < e_hi.profit) {
    // The within-budget endpoint is always feasible.
    best.ok = true;
    best.value = e_hi.profit;
    for (std::size_t i = 0; i < units.size(); ++i) best.amount[i] = static_cast<double>(taken_hi[i]);
  }
  res.value = static_cast<double>(best.value);
  res.dual_value = static_cast<double>(best_dual);
  res.multiplier = best_mu;
  res.amount = std::move(best.amount);
  res.fractional_groups = count_fractional(res.amount);
  return res;
}

}  // namespace kkp
