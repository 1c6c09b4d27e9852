#include "kkp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kkp {
namespace {

struct Search {
  explicit Search(const Instance& in) : inst(in) {}

  const Instance& inst;
  std::vector<const Item*> items;
  bool exact = false;
  Rational weight = 0;
  Rational profit = 0;
  std::vector<ItemId> current;
  Rational best = -1;
  std::vector<ItemId> best_set;

  void run(std::size_t i) {
    const std::int64_t count = static_cast<std::int64_t>(current.size());
    if (i == items.size()) {
      if (exact && count != inst.cardinality) return;
      if (profit > best) {
        best = profit;
        best_set = current;
      }
      return;
    }
    if (exact && count + static_cast<std::int64_t>(items.size() - i) < inst.cardinality) return;
    const Item& item = *items[i];
    if (count < inst.cardinality && weight + item.weight <= inst.budget) {
      weight += item.weight;
      profit += item.profit;
      current.push_back(item.id);
      run(i + 1);
      current.pop_back();
      profit -= item.profit;
      weight -= item.weight;
    }
    run(i + 1);
  }
};

using Wide = __int128;

}  // namespace

OracleResult brute_force(const Instance& inst) {
  if (inst.items.size() > kBruteForceLimit) throw std::length_error("brute_force: too many items");
  Search s{inst};
  s.exact = inst.mode == CardinalityMode::kExactly;
  for (const Item& item : inst.items) s.items.push_back(&item);
  s.run(0);
  OracleResult r;
  r.method = OracleMethod::kBruteForce;
  r.has_solution = true;
  if (s.best < 0) {
    r.feasible = false;
    r.value = 0;
    return r;
  }
  r.value = s.best;
  r.solution = s.best_set;
  std::sort(r.solution.begin(), r.solution.end());
  return r;
}

OracleResult exact_dp(const Instance& inst, std::int64_t cell_budget) {
  for (const Item& item : inst.items) {
    if (item.weight.get_den() != 1) throw std::invalid_argument("exact_dp: weights must be integers");
  }
  const std::int64_t W = floor_to_int64(inst.budget);
  const std::int64_t K = std::min<std::int64_t>(inst.cardinality, static_cast<std::int64_t>(inst.items.size()));
  const bool exact = inst.mode == CardinalityMode::kExactly;
  OracleResult r;
  r.method = OracleMethod::kExactDP;
  if (exact && inst.cardinality > static_cast<std::int64_t>(inst.items.size())) {
    r.feasible = false;
    return r;
  }
  const double cells = static_cast<double>(inst.items.size()) * (K + 1) * (W + 1);
  if (cells > static_cast<double>(cell_budget)) throw std::length_error("exact_dp: cell budget exceeded");

  mpz_class den = 1;
  for (const Item& item : inst.items) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), item.profit.get_den().get_mpz_t());
  std::vector<Wide> profit;
  const mpz_class limit = mpz_class(1) << 100;
  for (const Item& item : inst.items) {
    mpz_class v = item.profit.get_num() * (den / item.profit.get_den());
    if (v > limit) throw std::length_error("exact_dp: profits too large");
    Wide w = 0;
    std::string digits = v.get_str();
    for (char c : digits) w = w * 10 + (c - '0');
    profit.push_back(w);
  }

  const Wide kNone = std::numeric_limits<Wide>::min();
  const std::size_t cols = static_cast<std::size_t>(W + 1);
  std::vector<Wide> dp(static_cast<std::size_t>(K + 1) * cols, kNone);
  for (std::size_t w = 0; w < cols; ++w) dp[w] = 0;
  const bool track = cells <= 2e8;
  std::vector<bool> take;
  if (track) take.assign(static_cast<std::size_t>(cells), false);

  const std::size_t n = inst.items.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Item& item = inst.items[i];
    if (item.weight > inst.budget) continue;
    const std::int64_t wi = floor_to_int64(item.weight);
    for (std::int64_t k = K; k >= 1; --k) {
      Wide* row = &dp[static_cast<std::size_t>(k) * cols];
      const Wide* prev = &dp[static_cast<std::size_t>(k - 1) * cols];
      for (std::int64_t w = W; w >= wi; --w) {
        Wide from = prev[w - wi];
        if (from == kNone) continue;
        Wide cand = from + profit[i];
        if (cand > row[w]) {
          row[w] = cand;
          if (track) take[(i * static_cast<std::size_t>(K + 1) + static_cast<std::size_t>(k)) * cols + w] = true;
        }
      }
    }
  }
  std::int64_t best_k = -1;
  Wide best = kNone;
  for (std::int64_t k = exact ? K : 0; k <= K; ++k) {
    Wide v = dp[static_cast<std::size_t>(k) * cols + static_cast<std::size_t>(W)];
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  if (best == kNone) {
    r.feasible = false;
    return r;
  }
  std::string digits;
  for (Wide v = best; v > 0; v /= 10) digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  if (digits.empty()) digits = "0";
  r.value = Rational(mpz_class(digits), den);
  r.value.canonicalize();
  if (track) {
    std::int64_t k = best_k, w = W;
    for (std::size_t i = n; i-- > 0 && k > 0;) {
      if (take[(i * static_cast<std::size_t>(K + 1) + static_cast<std::size_t>(k)) * cols + static_cast<std::size_t>(w)]) {
        r.solution.push_back(inst.items[i].id);
        w -= floor_to_int64(inst.items[i].weight);
        --k;
      }
    }
    std::sort(r.solution.begin(), r.solution.end());
    r.has_solution = true;
  }
  return r;
}

NaiveConvolution naive_convolve(const WeightTable& a, const WeightTable& b, std::int64_t step) {
  const std::int64_t rows = a.rows();
  const std::int64_t z = a.z();
  NaiveConvolution out{WeightTable(rows, z), std::vector<std::uint16_t>(a.cells().size(), 0)};
  for (std::int64_t p = 0; p < rows; ++p) {
    for (std::int64_t k = 0; k <= z; ++k) {
      std::int64_t best = kInfWeight;
      std::int64_t best_theta = 0;
      for (std::int64_t p1 = 0; p1 <= p; ++p1) {
        const std::int64_t theta = (p1 + step - 1) / step;
        for (std::int64_t k1 = 0; k1 <= k; ++k1) {
          std::int64_t va = a.at(p1, k1), vb = b.at(p - p1, k - k1);
          std::int64_t v = (va == kInfWeight || vb == kInfWeight || va > kInfWeight - vb) ? kInfWeight : va + vb;
          if (v < best || (v == best && v != kInfWeight && theta < best_theta)) {
            best = v;
            best_theta = theta;
          }
        }
      }
      out.table.at(p, k) = best;
      out.theta[out.table.cell(p, k)] = static_cast<std::uint16_t>(best_theta);
    }
  }
  return out;
}

std::vector<std::int32_t> column_scan(const Slice& slice, const WeightTable& base, const WeightTable& acc) {
  std::vector<std::int32_t> out;
  for (std::int64_t zeta = 0; zeta < slice.columns; ++zeta) {
    const std::int64_t p = slice.p0 + zeta * slice.step;
    const std::int64_t k = slice.k0 + zeta;
    std::int64_t best = kInfWeight;
    std::int32_t arg = 0;
    for (std::int64_t theta = 0; theta <= k; ++theta) {
      std::int64_t p1 = std::min(theta * slice.step, p);
      std::int64_t va = base.at(p1, theta);
      std::int64_t rest = p - theta * slice.step;
      std::int64_t vb = acc.at(rest < 0 ? 0 : rest, k - theta);
      std::int64_t v = (va == kInfWeight || vb == kInfWeight || va > kInfWeight - vb) ? kInfWeight : va + vb;
      if (v < best) {
        best = v;
        arg = static_cast<std::int32_t>(theta);
      }
    }
    out.push_back(arg);
  }
  return out;
}

LpVertexResult lp_vertex(const std::vector<double>& profit, const std::vector<double>& weight,
                         const std::vector<double>& upper, double budget, double cap) {
  const std::size_t n = profit.size();
  if (n > kLpVertexLimit) throw std::length_error("lp_vertex: too many variables");
  using LD = long double;
  const LD tol_w = 1e-12L * std::max<LD>(1, std::fabs(budget));
  const LD tol_c = 1e-12L * std::max<LD>(1, std::fabs(cap));
  LpVertexResult best;
  best.value = -std::numeric_limits<LD>::infinity();
  std::vector<LD> x(n);

  auto consider = [&](std::uint32_t at_upper, int fi, LD xi, int fj, LD xj) {
    LD w = 0, c = 0, v = 0;
    for (std::size_t t = 0; t < n; ++t) {
      LD val = 0;
      if (static_cast<int>(t) == fi) {
        val = xi;
      } else if (static_cast<int>(t) == fj) {
        val = xj;
      } else if (at_upper >> t & 1u) {
        val = upper[t];
      }
      if (val < -1e-12L || val > upper[t] + 1e-12L) return;
      x[t] = val;
      w += val * weight[t];
      c += val;
      v += val * profit[t];
    }
    if (w > budget + tol_w || c > cap + tol_c) return;
    if (v > best.value) {
      best.value = v;
      best.x = x;
    }
  };

  const std::uint32_t full = n == 0 ? 0u : (n == 32 ? ~0u : ((1u << n) - 1u));
  auto for_each_assignment = [&](std::uint32_t rest, auto&& fn) {
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      fn(sub);
      if (sub == 0) break;
    }
  };
  auto fixed_sums = [&](std::uint32_t sub, LD& w, LD& c) {
    w = 0;
    c = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (sub >> t & 1u) {
        w += static_cast<LD>(upper[t]) * weight[t];
        c += upper[t];
      }
    }
  };

  for_each_assignment(full, [&](std::uint32_t sub) { consider(sub, -1, 0, -1, 0); });
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t rest = full & ~(1u << i);
    for_each_assignment(rest, [&](std::uint32_t sub) {
      LD w, c;
      fixed_sums(sub, w, c);
      if (weight[i] > 0) consider(sub, static_cast<int>(i), (budget - w) / weight[i], -1, 0);
      consider(sub, static_cast<int>(i), cap - c, -1, 0);
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (weight[i] == weight[j]) continue;
      std::uint32_t rest = full & ~(1u << i) & ~(1u << j);
      for_each_assignment(rest, [&](std::uint32_t sub) {
        LD w, c;
        fixed_sums(sub, w, c);
        LD rb = budget - w, rc = cap - c;
        LD xi = (rb - static_cast<LD>(weight[j]) * rc) / (static_cast<LD>(weight[i]) - weight[j]);
        consider(sub, static_cast<int>(i), xi, static_cast<int>(j), rc - xi);
      });
    }
  }
  if (best.x.empty()) {
    best.value = 0;
    best.x.assign(n, 0);
  }
  return best;
}

}  // namespace kkp
