// Acceptance suite: one line per criterion, exit status 1 if any fails.
//   acceptance            run all criteria
//   acceptance -c 3 -c 4  run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kkp/combiner.hpp"
#include "kkp/generator.hpp"
#include "kkp/large_items.hpp"
#include "kkp/oracles.hpp"
#include "kkp/preprocessing.hpp"
#include "kkp/small_items.hpp"
#include "reference.hpp"

using namespace kkp;

namespace {

// Tolerances and sizes fixed by the acceptance criteria.
constexpr int kGuaranteeInstances = 500;
constexpr double kGuaranteeSeconds = 300.0;
constexpr int kMidScaleInstances = 100;
constexpr int kTableSystems = 200;
constexpr int kDiscretizationInstances = 100;
constexpr int kQueriesPerInstance = 20;
constexpr int kLpPrograms = 300;
constexpr double kUpsilon1Tolerance = 1e-12;
constexpr double kUpsilon4Tolerance = 1e-9;
constexpr int kSmallSubinstances = 100;
constexpr double kConcavityTolerance = 1e-9;
constexpr double kTrendRatio = 2.0;
constexpr int kTrendRepetitions = 5;
constexpr int kExactInstances = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool relative_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(b), 1.0);
}

// 1. Approximation guarantee on brute-force sized instances.
Outcome guarantee_small() {
  std::mt19937_64 rng(101);
  const Rational eps(1, 4);
  int fails = 0;
  Rational worst = 1;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kGuaranteeInstances; ++i) {
    Instance inst = ref::random_instance(rng, 18, 6, i % 2 == 0);
    OracleResult opt = brute_force(inst);
    Solution sol = solve(inst, eps);
    FeasibilityReport rep = evaluate_solution(inst, sol.selected);
    bool ok = rep.feasible && rep.profit >= (1 - eps) * opt.value;
    if (opt.value > 0) worst = std::min<Rational>(worst, rep.profit / opt.value);
    if (!ok) ++fails;
  }
  double secs = seconds_since(t0);
  Outcome o;
  o.pass = fails == 0 && secs < kGuaranteeSeconds;
  o.detail = fmt("%d/%d below 0.75 OPT, worst ratio %.4f, %.1f s", fails, kGuaranteeInstances, to_double(worst), secs);
  return o;
}

// 2. Mid-scale guarantee against the DP oracle.
Outcome guarantee_mid() {
  std::mt19937_64 rng(202);
  int fails = 0, runs = 0;
  Rational worst = 1;
  for (int i = 0; i < kMidScaleInstances; ++i) {
    GeneratorParams p;
    p.n = std::uniform_int_distribution<std::size_t>(20, 200)(rng);
    p.cardinality = std::uniform_int_distribution<std::int64_t>(1, 20)(rng);
    p.distribution = ref::distribution_for(i);
    p.max_weight = std::uniform_int_distribution<std::int64_t>(10, 200)(rng);
    p.max_profit = std::uniform_int_distribution<std::int64_t>(10, 1000)(rng);
    p.budget = std::uniform_int_distribution<std::int64_t>(1, 1000)(rng);
    Instance inst = generate_instance(p, rng());
    OracleResult opt = exact_dp(inst);
    for (const Rational& eps : {Rational(1, 10), Rational(3, 10)}) {
      Solution sol = solve(inst, eps);
      FeasibilityReport rep = evaluate_solution(inst, sol.selected);
      ++runs;
      if (!(rep.feasible && rep.profit >= (1 - eps) * opt.value)) ++fails;
      if (opt.value > 0) worst = std::min<Rational>(worst, rep.profit / opt.value);
    }
  }
  return {fails == 0, fmt("%d/%d solves below (1-eps) OPT, worst ratio %.4f", fails, runs, to_double(worst))};
}

// Random folds shared by criteria 3 and 4.
struct TableSystem {
  std::int64_t rows = 0, z = 0;
  std::vector<ClassProfile> profiles;
};

std::vector<TableSystem> table_systems() {
  std::mt19937_64 rng(303);
  std::vector<TableSystem> out;
  for (int s = 0; s < kTableSystems; ++s) {
    TableSystem sys;
    sys.z = std::uniform_int_distribution<std::int64_t>(1, 8)(rng);
    sys.rows = std::uniform_int_distribution<std::int64_t>(sys.z + 1, 64)(rng);
    int classes = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int c = 0; c < classes; ++c) {
      ClassProfile prof;
      prof.step = std::uniform_int_distribution<std::int64_t>(sys.z, 3 * sys.z)(rng);
      std::int64_t m = std::uniform_int_distribution<std::int64_t>(1, sys.z)(rng);
      std::vector<std::int64_t> w(static_cast<std::size_t>(m));
      // Narrow weight ranges make ties common.
      std::int64_t hi = s % 2 ? 5 : 1000;
      for (auto& x : w) x = std::uniform_int_distribution<std::int64_t>(1, hi)(rng);
      std::sort(w.begin(), w.end());
      prof.prefix.assign(1, 0);
      for (std::int64_t x : w) prof.prefix.push_back(prof.prefix.back() + x);
      sys.profiles.push_back(prof);
    }
    std::sort(sys.profiles.begin(), sys.profiles.end(),
              [](const ClassProfile& a, const ClassProfile& b) { return a.step < b.step; });
    out.push_back(std::move(sys));
  }
  return out;
}

// 3. convolve against the naive enumeration, and backpointer walks.
Outcome convolution_oracle() {
  int table_mismatch = 0, theta_mismatch = 0, walk_mismatch = 0, s = 0;
  for (const TableSystem& sys : table_systems()) {
    WeightTable acc = WeightTable::trivial(sys.rows, sys.z);
    std::vector<std::vector<std::uint16_t>> thetas;
    for (const ClassProfile& prof : sys.profiles) {
      ConvolveOptions opt;
      opt.parallel = s++ % 2 == 0;
      ConvolveResult got = convolve(acc, prof, opt);
      NaiveConvolution want = naive_convolve(base_table(prof, sys.rows, sys.z), acc, prof.step);
      if (!(got.table == want.table)) ++table_mismatch;
      if (got.theta != want.theta) ++theta_mismatch;
      thetas.push_back(got.theta);
      acc = std::move(got.table);
    }
    for (std::int64_t p = 0; p < sys.rows; ++p) {
      for (std::int64_t k = 0; k <= sys.z; ++k) {
        if (acc.at(p, k) == kInfWeight) continue;
        std::int64_t pp = p, kk = k, weight = 0, profit = 0;
        for (std::size_t c = thetas.size(); c-- > 0;) {
          std::int64_t th = thetas[c][acc.cell(pp, kk)];
          weight += sys.profiles[c].prefix[static_cast<std::size_t>(th)];
          profit += th * sys.profiles[c].step;
          pp = std::max<std::int64_t>(pp - th * sys.profiles[c].step, 0);
          kk -= th;
        }
        if (weight != acc.at(p, k) || kk < 0 || profit < p) ++walk_mismatch;
      }
    }
  }
  return {table_mismatch + theta_mismatch + walk_mismatch == 0,
          fmt("%d table, %d backpointer, %d walk mismatches over %d systems", table_mismatch, theta_mismatch,
              walk_mismatch, kTableSystems)};
}

// 4. Slope property and slice_index against column_scan on every slice.
Outcome slope_property() {
  long slices = 0, slope_violations = 0, index_mismatch = 0;
  for (const TableSystem& sys : table_systems()) {
    WeightTable acc = WeightTable::trivial(sys.rows, sys.z);
    for (const ClassProfile& prof : sys.profiles) {
      WeightTable base = base_table(prof, sys.rows, sys.z);
      for (const Slice& slice : enumerate_slices(sys.rows, sys.z, prof.step)) {
        ++slices;
        SliceResult scan = slice_scan(slice, prof, acc);
        for (std::size_t a = 0; a < scan.theta.size(); ++a) {
          for (std::size_t b = a + 1; b < scan.theta.size(); ++b) {
            if (scan.theta[b] - scan.theta[a] > static_cast<std::int32_t>(b - a)) ++slope_violations;
          }
        }
        if (slice_index(slice, prof, acc).theta != column_scan(slice, base, acc)) ++index_mismatch;
      }
      acc = convolve(acc, prof).table;
    }
  }
  return {slope_violations == 0 && index_mismatch == 0,
          fmt("%ld slices, %ld slope violations, %ld slice_index mismatches", slices, slope_violations,
              index_mismatch)};
}

// 5. Profit-side discretization error of the large-item table.
Outcome discretization_bound() {
  std::mt19937_64 rng(505);
  const Rational eps_choices[] = {Rational(1, 4), Rational(1, 5), Rational(1, 8)};
  int fails = 0, queries = 0, instances = 0;
  while (instances < kDiscretizationInstances) {
    Instance inst = ref::random_instance(rng, 10, 6, true);
    Rational eps = eps_choices[instances % 3];
    Partition part;
    try {
      part = build_partition(inst, eps);
    } catch (const std::domain_error&) {
      continue;
    }
    ++instances;
    LargeTables tables = build_phi_L(part);
    std::vector<Rational> profit;
    std::vector<std::int64_t> weight;
    for (const LargeClass& c : part.large_classes) {
      for (const Item& m : c.members) {
        profit.push_back(c.rounded_profit);
        weight.push_back(part.scale.scale(m.weight));
      }
    }
    const Rational bound = tables.grid.spacing * (part.z + 1);
    for (int q = 0; q < kQueriesPerInstance; ++q) {
      std::int64_t omega = std::uniform_int_distribution<std::int64_t>(0, part.scale.budget)(rng);
      std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, part.z)(rng);
      Rational exact = 0;
      for (std::uint32_t mask = 0; mask < (1u << profit.size()); ++mask) {
        if (__builtin_popcount(mask) > k) continue;
        Rational p = 0;
        std::int64_t w = 0;
        for (std::size_t i = 0; i < profit.size(); ++i) {
          if (mask >> i & 1u) {
            p += profit[i];
            w += weight[i];
          }
        }
        if (w <= omega && p > exact) exact = p;
      }
      Rational discrete = tables.grid.point(profit_at(tables.table, omega, k));
      Rational gap = exact - discrete;
      if (gap < 0) gap = -gap;
      ++queries;
      if (gap > bound) ++fails;
    }
  }
  return {fails == 0, fmt("%d/%d queries outside (z+1) spacing", fails, queries)};
}

// 6. The counterexample: exact value w/2 at (OPT/2, 3), discrete value w.
Outcome grid_counterexample() {
  // OPT = 1, omega = 4. Class 1: (1/8, 2), (1/3, 1). Class 2: (1/8, 2), (1/6, 1).
  const std::vector<std::pair<Rational, std::int64_t>> s1 = {{Rational(1, 8), 2}, {Rational(1, 3), 1}};
  const std::vector<std::pair<Rational, std::int64_t>> s2 = {{Rational(1, 8), 2}, {Rational(1, 6), 1}};
  const std::int64_t omega = 4, z = 3;
  auto min_weight = [](const std::vector<std::pair<Rational, std::int64_t>>& items, const Rational& need,
                       std::int64_t k) {
    std::int64_t best = kInfWeight;
    for (std::uint32_t mask = 0; mask < (1u << items.size()); ++mask) {
      if (__builtin_popcount(mask) > k) continue;
      Rational p = 0;
      std::int64_t w = 0;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (mask >> i & 1u) {
          p += items[i].first;
          w += items[i].second;
        }
      }
      if (p >= need) best = std::min(best, w);
    }
    return best;
  };
  auto all = s1;
  all.insert(all.end(), s2.begin(), s2.end());
  const std::int64_t exact = min_weight(all, Rational(1, 2), 3);

  std::ostringstream detail;
  detail << "exact " << exact;
  bool pass = exact == omega / 2;
  for (int d = 2; d <= 10; ++d) {
    const std::int64_t rows = (1 << d) + 1;
    const Rational spacing(1, 1 << d);
    WeightTable a(rows, z), b(rows, z);
    for (std::int64_t p = 0; p < rows; ++p) {
      for (std::int64_t k = 0; k <= z; ++k) {
        a.at(p, k) = min_weight(s1, spacing * p, k);
        b.at(p, k) = min_weight(s2, spacing * p, k);
      }
    }
    WeightTable disc = naive_convolve(a, b, 1).table;
    std::int64_t got = disc.at(1 << (d - 1), 3);
    if (got != omega) pass = false;
    for (std::int64_t p = 0; p < rows; ++p) {
      for (std::int64_t k = 0; k <= z; ++k) {
        if (disc.at(p, k) < min_weight(all, spacing * p, k)) pass = false;
      }
    }
    if (d == 2 || d == 10) detail << ", d=" << d << " discrete " << got;
  }
  detail << " (omega " << omega << ")";
  return {pass, detail.str()};
}

// 7. LP exactness of the two relaxations.
Outcome lp_exactness() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  int fails1 = 0, frac_fails = 0, fails4 = 0;
  for (int t = 0; t < kLpPrograms; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    std::vector<SmallItem> items;
    std::vector<double> p, w, up;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // Integer weights as on the solver scale; some repeated profits.
      double profit = t % 3 == 0 ? std::floor(unit(rng) * 4) / 4 + 0.25 : unit(rng);
      std::int64_t weight = std::uniform_int_distribution<std::int64_t>(1, 50)(rng);
      items.push_back({static_cast<ItemId>(i + 1), profit, weight, 1});
      p.push_back(profit);
      w.push_back(static_cast<double>(weight));
      up.push_back(1);
      total += static_cast<double>(weight);
    }
    std::int64_t omega = std::uniform_int_distribution<std::int64_t>(0, static_cast<std::int64_t>(total))(rng);
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, static_cast<std::int64_t>(n))(rng);
    SmallEval ev = upsilon1(items, omega, k);
    LpVertexResult want = lp_vertex(p, w, up, static_cast<double>(omega), static_cast<double>(k));
    if (!relative_close(ev.value, static_cast<double>(want.value), kUpsilon1Tolerance)) ++fails1;
    if (ev.fractional_solution.size() > 2) ++frac_fails;
  }
  for (int t = 0; t < kLpPrograms; ++t) {
    const Rational eps(1, 8);
    RoundedSmall rounded;
    rounded.omega = std::uniform_int_distribution<std::int64_t>(1, 400)(rng);
    std::size_t types = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::vector<double> p, w, up;
    ItemId next = 1;
    for (std::size_t i = 0; i < types; ++i) {
      SmallType ty;
      ty.profit_class = static_cast<long>(i);
      ty.profit = unit(rng);
      ty.weight = std::uniform_int_distribution<int>(1, 120)(rng) * 1.0;
      std::size_t count = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      for (std::size_t c = 0; c < count; ++c) ty.members.push_back(next++);
      p.push_back(ty.profit);
      w.push_back(ty.weight);
      up.push_back(static_cast<double>(count));
      rounded.s2.push_back(ty);
    }
    std::int64_t cap = std::uniform_int_distribution<std::int64_t>(1, 12)(rng);
    double budget = static_cast<double>((1.0L - static_cast<long double>(to_double(eps))) * rounded.omega);
    SmallEval ev = upsilon4(rounded, eps, cap);
    LpVertexResult want = lp_vertex(p, w, up, budget, static_cast<double>(cap));
    if (!relative_close(ev.value, static_cast<double>(want.value), kUpsilon4Tolerance)) ++fails4;
  }
  return {fails1 + frac_fails + fails4 == 0,
          fmt("upsilon1 %d/%d off, %d with >2 fractional; upsilon4 %d/%d off", fails1, kLpPrograms, frac_fails,
              fails4, kLpPrograms)};
}

// A partition holding only small items, built directly.
Partition small_partition(std::mt19937_64& rng, const Rational& eps, std::int64_t K, std::size_t n,
                          std::int64_t max_weight) {
  Partition part;
  part.epsilon = eps;
  part.cardinality = K;
  part.z = cardinality_cap(K, eps);
  part.opt_estimate = 1;
  part.opt_lower_bound = Rational(1, 2);
  part.scale.factor = 1;
  part.scale.exact = true;
  GeometricPowers powers(eps);
  // Class i holds profit eps (1+eps)^-i, which stays at or above eps/K.
  long classes = 1;
  while (eps / powers.get(classes + 1) >= eps / K) ++classes;
  std::map<long, std::vector<Item>> by_class;
  for (std::size_t i = 0; i < n; ++i) {
    long c = std::uniform_int_distribution<long>(1, classes)(rng);
    std::int64_t w = std::uniform_int_distribution<std::int64_t>(1, max_weight)(rng);
    by_class[c].push_back(Item(static_cast<ItemId>(i + 1), eps / powers.get(c), Rational(w)));
  }
  std::int64_t total = 0;
  for (auto& [c, members] : by_class) {
    std::sort(members.begin(), members.end(), [](const Item& a, const Item& b) {
      return a.weight != b.weight ? a.weight < b.weight : a.id < b.id;
    });
    if (static_cast<std::int64_t>(members.size()) > K) members.resize(static_cast<std::size_t>(K));
    SmallClass sc;
    sc.index = c;
    sc.rounded_profit = eps / powers.get(c);
    sc.relative_profit = to_double(sc.rounded_profit);
    for (const Item& m : members) total += floor_to_int64(m.weight);
    sc.members = members;
    part.small_classes.push_back(std::move(sc));
  }
  part.scale.budget = total;
  return part;
}

// 8. Small-item relaxations against the exact small-item optimum.
Outcome small_item_bounds() {
  std::mt19937_64 rng(808);
  int fails = 0, queries = 0;
  double worst1 = 0, worst2 = 0;
  for (int s = 0; s < kSmallSubinstances; ++s) {
    const Rational eps = s % 2 ? Rational(1, 4) : Rational(1, 5);
    const std::int64_t inv = floor_to_int64(1 / eps);
    const bool regime1 = s % 4 < 2;
    std::int64_t K = regime1 ? std::uniform_int_distribution<std::int64_t>(1, inv)(rng)
                             : std::uniform_int_distribution<std::int64_t>(inv + 1, 14)(rng);
    Partition part = small_partition(rng, eps, K, std::uniform_int_distribution<std::size_t>(4, 24)(rng), 60);
    SmallSolver solver(part);
    std::vector<SmallItem> items(solver.items().begin(), solver.items().end());
    const double bound = (regime1 ? 2 : 4) * to_double(eps);
    for (int q = 0; q < 5; ++q) {
      std::int64_t omega = std::uniform_int_distribution<std::int64_t>(0, part.scale.budget)(rng);
      std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, K)(rng);
      double v = solver.phi_dag(omega, k);
      double exact = ref::small_phi_exact(items, omega, k);
      double gap = std::fabs(v - exact);
      (regime1 ? worst1 : worst2) = std::max(regime1 ? worst1 : worst2, gap / to_double(eps));
      ++queries;
      if (gap > bound + 1e-12) ++fails;
    }
  }
  return {fails == 0, fmt("%d/%d queries outside the bound; worst gap %.3f eps (upsilon1), %.3f eps (upsilon2)",
                          fails, queries, worst1, worst2)};
}

// 9. Concavity in ell and binary search against the linear scan.
Outcome concavity() {
  std::mt19937_64 rng(909);
  int concave_fails = 0, search_fails = 0, sequences = 0;
  for (int s = 0; s < kSmallSubinstances; ++s) {
    const Rational eps = s % 2 ? Rational(1, 4) : Rational(1, 3);
    std::int64_t K = std::uniform_int_distribution<std::int64_t>(floor_to_int64(1 / eps) + 1, 12)(rng);
    Partition part = small_partition(rng, eps, K, std::uniform_int_distribution<std::size_t>(4, 30)(rng), 80);
    SmallSolver solver(part);
    for (int q = 0; q < 5; ++q) {
      std::int64_t omega = std::uniform_int_distribution<std::int64_t>(1, part.scale.budget)(rng);
      std::int64_t k = std::uniform_int_distribution<std::int64_t>(1, K)(rng);
      std::vector<double> g;
      for (std::int64_t ell = 0; ell <= k; ++ell) g.push_back(solver.upsilon5(omega, ell, k));
      ++sequences;
      for (std::size_t l = 1; l + 1 < g.size(); ++l) {
        if (g[l - 1] + g[l + 1] > 2 * g[l] + kConcavityTolerance) {
          ++concave_fails;
          break;
        }
      }
      if (std::fabs(solver.upsilon2(omega, k).value - solver.upsilon2_linear(omega, k)) > kConcavityTolerance) {
        ++search_fails;
      }
    }
  }
  return {concave_fails + search_fails == 0,
          fmt("%d/%d sequences not concave, %d search/scan mismatches", concave_fails, sequences, search_fails)};
}

// 10. Wall time over a K sweep with everything else fixed.
Outcome k_trend() {
  GeneratorParams p;
  p.n = 2000;
  p.max_weight = 1000;
  p.max_profit = 1000;
  p.budget_num = 2;
  p.budget_den = 5;
  const Instance base = generate_instance(p, 1010);
  SolveOptions opt;
  opt.internal_eps = Rational(1, 10);
  std::vector<double> medians;
  std::ostringstream detail;
  for (std::int64_t K : {16, 64, 256, 1024}) {
    Instance inst = base;
    inst.cardinality = K;
    std::vector<double> ms;
    SolveDiagnostics diag;
    for (int r = 0; r < kTrendRepetitions; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      solve(inst, Rational(4, 5), opt, &diag);
      ms.push_back(seconds_since(t0) * 1000);
    }
    std::sort(ms.begin(), ms.end());
    medians.push_back(ms[ms.size() / 2]);
    detail << "K=" << K << " " << fmt("%.2f", medians.back()) << " ms (z=" << diag.z << ") ";
  }
  auto [lo, hi] = std::minmax_element(medians.begin(), medians.end());
  double ratio = *hi / *lo;
  detail << fmt("max/min %.2f", ratio);
  return {ratio < kTrendRatio, detail.str()};
}

// 11. Exactly-K solving through the conversion.
Outcome exact_mode() {
  std::mt19937_64 rng(1111);
  int fails = 0, infeasible = 0;
  for (int i = 0; i < kExactInstances; ++i) {
    Instance inst = ref::random_instance(rng, 14, 6, i % 2 == 0, CardinalityMode::kExactly);
    Rational eps = i % 2 ? Rational(1, 4) : Rational(1, 10);
    OracleResult opt = brute_force(inst);
    Solution sol = solve(inst, eps);
    if (!opt.feasible) {
      ++infeasible;
      if (sol.status != SolveStatus::kInfeasible) ++fails;
      continue;
    }
    FeasibilityReport rep = evaluate_solution(inst, sol.selected);
    bool ok = rep.feasible && rep.count == inst.cardinality && rep.profit >= (1 - eps) * opt.value;
    if (!ok) ++fails;
  }
  return {fails == 0, fmt("%d/%d failures (%d infeasible instances)", fails, kExactInstances, infeasible)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("-c,--criterion", only, "Run only these criteria (1-11)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "approximation guarantee, n <= 18", guarantee_small},
      {2, "mid-scale guarantee vs exact DP", guarantee_mid},
      {3, "convolve == naive convolution", convolution_oracle},
      {4, "slice slope property", slope_property},
      {5, "discretization error <= (z+1) spacing", discretization_bound},
      {6, "grid counterexample", grid_counterexample},
      {7, "LP exactness", lp_exactness},
      {8, "small-item relaxation bounds", small_item_bounds},
      {9, "concavity in ell", concavity},
      {10, "K-independence trend", k_trend},
      {11, "exactly-K via conversion", exact_mode},
  };
  int failed = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o = c.run();
    std::printf("criterion %2d  %s  %-40s %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
