#include "kkp/large_items.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace kkp {

ProfitGrid ProfitGrid::make(const Rational& opt_estimate, const Rational& eps, std::int64_t z) {
  if (z < 1) throw std::invalid_argument("grid needs z >= 1");
  ProfitGrid g;
  g.opt_estimate = opt_estimate;
  g.epsilon = eps;
  g.z = z;
  g.spacing = eps * opt_estimate / z;
  g.max_index = ceil_to_int64(Rational(z) / eps);
  return g;
}

std::vector<std::int64_t> ProfitGrid::reduced_indices() const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i <= max_index; i += z) out.push_back(i);
  return out;
}

WeightTable WeightTable::trivial(std::int64_t rows, std::int64_t z) {
  WeightTable t(rows, z);
  for (std::int64_t k = 0; k <= z; ++k) t.at(0, k) = 0;
  return t;
}

std::int64_t snap_class_profit(const LargeClass& cls, const ProfitGrid& grid) {
  std::int64_t tau = floor_to_int64(cls.rounded_profit / grid.spacing);
  if (tau < grid.z) throw std::logic_error("large class snapped below one eps OPT^ step");
  return tau;
}

ClassProfile make_profile(const LargeClass& cls, const ProfitGrid& grid) {
  ClassProfile p;
  p.step = snap_class_profit(cls, grid);
  p.prefix = cls.scaled_prefix;
  if (p.max_count() > grid.z) p.prefix.resize(static_cast<std::size_t>(grid.z) + 1);
  return p;
}

WeightTable base_table(const ClassProfile& profile, std::int64_t rows, std::int64_t z) {
  WeightTable t(rows, z);
  for (std::int64_t p = 0; p < rows; ++p) {
    std::int64_t theta = (p + profile.step - 1) / profile.step;
    for (std::int64_t k = 0; k <= z; ++k) {
      if (theta <= std::min(k, profile.max_count())) t.at(p, k) = profile.prefix[theta];
    }
  }
  return t;
}

std::vector<Slice> enumerate_slices(std::int64_t rows, std::int64_t z, std::int64_t step) {
  std::vector<Slice> out;
  auto push = [&](std::int64_t p0, std::int64_t k0) {
    std::int64_t cols = std::min((rows - 1 - p0) / step, z - k0) + 1;
    out.push_back({p0, k0, step, cols});
  };
  for (std::int64_t p0 = 0; p0 < rows; ++p0) push(p0, 0);
  for (std::int64_t k0 = 1; k0 <= z; ++k0) {
    for (std::int64_t p0 = 0; p0 < std::min(step, rows); ++p0) push(p0, k0);
  }
  return out;
}

std::int64_t column_theta_limit(const Slice& slice, std::int64_t zeta, const ClassProfile& profile) {
  return std::min(slice.k0 + zeta, profile.max_count());
}

std::int64_t column_value(const Slice& slice, std::int64_t zeta, std::int64_t theta, const ClassProfile& profile,
                          const WeightTable& acc) {
  std::int64_t p = slice.p0 + (zeta - theta) * slice.step;
  std::int64_t k = slice.k0 + zeta - theta;
  return saturating_add(profile.prefix[theta], acc.clamped(p, k));
}

namespace {

void scan_column(const Slice& slice, std::int64_t zeta, std::int64_t lo, std::int64_t hi, const ClassProfile& profile,
                 const WeightTable& acc, SliceResult& out) {
  std::int64_t best = kInfWeight;
  std::int64_t arg = 0;
  for (std::int64_t theta = lo; theta <= hi; ++theta) {
    std::int64_t v = column_value(slice, zeta, theta, profile, acc);
    if (v < best) {
      best = v;
      arg = theta;
    }
  }
  out.theta[zeta] = static_cast<std::int32_t>(arg);
  out.value[zeta] = best;
}

bool slope_holds(const SliceResult& r) {
  for (std::size_t z = 1; z < r.theta.size(); ++z) {
    if (r.theta[z] > r.theta[z - 1] + 1) return false;
  }
  return true;
}

}  // namespace

SliceResult slice_scan(const Slice& slice, const ClassProfile& profile, const WeightTable& acc) {
  SliceResult out;
  out.theta.assign(static_cast<std::size_t>(slice.columns), 0);
  out.value.assign(static_cast<std::size_t>(slice.columns), kInfWeight);
  for (std::int64_t zeta = 0; zeta < slice.columns; ++zeta) {
    scan_column(slice, zeta, 0, column_theta_limit(slice, zeta, profile), profile, acc, out);
  }
  out.slope_ok = slope_holds(out);
  return out;
}

SliceResult slice_index(const Slice& slice, const ClassProfile& profile, const WeightTable& acc) {
  SliceResult out;
  const std::int64_t cols = slice.columns;
  out.theta.assign(static_cast<std::size_t>(cols), 0);
  out.value.assign(static_cast<std::size_t>(cols), kInfWeight);
  if (cols == 0) return out;
  scan_column(slice, 0, 0, column_theta_limit(slice, 0, profile), profile, acc, out);

  std::int64_t stride = 1;
  while (stride * 2 < cols) stride *= 2;
  bool window_ok = true;
  for (; stride >= 1 && window_ok; stride /= 2) {
    for (std::int64_t zeta = stride; zeta < cols; zeta += 2 * stride) {
      std::int64_t lo = zeta + stride < cols ? out.theta[zeta + stride] - stride : 0;
      std::int64_t hi = out.theta[zeta - stride] + stride;
      lo = std::max<std::int64_t>(lo, 0);
      hi = std::min(hi, column_theta_limit(slice, zeta, profile));
      if (lo > hi) {
        window_ok = false;
        break;
      }
      scan_column(slice, zeta, lo, hi, profile, acc, out);
    }
  }
  if (!window_ok || !slope_holds(out)) {
    SliceResult full = slice_scan(slice, profile, acc);
    full.slope_ok = false;
    return full;
  }
  return out;
}

ConvolveResult convolve(const WeightTable& acc, const ClassProfile& profile, const ConvolveOptions& options,
                        ConvolveStats* stats) {
  const std::int64_t rows = acc.rows();
  const std::int64_t z = acc.z();
  ConvolveResult res{WeightTable(rows, z), std::vector<std::uint16_t>(acc.cells().size(), 0)};
  const std::vector<Slice> slices = enumerate_slices(rows, z, profile.step);
  const std::int64_t count = static_cast<std::int64_t>(slices.size());
  std::int64_t fallbacks = 0;
  std::int64_t mismatches = 0;

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : fallbacks, mismatches) if (options.parallel)
  for (std::int64_t s = 0; s < count; ++s) {
    const Slice& slice = slices[static_cast<std::size_t>(s)];
    SliceResult r;
    if (options.exhaustive) {
      r = slice_scan(slice, profile, acc);
    } else {
      r = slice_index(slice, profile, acc);
      if (!r.slope_ok) ++fallbacks;
      if (options.verify_slices) {
        SliceResult ref = slice_scan(slice, profile, acc);
        if (ref.theta != r.theta || ref.value != r.value) {
          ++mismatches;
          r = std::move(ref);
        }
      }
    }
    for (std::int64_t zeta = 0; zeta < slice.columns; ++zeta) {
      std::size_t c = res.table.cell(slice.p0 + zeta * slice.step, slice.k0 + zeta);
      res.table.at(slice.p0 + zeta * slice.step, slice.k0 + zeta) = r.value[zeta];
      res.theta[c] = static_cast<std::uint16_t>(r.theta[zeta]);
    }
  }
  if (stats) {
    stats->slices += count;
    stats->fallbacks += fallbacks;
    stats->mismatches += mismatches;
  }
  return res;
}

LargeTables build_phi_L(const Partition& part, const ConvolveOptions& options) {
  if (part.z > 65535) throw std::length_error("z too large for 16-bit backpointers");
  LargeTables out;
  out.grid = ProfitGrid::make(part.opt_estimate, part.epsilon, part.z);
  const std::int64_t rows = out.grid.rows();
  const double bytes = static_cast<double>(part.large_classes.size()) * rows * (part.z + 1) * 2.0;
  if (bytes > 4.0e9) throw std::length_error("backpointer storage exceeds 4 GB; increase epsilon");
  out.table = WeightTable::trivial(rows, part.z);

  std::vector<std::size_t> order(part.large_classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return part.large_classes[a].index < part.large_classes[b].index;
  });
  for (std::size_t idx : order) {
    ClassProfile profile = make_profile(part.large_classes[idx], out.grid);
    ConvolveResult r = convolve(out.table, profile, options, &out.stats);
    out.table = std::move(r.table);
    out.theta.push_back(std::move(r.theta));
    out.profiles.push_back(std::move(profile));
    out.class_order.push_back(idx);
  }
  return out;
}

std::int64_t profit_at(const WeightTable& table, std::int64_t budget, std::int64_t k) {
  std::int64_t lo = 0, hi = table.rows() - 1;
  if (table.at(0, k) > budget) return 0;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (table.at(mid, k) <= budget) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::vector<std::int64_t> trace_counts(const LargeTables& tables, std::int64_t p, std::int64_t k) {
  std::vector<std::int64_t> counts(tables.theta.size(), 0);
  for (std::size_t s = tables.theta.size(); s-- > 0;) {
    std::int64_t theta = tables.theta[s][tables.table.cell(p, k)];
    counts[s] = theta;
    p = std::max<std::int64_t>(p - theta * tables.profiles[s].step, 0);
    k -= theta;
    if (k < 0) throw std::logic_error("backpointer walk exceeded the cardinality");
  }
  return counts;
}

std::vector<ItemId> retrieve_large(const LargeTables& tables, const Partition& part, std::int64_t p, std::int64_t k) {
  std::vector<ItemId> ids;
  if (tables.table.at(p, k) == kInfWeight) throw std::logic_error("retrieval from an infeasible cell");
  std::vector<std::int64_t> counts = trace_counts(tables, p, k);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const LargeClass& cls = part.large_classes[tables.class_order[s]];
    for (std::int64_t j = 0; j < counts[s]; ++j) ids.push_back(cls.members[static_cast<std::size_t>(j)].id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace kkp
