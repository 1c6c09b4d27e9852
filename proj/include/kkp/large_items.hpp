#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "kkp/preprocessing.hpp"

namespace kkp {

inline constexpr std::int64_t kInfWeight = std::numeric_limits<std::int64_t>::max();

inline std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a == kInfWeight || b == kInfWeight || a > kInfWeight - b) return kInfWeight;
  return a + b;
}

// Uniform profit grid x_i = i * spacing, i = 0..max_index, spacing = eps OPT^ / z.
struct ProfitGrid {
  Rational opt_estimate;
  Rational epsilon;
  std::int64_t z = 1;
  Rational spacing;
  std::int64_t max_index = 0;  // ceil(z / eps)

  static ProfitGrid make(const Rational& opt_estimate, const Rational& eps, std::int64_t z);

  std::int64_t rows() const { return max_index + 1; }
  Rational point(std::int64_t index) const { return spacing * index; }
  // Indices of X' = {0} U {i eps OPT^}: multiples of z.
  std::vector<std::int64_t> reduced_indices() const;
};

// Minimum weight per (profit index, cardinality) cell; kInfWeight is +inf.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(std::int64_t rows, std::int64_t z, std::int64_t fill = kInfWeight)
      : rows_(rows), cols_(z + 1), cells_(static_cast<std::size_t>(rows * (z + 1)), fill) {}

  // 0 at profit index 0, +inf elsewhere.
  static WeightTable trivial(std::int64_t rows, std::int64_t z);

  std::int64_t rows() const { return rows_; }
  std::int64_t z() const { return cols_ - 1; }
  std::size_t cell(std::int64_t p, std::int64_t k) const { return static_cast<std::size_t>(p * cols_ + k); }
  std::int64_t at(std::int64_t p, std::int64_t k) const { return cells_[cell(p, k)]; }
  std::int64_t& at(std::int64_t p, std::int64_t k) { return cells_[cell(p, k)]; }
  // Required profit below zero counts as zero.
  std::int64_t clamped(std::int64_t p, std::int64_t k) const { return at(p < 0 ? 0 : p, k); }
  const std::vector<std::int64_t>& cells() const { return cells_; }

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<std::int64_t> cells_;
};

// A large class reduced to what the convolution needs: profit step per
// member in grid units and the prefix sums of its lightest weights.
struct ClassProfile {
  std::int64_t step = 1;
  std::vector<std::int64_t> prefix;  // prefix[theta], theta = 0..min(|class|, z)

  std::int64_t max_count() const { return static_cast<std::int64_t>(prefix.size()) - 1; }
};

// Cells (p0 + zeta * step, k0 + zeta) for zeta = 0..columns-1.
struct Slice {
  std::int64_t p0 = 0;
  std::int64_t k0 = 0;
  std::int64_t step = 1;
  std::int64_t columns = 0;
};

// tau_a = floor(p_a / spacing); at least z for a large class.
std::int64_t snap_class_profit(const LargeClass& cls, const ProfitGrid& grid);
ClassProfile make_profile(const LargeClass& cls, const ProfitGrid& grid);

// Base inverse weight function of one class on the grid.
WeightTable base_table(const ClassProfile& profile, std::int64_t rows, std::int64_t z);

// Boundaries (p0, 0) for every row and (p0 < step, k0 >= 1); together the
// slices cover every cell exactly once.
std::vector<Slice> enumerate_slices(std::int64_t rows, std::int64_t z, std::int64_t step);

// Objective of column zeta at class count theta.
std::int64_t column_value(const Slice& slice, std::int64_t zeta, std::int64_t theta, const ClassProfile& profile,
                          const WeightTable& acc);
// Largest admissible theta in column zeta.
std::int64_t column_theta_limit(const Slice& slice, std::int64_t zeta, const ClassProfile& profile);

struct SliceResult {
  std::vector<std::int32_t> theta;   // chi per column, smallest argmin
  std::vector<std::int64_t> value;   // column minimum
  bool slope_ok = true;              // chi(zeta+1) <= chi(zeta) + 1 everywhere
};

// Divide and conquer over columns: even columns first, then each odd column
// searches only between the bounds implied by its neighbours.
SliceResult slice_index(const Slice& slice, const ClassProfile& profile, const WeightTable& acc);
// Reference: every column scanned over its whole theta range.
SliceResult slice_scan(const Slice& slice, const ClassProfile& profile, const WeightTable& acc);

struct ConvolveOptions {
  bool parallel = true;
  bool exhaustive = false;     // use slice_scan everywhere
  bool verify_slices = false;  // compare slice_index against slice_scan
};

struct ConvolveStats {
  std::int64_t slices = 0;
  std::int64_t fallbacks = 0;   // slope check failed, slice rescanned
  std::int64_t mismatches = 0;  // verify_slices disagreements
};

struct ConvolveResult {
  WeightTable table;
  std::vector<std::uint16_t> theta;  // per cell: chosen count of the class
};

ConvolveResult convolve(const WeightTable& acc, const ClassProfile& profile, const ConvolveOptions& options = {},
                        ConvolveStats* stats = nullptr);

struct LargeTables {
  ProfitGrid grid;
  WeightTable table;
  std::vector<std::size_t> class_order;           // partition.large_classes index per fold step
  std::vector<ClassProfile> profiles;             // per fold step
  std::vector<std::vector<std::uint16_t>> theta;  // per fold step, per cell
  ConvolveStats stats;

  std::int64_t cell_count() const { return table.rows() * (table.z() + 1); }
};

// Folds convolve over the non-empty large classes in increasing profit order.
LargeTables build_phi_L(const Partition& part, const ConvolveOptions& options = {});

// Largest profit index whose cell weight is within budget (0 if none).
std::int64_t profit_at(const WeightTable& table, std::int64_t budget, std::int64_t k);

// Per fold step, the class count used by cell (p, k); walks the backpointers.
std::vector<std::int64_t> trace_counts(const LargeTables& tables, std::int64_t p, std::int64_t k);

// Ids of the chosen members: the theta lightest of each class.
std::vector<ItemId> retrieve_large(const LargeTables& tables, const Partition& part, std::int64_t p, std::int64_t k);

}  // namespace kkp
