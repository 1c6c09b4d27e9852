#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kkp/instance.hpp"

namespace kkp {

enum class Distribution { kUniform, kCorrelated, kSubsetSum };

struct GeneratorParams {
  std::size_t n = 18;
  std::int64_t cardinality = 6;
  Distribution distribution = Distribution::kUniform;
  bool integer_weights = true;
  std::int64_t max_weight = 100;  // weights lie in [1, max_weight]
  std::int64_t max_profit = 100;
  // Budget as a fraction of the total weight, given as num/den.
  std::int64_t budget_num = 1;
  std::int64_t budget_den = 2;
  std::optional<std::int64_t> budget;  // overrides the fraction
  CardinalityMode mode = CardinalityMode::kAtMost;
};

// Deterministic for a given (params, seed) on every platform: the generator
// uses splitmix64 directly rather than library distributions.
Instance generate_instance(const GeneratorParams& params, std::uint64_t seed);

// Independent sub-seed for the index-th instance of a corpus.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

const char* distribution_name(Distribution d);
std::optional<Distribution> parse_distribution(const std::string& text);

}  // namespace kkp
