#include "kkp/generator.hpp"

#include <algorithm>

namespace kkp {
namespace {

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi]; the modulo bias is irrelevant at these ranges.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix mix(base ^ (index * 0xd1b54a32d192ed03ULL));
  mix.next();
  return mix.next();
}

Instance generate_instance(const GeneratorParams& params, std::uint64_t seed) {
  SplitMix rng(seed);
  Instance inst;
  inst.cardinality = params.cardinality;
  inst.mode = params.mode;
  Rational total_weight = 0;
  for (std::size_t i = 0; i < params.n; ++i) {
    Rational w;
    if (params.integer_weights) {
      w = rng.range(1, params.max_weight);
    } else {
      std::int64_t den = rng.range(1, 7);
      w = Rational(rng.range(den, params.max_weight * den), den);
      w.canonicalize();
    }
    Rational p;
    switch (params.distribution) {
      case Distribution::kUniform:
        p = rng.range(0, params.max_profit);
        break;
      case Distribution::kCorrelated: {
        std::int64_t spread = std::max<std::int64_t>(1, params.max_weight / 10);
        Rational base = w * params.max_profit / params.max_weight;
        p = base + rng.range(-spread, spread);
        if (p < 0) p = 0;
        break;
      }
      case Distribution::kSubsetSum:
        p = w;
        break;
    }
    p.canonicalize();
    total_weight += w;
    inst.items.push_back({static_cast<ItemId>(i + 1), p, w});
  }
  if (params.budget) {
    inst.budget = *params.budget;
  } else {
    Rational b = total_weight * params.budget_num / params.budget_den;
    inst.budget = floor_to_int64(b);
  }
  return inst;
}

const char* distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kCorrelated:
      return "correlated";
    case Distribution::kSubsetSum:
      return "subset_sum";
  }
  return "uniform";
}

std::optional<Distribution> parse_distribution(const std::string& text) {
  if (text == "uniform") return Distribution::kUniform;
  if (text == "correlated") return Distribution::kCorrelated;
  if (text == "subset_sum") return Distribution::kSubsetSum;
  return std::nullopt;
}

}  // namespace kkp
