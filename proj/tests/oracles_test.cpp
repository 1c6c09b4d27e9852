#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "kkp/generator.hpp"
#include "kkp/instance_io.hpp"
#include "kkp/oracles.hpp"
#include "reference.hpp"

using namespace kkp;

TEST(Oracles, BruteForceMatchesEnumeration) {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 200; ++t) {
    CardinalityMode mode = t % 3 == 0 ? CardinalityMode::kExactly : CardinalityMode::kAtMost;
    Instance inst = ref::random_instance(rng, 12, 5, t % 2 == 0, mode);
    ref::Optimum want = ref::enumerate(inst);
    OracleResult got = brute_force(inst);
    ASSERT_EQ(got.feasible, want.feasible);
    if (!want.feasible) continue;
    EXPECT_EQ(got.value, want.value);
    ASSERT_TRUE(got.has_solution);
    FeasibilityReport rep = evaluate_solution(inst, got.solution);
    EXPECT_TRUE(rep.feasible);
    EXPECT_EQ(rep.profit, got.value);
  }
}

TEST(Oracles, DpMatchesBruteForce) {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 200; ++t) {
    CardinalityMode mode = t % 3 == 0 ? CardinalityMode::kExactly : CardinalityMode::kAtMost;
    Instance inst = ref::random_instance(rng, 14, 6, true, mode);
    OracleResult a = brute_force(inst);
    OracleResult b = exact_dp(inst);
    ASSERT_EQ(a.feasible, b.feasible);
    if (a.feasible) EXPECT_EQ(a.value, b.value);
  }
}

TEST(Oracles, Guards) {
  GeneratorParams p;
  p.n = kBruteForceLimit + 1;
  Instance big = generate_instance(p, 1);
  EXPECT_THROW(brute_force(big), std::length_error);
  Instance frac = generate_instance({.n = 4, .integer_weights = false}, 2);
  bool any_fraction = false;
  for (const Item& it : frac.items) any_fraction |= it.weight.get_den() != 1;
  if (any_fraction) EXPECT_THROW(exact_dp(frac), std::invalid_argument);
  EXPECT_THROW(exact_dp(big, 10), std::length_error);
}

TEST(Oracles, LpVertexSimple) {
  // Fractional knapsack: take item 0 fully and half of item 1.
  LpVertexResult r = lp_vertex({4, 3}, {2, 2}, {1, 1}, 3, 5);
  EXPECT_NEAR(static_cast<double>(r.value), 5.5, 1e-15);
  // Cardinality only.
  r = lp_vertex({4, 3, 1}, {0, 0, 0}, {1, 1, 1}, 0, 1.5);
  EXPECT_NEAR(static_cast<double>(r.value), 5.5, 1e-15);
  // Nothing allowed.
  r = lp_vertex({4}, {1}, {1}, 0, 1);
  EXPECT_NEAR(static_cast<double>(r.value), 0, 1e-15);
}

TEST(Oracles, NaiveConvolveIdentity) {
  WeightTable id = WeightTable::trivial(6, 2);
  WeightTable b(6, 2);
  for (std::int64_t p = 0; p < 6; ++p) {
    for (std::int64_t k = 0; k <= 2; ++k) b.at(p, k) = p * 3 + (2 - k);
  }
  EXPECT_EQ(naive_convolve(id, b, 1).table, b);
}

TEST(Generator, Deterministic) {
  GeneratorParams p;
  p.n = 50;
  p.distribution = Distribution::kCorrelated;
  EXPECT_EQ(generate_instance(p, 99), generate_instance(p, 99));
  EXPECT_NE(generate_instance(p, 99), generate_instance(p, 100));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
}

TEST(Generator, Shape) {
  for (Distribution d : {Distribution::kUniform, Distribution::kCorrelated, Distribution::kSubsetSum}) {
    GeneratorParams p;
    p.n = 40;
    p.cardinality = 7;
    p.distribution = d;
    p.max_weight = 30;
    p.budget = 55;
    Instance inst = generate_instance(p, 5);
    EXPECT_TRUE(validate_instance(inst).ok());
    EXPECT_EQ(inst.items.size(), 40u);
    EXPECT_EQ(inst.budget, 55);
    EXPECT_EQ(inst.cardinality, 7);
    for (const Item& it : inst.items) {
      EXPECT_GE(it.weight, 1);
      EXPECT_LE(it.weight, 30);
    }
    EXPECT_EQ(parse_distribution(distribution_name(d)), d);
  }
}

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(KKP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "kkp_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  EXPECT_EQ(run_cli("solve -i " + (dir / "missing.json").string()), 1);
  EXPECT_EQ(run_cli("generate -n 8 -k 3 --count 4 --seed 5 -o " + (dir / "corpus").string()), 0);
  EXPECT_EQ(run_cli("verify -i " + (dir / "corpus").string()), 0);
  EXPECT_EQ(run_cli("solve -i " + (dir / "corpus" / "inst_00000.json").string() + " -o " +
                    (dir / "out.json").string()),
            0);
  std::ifstream out(dir / "out.json");
  nlohmann::json doc = nlohmann::json::parse(out);
  EXPECT_TRUE(doc.contains("items"));

  Instance infeasible;
  infeasible.items = {Item(1, 1, 5), Item(2, 1, 5)};
  infeasible.budget = 6;
  infeasible.cardinality = 2;
  infeasible.mode = CardinalityMode::kExactly;
  {
    std::ofstream f(dir / "infeasible.json");
    write_instance_json(f, infeasible);
  }
  EXPECT_EQ(run_cli("solve -i " + (dir / "infeasible.json").string()), 2);
  EXPECT_EQ(run_cli("solve --epsilon 2 -i " + (dir / "infeasible.json").string()), 1);
  fs::remove_all(dir);
}
