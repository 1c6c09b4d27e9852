#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "kkp/instance.hpp"
#include "kkp/instance_io.hpp"
#include "kkp/oracles.hpp"
#include "reference.hpp"

using namespace kkp;

namespace {

Instance tiny() {
  Instance inst;
  inst.items = {Item(1, 3, 2), Item(2, 4, 3), Item(3, 5, 4)};
  inst.budget = 5;
  inst.cardinality = 2;
  return inst;
}

}  // namespace

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("12.375"), Rational(99, 8));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, TextRoundTrip) {
  for (Rational q : {Rational(0), Rational(5), Rational(-7, 3), Rational(1, 1024)}) {
    EXPECT_EQ(parse_rational(to_string(q)), q);
  }
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_to_int64(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_to_int64(Rational(-3, 2)), -1);
  EXPECT_EQ(ceil_to_int64(Rational(7, 7)), 1);
  EXPECT_EQ(pow(Rational(3, 2), -2), Rational(4, 9));
}

TEST(Validate, AcceptsWellFormed) { EXPECT_TRUE(validate_instance(tiny()).ok()); }

TEST(Validate, RejectsStructuralErrors) {
  Instance a = tiny();
  a.items[1].id = 1;
  EXPECT_FALSE(validate_instance(a).ok());

  Instance b = tiny();
  b.items[0].weight = -1;
  EXPECT_FALSE(validate_instance(b).ok());

  Instance c = tiny();
  c.items[0].profit = -1;
  EXPECT_FALSE(validate_instance(c).ok());

  Instance d = tiny();
  d.cardinality = 0;
  EXPECT_FALSE(validate_instance(d).ok());

  Instance e = tiny();
  e.budget = -1;
  EXPECT_FALSE(validate_instance(e).ok());
}

TEST(Validate, ReportsOversizeWithoutRemoving) {
  Instance inst = tiny();
  inst.items.push_back(Item(9, 100, 6));
  ValidationReport rep = validate_instance(inst);
  EXPECT_TRUE(rep.ok());
  ASSERT_EQ(rep.oversize.size(), 1u);
  EXPECT_EQ(rep.oversize[0], 9);
  EXPECT_EQ(inst.items.size(), 4u);
}

TEST(Evaluate, SumsAndExcess) {
  Instance inst = tiny();
  FeasibilityReport r = evaluate_solution(inst, {1, 2});
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.profit, 7);
  EXPECT_EQ(r.weight, 5);
  EXPECT_EQ(r.count, 2);

  r = evaluate_solution(inst, {2, 3});
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.weight_excess, 2);

  r = evaluate_solution(inst, {1, 2, 3});
  EXPECT_EQ(r.cardinality_excess, 1);

  EXPECT_THROW(evaluate_solution(inst, {1, 1}), std::invalid_argument);
  EXPECT_THROW(evaluate_solution(inst, {42}), std::invalid_argument);
}

TEST(Evaluate, ExactModeCountsShortfall) {
  Instance inst = tiny();
  inst.mode = CardinalityMode::kExactly;
  FeasibilityReport r = evaluate_solution(inst, {1});
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.cardinality_excess, -1);
  EXPECT_TRUE(evaluate_solution(inst, {1, 2}).feasible);
}

TEST(Convert, ShiftExample) {
  Instance inst;
  inst.items = {Item(1, 1, 1), Item(2, 2, 1)};
  inst.budget = 2;
  inst.cardinality = 2;
  inst.mode = CardinalityMode::kExactly;
  ConvertedInstance c = convert_exact_to_atmost(inst);
  EXPECT_EQ(c.shift, 4);
  EXPECT_EQ(c.instance.mode, CardinalityMode::kAtMost);
  ASSERT_EQ(c.instance.items.size(), 2u);
  EXPECT_EQ(c.instance.items[0].profit, 5);
  EXPECT_EQ(c.instance.items[1].profit, 6);
  EXPECT_EQ(c.instance.items[0].weight, 1);
}

TEST(Convert, OptimaCorrespond) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    Instance inst = ref::random_instance(rng, 10, 4, t % 2 == 0, CardinalityMode::kExactly);
    ref::Optimum exact = ref::enumerate(inst);
    if (!exact.feasible) continue;
    ConvertedInstance c = convert_exact_to_atmost(inst);
    ref::Optimum relaxed = ref::enumerate(c.instance);
    // A full-size set beats every smaller one after the shift.
    EXPECT_EQ(__builtin_popcount(relaxed.mask), inst.cardinality);
    EXPECT_EQ(relaxed.value - inst.cardinality * c.shift, exact.value);
  }
}

TEST(InstanceIo, JsonRoundTrip) {
  Instance inst = tiny();
  inst.items[0].profit = Rational(7, 3);
  inst.items[1].weight = Rational(5, 2);
  inst.mode = CardinalityMode::kExactly;
  std::stringstream ss;
  write_instance_json(ss, inst);
  EXPECT_EQ(read_instance_json(ss), inst);
}

TEST(InstanceIo, JsonAcceptsIntegers) {
  auto doc = nlohmann::json::parse(R"({"budget": 10, "cardinality": 2,
      "items": [{"id": 1, "profit": 3, "weight": "1.5"}]})");
  Instance inst = instance_from_json(doc);
  EXPECT_EQ(inst.budget, 10);
  EXPECT_EQ(inst.items[0].weight, Rational(3, 2));
  EXPECT_EQ(inst.mode, CardinalityMode::kAtMost);
}

TEST(InstanceIo, Csv) {
  std::istringstream in("id,profit,weight\n1,3,2\n2,1/2,0.25\n");
  Instance inst = read_instance_csv(in, Rational(4), 1, CardinalityMode::kAtMost);
  ASSERT_EQ(inst.items.size(), 2u);
  EXPECT_EQ(inst.items[1].profit, Rational(1, 2));
  EXPECT_EQ(inst.items[1].weight, Rational(1, 4));
  EXPECT_EQ(inst.budget, 4);
}

TEST(Modes, Names) {
  EXPECT_EQ(parse_mode("exact"), CardinalityMode::kExactly);
  EXPECT_EQ(parse_mode(mode_name(CardinalityMode::kAtMost)), CardinalityMode::kAtMost);
  EXPECT_FALSE(parse_mode("sometimes").has_value());
}
