#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "protoalg/check.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/suites.hpp"

using namespace protoalg;

namespace {

FiniteAlgebra random_theta(std::mt19937_64& rng, std::size_t m, std::size_t n, std::vector<Element>& table) {
  table.assign(*checked_pow(m, n + 1), 0);
  for (auto& v : table) v = static_cast<Element>(rng() % m);
  FiniteAlgebra alg("r", theta_signature(n), m);
  alg.set_table(kTheta, table);
  return alg;
}

}  // namespace

TEST(Check, FirstCounterexampleMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + rng() % 2, n = 1 + rng() % 2;
    std::vector<Element> table;
    FiniteAlgebra alg = random_theta(rng, m, n, table);
    auto expected = oracle::first_2assoc_failure(m, n, oracle::theta_from_table(m, table));
    CheckReport r = check_identity(alg, identity_2assoc(n));
    ASSERT_EQ(r.passed(), !expected.has_value());
    if (expected) {
      ASSERT_TRUE(r.counterexample);
      EXPECT_EQ(r.counterexample->values, *expected);
      std::uint64_t idx = 0;
      for (auto v : *expected) idx = idx * m + v;
      EXPECT_EQ(r.tuples_checked, idx + 1);
    } else {
      EXPECT_EQ(r.tuples_checked, *checked_pow(m, 2 * n + 1));
    }
  }
}

TEST(Check, CounterexamplesAreSound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Element> table;
    FiniteAlgebra alg = random_theta(rng, 3, 2, table);
    Identity id = identity_2assoc(2);
    CheckReport r = check_identity(alg, id);
    if (r.passed()) continue;
    EXPECT_NE(eval_term(alg, id.lhs, *r.counterexample), eval_term(alg, id.rhs, *r.counterexample));
  }
}

TEST(Check, ThreadsDoNotChangeTheResult) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element> table;
    FiniteAlgebra alg = random_theta(rng, 4, 2, table);
    auto one = check_identity(alg, identity_2assoc(2), Exhaustive{kDefaultExhaustiveBudget, 1});
    auto four = check_identity(alg, identity_2assoc(2), Exhaustive{kDefaultExhaustiveBudget, 4});
    EXPECT_EQ(one.verdict, four.verdict);
    EXPECT_EQ(one.counterexample, four.counterexample);
    EXPECT_EQ(one.tuples_checked, four.tuples_checked);
  }
}

TEST(Check, SampledModeIsReproducible) {
  std::mt19937_64 rng(9);
  std::vector<Element> table;
  FiniteAlgebra alg = random_theta(rng, 3, 2, table);
  auto a = check_identity(alg, identity_2assoc(2), Sampled{5000, 42, {}});
  auto b = check_identity(alg, identity_2assoc(2), Sampled{5000, 42, {}});
  EXPECT_EQ(a.counterexample, b.counterexample);
  EXPECT_EQ(a.tuples_checked, b.tuples_checked);
  EXPECT_EQ(a.seed, 42u);
}

TEST(Check, SampledIncludesRunFirst) {
  FiniteAlgebra alg("proj", theta_signature(1), 2);
  alg.set_table(kTheta, {0, 0, 1, 1});
  Identity wrong{"wrong", {"a", "b"}, app("theta", {var("a"), var("b")}), var("b")};
  auto r = check_identity(alg, wrong, Sampled{10, 1, {{1, 0}}});
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.counterexample->values, (std::vector<Element>{1, 0}));
  EXPECT_EQ(r.tuples_checked, 1u);
  EXPECT_THROW(check_identity(alg, wrong, Sampled{10, 1, {{1}}}), InvalidArgument);
}

TEST(Check, SampledPassIsNotExhaustive) {
  FiniteAlgebra alg("proj", theta_signature(1), 2);
  alg.set_table(kTheta, {0, 0, 1, 1});
  auto r = check_identity(alg, identity_2assoc(1), Sampled{100, 1, {}});
  EXPECT_EQ(r.verdict, Verdict::SampledPass);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(std::string(to_string(r.verdict)), "sampled-pass");
}

TEST(Check, BudgetRefusal) {
  FiniteAlgebra alg("big", theta_signature(3), 20);
  alg.set_table(kTheta, OpTable::computed(20, 4, [](std::span<const Element> a) { return a[0]; }));
  EXPECT_THROW(check_identity(alg, identity_2assoc(3)), BudgetExceeded);
  EXPECT_NO_THROW(check_identity(alg, identity_2assoc(3), Sampled{1000, 1, {}}));
}

TEST(Check, MalformedIdentities) {
  FiniteAlgebra alg("a", theta_signature(1), 2);
  alg.set_table(kTheta, {0, 0, 1, 1});
  EXPECT_THROW(check_identity(alg, {"x", {"a"}, app("theta", {var("a")}), var("a")}), MalformedTerm);
  EXPECT_THROW(check_identity(alg, {"x", {"a"}, var("b"), var("a")}), MalformedTerm);
  EXPECT_THROW(check_identity(alg, {"x", {"a"}, app("f", {var("a")}), var("a")}), MalformedTerm);
  FiniteAlgebra empty("b", theta_signature(1), 2);
  EXPECT_THROW(check_identity(empty, identity_2assoc(1)), MalformedTerm);
}

TEST(Check, ValidateAlgebraNamesTheProblem) {
  FiniteAlgebra alg("v", standard_signature(2), 3);
  auto r = validate_algebra(alg);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.detail.find("theta"), std::string::npos);
  alg.set_table("theta", std::vector<Element>(27, 0));
  alg.set_table("alpha1", std::vector<Element>(9, 0));
  alg.set_table("alpha2", std::vector<Element>{0, 0, 0, 0, 0, 7, 0, 0, 0});
  alg.set_constant("e1", 0).set_constant("e2", 0);
  r = validate_algebra(alg);
  EXPECT_EQ(r.detail, "symbol 'alpha2' entry 5 = 7 is outside the carrier");
  alg.set_table("alpha2", std::vector<Element>(9, 0));
  EXPECT_TRUE(validate_algebra(alg).passed());
}

TEST(Check, FormatReport) {
  CheckReport r;
  r.identity = "2assoc";
  r.verdict = Verdict::Fail;
  r.counterexample = Assignment{{"a1", "b1", "c"}, {0, 1, 1}};
  r.tuples_checked = 4;
  EXPECT_EQ(format_report(r), "IDENTITY 2assoc FAIL counterexample: a1=0,b1=1,c=1 tuples=4");
}

TEST(Check, EvalOnBool2) {
  FiniteAlgebra alg("bool2", standard_signature(2), 2);
  alg.set_table(kTheta, {0, 0, 0, 1, 0, 0, 1, 1}).set_table("alpha1", {0, 0, 1, 0}).set_table("alpha2", {1, 0, 1, 1});
  alg.set_constant("e1", 0).set_constant("e2", 1);
  Assignment env{{"x"}, {1}};
  EXPECT_EQ(eval_term(alg, app("theta", {cst("e2"), cst("e1"), cst("e2")}), env), 0u);
  EXPECT_EQ(eval_term(alg, var("x"), env), 1u);
  EXPECT_EQ(eval_term(alg, cst("e1"), env), 0u);
  EXPECT_EQ(eval_term(alg, cst("e2"), env), 1u);
  EXPECT_EQ(eval_term(alg, app("theta", {var("x"), app("alpha1", {var("x"), cst("e1")}), var("x")}), env), 1u);
  EXPECT_THROW(eval_term(alg, var("y"), env), MalformedTerm);
}

TEST(Check, ValidateReportsUninterpretedSymbols) {
  FiniteAlgebra alg("v", standard_signature(2), 2);
  alg.set_table("theta", std::vector<Element>(8, 0)).set_table("alpha1", std::vector<Element>(4, 0));
  alg.set_constant("e1", 0).set_constant("e2", 0);
  EXPECT_EQ(validate_algebra(alg).detail, "symbol 'alpha2' uninterpreted");
}

TEST(Check, SampledAgreesWithExhaustiveOnIncludedTuples) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element> table;
    FiniteAlgebra alg = random_theta(rng, 3, 1, table);
    auto ex = check_identity(alg, identity_2assoc(1));
    if (ex.passed()) continue;
    auto sampled = check_identity(alg, identity_2assoc(1), Sampled{5, 3, {ex.counterexample->values}});
    EXPECT_FALSE(sampled.passed());
  }
}

TEST(Check, TrivialCarrierPassesEverything) {
  FiniteAlgebra alg("one", standard_signature(3), 1);
  alg.set_table(kTheta, {0}).set_table("alpha1", {0}).set_table("alpha2", {0}).set_table("alpha3", {0});
  alg.set_constant("e1", 0).set_constant("e2", 0).set_constant("e3", 0);
  EXPECT_TRUE(all_passed(check_all(alg, suite_semiabelian(3).identities)));
  EXPECT_TRUE(all_passed(check_all(alg, identities_1assoc(3))));
  EXPECT_TRUE(all_passed(check_all(alg, identity_strictness(3))));
}
