#include <gtest/gtest.h>

#include <random>

#include "protoalg/constructions.hpp"
#include "protoalg/sections.hpp"

using namespace protoalg;

TEST(Sections, AgreeWithTheIdentityOnRandomAlgebras) {
  std::mt19937_64 rng(99);
  int passing = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = 1 + rng() % 3, n = 1 + rng() % 2;
    FiniteAlgebra alg("r", theta_signature(n), m);
    std::vector<Element> t(*checked_pow(m, n + 1));
    for (auto& v : t) v = static_cast<Element>(rng() % m);
    alg.set_table(kTheta, t);
    CheckReport direct = check_identity(alg, identity_2assoc(n));
    CheckReport via = check_2assoc_via_sections(alg);
    ASSERT_EQ(direct.verdict, via.verdict);
    ASSERT_EQ(direct.counterexample, via.counterexample);
    passing += direct.passed();
  }
  EXPECT_GT(passing, 0);
}

TEST(Sections, AgreeOnStructuredExamples) {
  std::vector<FiniteAlgebra> algs = {build_projection_algebra(3, 2, 3), build_map_composition_algebra(2, 2),
                                     build_lattice_theta(chain_lattice(3), LatticeTheta::JoinFirstMeetLast),
                                     build_boolean_protomodular(2)};
  for (const auto& alg : algs) {
    auto direct = check_identity(alg, identity_2assoc(theta_parameter(alg)));
    auto via = check_2assoc_via_sections(alg);
    EXPECT_EQ(direct.verdict, via.verdict) << alg.name();
    EXPECT_EQ(direct.counterexample, via.counterexample) << alg.name();
  }
}

TEST(Sections, BudgetRefusal) {
  FiniteAlgebra alg = build_projection_algebra(8, 4, 1);
  EXPECT_THROW(check_2assoc_via_sections(alg, 1000), BudgetExceeded);
}

TEST(Strictness, SemiloopsAreStrict) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (auto shape : {SemiloopShape::Cyclic, SemiloopShape::Twisted}) {
      auto r = check_strict_equivalence(build_strict_semiloop(m, shape));
      EXPECT_TRUE(r.agree());
      EXPECT_TRUE(r.strict());
    }
}

TEST(Strictness, BooleanIsNotStrict) {
  auto r = check_strict_equivalence(build_boolean_protomodular(1));
  EXPECT_TRUE(r.agree());
  EXPECT_FALSE(r.sections_bijective);
  EXPECT_FALSE(r.identity_report.passed());
}

TEST(Strictness, TwistedSemiloopIsNotAGroup) {
  FiniteAlgebra alg = build_strict_semiloop(3, SemiloopShape::Twisted);
  EXPECT_FALSE(check_identity(alg, identity_2assoc(1)).passed());
}

TEST(Strictness, NeedsTheStandardSignature) {
  EXPECT_THROW(check_strict_equivalence(build_projection_algebra(2, 1, 1)), PreconditionFailed);
}
