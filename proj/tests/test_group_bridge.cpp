#include <gtest/gtest.h>

#include "oracles.hpp"
#include "protoalg/constructions.hpp"
#include "protoalg/group_bridge.hpp"

using namespace protoalg;

namespace {

FiniteAlgebra z3_n2() { return build_semigroup_algebra(cyclic_group(3).monoid, 2, 1); }

/// Enriched groups with every alpha table enumerated outright.
std::uint64_t brute_enriched_count(std::size_t m, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < n; ++i) cells *= m;
  for (const auto& g : oracle::group_tables(m)) {
    auto mul = [&](std::uint32_t a, std::uint32_t b) { return g[a * m + b]; };
    std::uint32_t e = 0;
    while (!(mul(e, 0) == 0 && mul(0, e) == 0)) ++e;
    auto index = [&](const oracle::Tuple& x) {
      std::size_t i = 0;
      for (auto v : x) i = i * m + v;
      return i;
    };
    oracle::for_each_tuple(m, cells, [&](const oracle::Tuple& gamma) {
      bool ok = true;
      oracle::for_each_tuple(m, 2 * n, [&](const oracle::Tuple& xy) {
        oracle::Tuple x(xy.begin(), xy.begin() + n), y(xy.begin() + n, xy.end()), z(n);
        const auto ga = gamma[index(x)];
        for (std::size_t i = 0; i < n; ++i) z[i] = mul(ga, y[i]);
        ok = mul(ga, gamma[index(y)]) == gamma[index(z)];
        return ok;
      });
      if (!ok) return true;
      oracle::for_each_tuple(m, n * m * m, [&](const oracle::Tuple& alphas) {
        for (std::uint32_t a = 0; a < m; ++a)
          for (std::uint32_t b = 0; b < m; ++b) {
            oracle::Tuple x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = alphas[i * m * m + a * m + b];
            if (mul(gamma[index(x)], b) != a) return true;
            if (a == b)
              for (auto v : x)
                if (v != e) return true;
          }
        ++total;
        return true;
      });
      return true;
    });
  }
  return total;
}

}  // namespace

TEST(DeriveGroup, Z3WithTwoArguments) {
  DerivedGroup dg = derive_group(z3_n2());
  const GroupTable& g = dg.group;
  EXPECT_EQ(g.unit, 0u);
  for (Element a = 0; a < 3; ++a) {
    EXPECT_EQ(g.inverse[a], (3 - a) % 3);
    for (Element b = 0; b < 3; ++b) EXPECT_EQ(g.mul(a, b), (a + b) % 3);
  }
  EXPECT_EQ(dg.source_hash, structure_hash(z3_n2()));
  EXPECT_NE(dg.source_hash, structure_hash(build_semigroup_algebra(cyclic_group(3).monoid, 2, 2)));
}

TEST(DeriveGroup, RecoversTheOriginalGroup) {
  for (std::size_t k = 1; k <= 5; ++k) {
    GroupSpec g = cyclic_group(k);
    for (std::size_t n = 1; n <= 2; ++n) {
      DerivedGroup dg = derive_group(build_semigroup_algebra(g.monoid, n, n));
      EXPECT_EQ(dg.group.product, g.monoid.product);
      EXPECT_EQ(dg.group.inverse, g.inverse);
    }
  }
}

TEST(DeriveGroup, CatalogAndTrivialCarrier) {
  for (const auto& alg : semiabelian_catalog()) EXPECT_NO_THROW(derive_group(alg)) << alg.name();
  DerivedGroup one = derive_group(build_semigroup_algebra(cyclic_group(1).monoid, 3, 2));
  EXPECT_EQ(one.group.product, std::vector<Element>{0});
}

TEST(DeriveGroup, RefusesBoolean) {
  try {
    derive_group(build_boolean_protomodular(1));
    FAIL() << "expected a refusal";
  } catch (const PreconditionFailed& e) {
    EXPECT_NE(std::string(e.what()).find("not semi-abelian"), std::string::npos) << e.what();
  }
}

TEST(GroupAxioms, BooleanProductHasNoUnit) {
  FiniteAlgebra b = build_boolean_protomodular(1);
  auto v = group_axiom_violation(2, product_from_theta(b));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->law, "two-sided unit");
  EXPECT_EQ(to_string(*v), "two-sided unit fails at u=0 x=1; u=1 x=0");
  EXPECT_FALSE(group_axiom_violation(3, cyclic_group(3).monoid.product));
  EXPECT_EQ(group_axiom_violation(2, {0, 0, 0, 0})->law, "two-sided unit");
  EXPECT_EQ(group_axiom_violation(2, {0, 0, 0, 1})->law, "inverse");
}

TEST(Solvability, Z3Facts) {
  auto reports = check_unique_solvability(z3_n2());
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed()) << r.identity;
  EXPECT_EQ(reports[0].identity, "power_fixes_unit");
}

TEST(Solvability, PowerEquation) {
  EXPECT_EQ(solve_power_equation(z3_n2(), 1, 0), 2u);
  for (const auto& alg : semiabelian_catalog()) {
    const std::size_t m = alg.carrier_size();
    for (Element b = 0; b < m; ++b)
      for (Element c = 0; c < m; ++c) EXPECT_NO_THROW(solve_power_equation(alg, b, c)) << alg.name();
  }
  EXPECT_THROW(solve_power_equation(z3_n2(), 3, 0), InvalidArgument);
}

TEST(Malcev, LawsHoldAndAssociativityAgrees) {
  for (const auto& alg : semiabelian_catalog()) {
    MalcevResult r = malcev_term(alg);
    EXPECT_TRUE(r.laws_pass()) << alg.name();
    EXPECT_TRUE(r.associativity.passed()) << alg.name();
    EXPECT_TRUE(check_expanded_malcev_assoc(alg).agree()) << alg.name();
  }
  MalcevResult b = malcev_term(build_boolean_protomodular(1));
  EXPECT_TRUE(b.laws_pass());
  EXPECT_FALSE(b.associativity.passed());
  EXPECT_TRUE(check_expanded_malcev_assoc(build_boolean_protomodular(2)).agree());
  EXPECT_EQ(b.mu.name(), "boolean_k1_mu");
}

TEST(Enriched, RoundTrip) {
  for (const auto& alg : semiabelian_catalog()) {
    EnrichedGroup eg = to_enriched(alg);
    EXPECT_FALSE(validate_enriched(eg));
    FiniteAlgebra back = from_enriched(eg, alg.name());
    EXPECT_TRUE(back.same_structure(alg)) << alg.name();
    EXPECT_EQ(to_enriched(back), eg);
    EXPECT_EQ(enriched_from_algebra(enriched_algebra(eg)), eg);
  }
}

TEST(Enriched, RejectsBrokenLaws) {
  EnrichedGroup eg;
  eg.n = 1;
  eg.group = {3, cyclic_group(3).monoid.product, 0, {0, 2, 1}};
  eg.gamma = {0, 1, 2};
  eg.alphas = {{0, 2, 1, 1, 0, 2, 2, 1, 0}};
  EXPECT_FALSE(validate_enriched(eg));
  eg.alphas = {std::vector<Element>(9, 0)};
  EXPECT_EQ(validate_enriched(eg)->law, "gamma(alpha(a,b))*b = a");
  // negation satisfies the section law with alpha(a,b) = b-a but does not distribute
  eg.gamma = {0, 2, 1};
  eg.alphas = {{0, 1, 2, 2, 0, 1, 1, 2, 0}};
  auto v = validate_enriched(eg);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->law, "distributivity");
  EXPECT_THROW(from_enriched(eg), PreconditionFailed);
  eg.gamma = {0, 1};
  EXPECT_EQ(validate_enriched(eg)->law, "shape");
}

TEST(Enriched, CensusMatchesBruteForce) {
  EXPECT_EQ(count_enriched_groups(1, 1), 1u);
  EXPECT_EQ(count_enriched_groups(2, 1), brute_enriched_count(2, 1));
  EXPECT_EQ(count_enriched_groups(3, 1), brute_enriched_count(3, 1));
  EXPECT_EQ(count_enriched_groups(2, 2), brute_enriched_count(2, 2));
  EXPECT_EQ(count_enriched_groups(2, 1), 2u);
  EXPECT_THROW(count_enriched_groups(3, 2, 1'000'000), BudgetExceeded);
}

TEST(Solvability, RefusesWithoutTwoAssociativity) {
  FiniteAlgebra twisted = build_strict_semiloop(3, SemiloopShape::Twisted);
  EXPECT_THROW(check_unique_solvability(twisted), PreconditionFailed);
  EXPECT_THROW(derive_group(twisted), PreconditionFailed);
}

TEST(TrivialCarrier, BridgeOperations) {
  FiniteAlgebra one = build_semigroup_algebra(cyclic_group(1).monoid, 2, 1);
  EXPECT_EQ(solve_power_equation(one, 0, 0), 0u);
  EXPECT_TRUE(malcev_term(one).laws_pass());
  EXPECT_TRUE(malcev_term(one).associativity.passed());
  for (const auto& r : check_unique_solvability(one)) EXPECT_TRUE(r.passed());
}

TEST(Enriched, Z3GammaIsTheFirstArgument) {
  EnrichedGroup eg = to_enriched(z3_n2());
  EXPECT_EQ(eg.gamma, (std::vector<Element>{0, 0, 0, 1, 1, 1, 2, 2, 2}));
}
