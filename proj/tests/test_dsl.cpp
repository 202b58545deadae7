#include <gtest/gtest.h>

#include <random>

#include "protoalg/dsl.hpp"
#include "protoalg/suites.hpp"

using namespace protoalg;

namespace {

const char* kZ2 = R"(
# cyclic group of order 2 as a protomodular algebra
algebra Z2 {
  carrier 2
  alias zero = 0
  const e1 = zero
  op theta/2 = [0, 1, 1, 0]
  op alpha1/2 = [0, 1, 1, 0]
}
identity recovers(a, b): theta(alpha1(a, b), b) = a
)";

}  // namespace

TEST(Dsl, ParsesAlgebraAndIdentity) {
  Document doc = parse_document(kZ2);
  ASSERT_EQ(doc.algebras.size(), 1u);
  ASSERT_EQ(doc.identities.size(), 1u);
  FiniteAlgebra alg = doc.algebras[0].to_algebra();
  EXPECT_EQ(alg.name(), "Z2");
  EXPECT_EQ(alg.carrier_size(), 2u);
  EXPECT_EQ(alg.constant("e1"), 0u);
  EXPECT_EQ(to_string(doc.identities[0]), "identity recovers(a,b): theta(alpha1(a,b),b) = a");
}

TEST(Dsl, IdentityConstantsAndVariables) {
  const Signature sig = standard_signature(1);
  Identity id = parse_identity("identity u(a): alpha1(a, a) = e1", &sig);
  EXPECT_EQ(id.lhs, app("alpha1", {var("a"), var("a")}));
  EXPECT_EQ(id.rhs, cst("e1"));
  EXPECT_THROW(parse_identity("identity u(a): alpha1(a) = e1", &sig), ParseError);
}

TEST(Dsl, ReportsPositions) {
  try {
    parse_document("algebra A {\n  carrier 2\n  op f/2 = [0, 1, 2, 0]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 19u);
  }
  try {
    parse_document("algebra A {\n  op f/2 = [0]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("carrier"), std::string::npos);
  }
}

TEST(Dsl, RejectsMalformedInput) {
  EXPECT_THROW(parse_document("algebra A { carrier 2 op f/2 = [0, 1, 1] }"), ParseError);
  EXPECT_THROW(parse_document("algebra A { carrier 0 }"), ParseError);
  EXPECT_THROW(parse_document("algebra A { carrier 2 op f/2 = [0,1,1,0] op f/1 = [0,1] }"), ParseError);
  EXPECT_THROW(parse_document("algebra A { carrier 2 op f/2 = [0,1,1,0] }\nidentity x(a): f(a) = a"), ParseError);
  EXPECT_THROW(parse_document("algebra A { carrier 2 op f/2 = [0,1,1,0] }\nidentity x(a, a): f(a,a) = a"),
               ParseError);
  EXPECT_THROW(parse_document("widget"), ParseError);
  EXPECT_THROW(parse_algebra("algebra A { carrier 2 const e = free }"), ParseError);
  EXPECT_THROW(parse_algebra(""), ParseError);
}

TEST(Dsl, FreeCellsAndRequirements) {
  Document doc = parse_document(R"(
algebra S {
  carrier 2
  op mu/3 = free
  op g/1 = [?, 1]
  const e = free
  require malcev@mu, 2assoc:2@mu
  goal prove-none
}
)");
  const auto& s = doc.algebras[0];
  EXPECT_FALSE(s.complete());
  for (const auto& cell : s.tables.at("mu")) EXPECT_FALSE(cell);
  EXPECT_FALSE(s.tables.at("g")[0]);
  EXPECT_EQ(s.tables.at("g")[1], Element{1});
  EXPECT_EQ(s.requirements, (std::vector<std::string>{"malcev@mu", "2assoc:2@mu"}));
  EXPECT_EQ(s.goal, "prove-none");
}

TEST(Dsl, SerializeRoundTripsRandomAlgebras) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 2;
    FiniteAlgebra alg("r" + std::to_string(trial), standard_signature(n), m);
    for (const auto& op : alg.signature().ops()) {
      std::vector<Element> t(*checked_pow(m, op.arity));
      for (auto& v : t) v = static_cast<Element>(rng() % m);
      alg.set_table(op.name, std::move(t));
    }
    for (const auto& c : alg.signature().constants()) alg.set_constant(c, static_cast<Element>(rng() % m));
    FiniteAlgebra back = parse_algebra(serialize(alg));
    EXPECT_EQ(back, alg) << serialize(alg);
  }
}

TEST(Dsl, ArityErrorNamesTheExpectedArity) {
  const Signature sig = standard_signature(2);
  try {
    parse_identity("identity x(a): theta(a) = a", &sig);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("expects arity 3"), std::string::npos) << e.what();
  }
}

TEST(Dsl, TwoAssocTextMatchesTheSuite) {
  const Signature sig = standard_signature(2);
  Identity id = parse_identity(
      "identity twoassoc(a1,a2,b1,b2,c): theta(a1,a2,theta(b1,b2,c)) = theta(theta(a1,a2,b1),theta(a1,a2,b2),c)", &sig);
  EXPECT_EQ(id.variables.size(), 5u);
  EXPECT_EQ(id.lhs, identity_2assoc(2).lhs);
  EXPECT_EQ(id.rhs, identity_2assoc(2).rhs);
}
