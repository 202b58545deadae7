#include <gtest/gtest.h>

#include "protoalg/algebra.hpp"

using namespace protoalg;

TEST(Signature, RejectsDuplicatesAndNullaryOps) {
  Signature sig;
  sig.add_op("f", 2).add_constant("e");
  EXPECT_THROW(sig.add_op("f", 1), InvalidArgument);
  EXPECT_THROW(sig.add_constant("f"), InvalidArgument);
  EXPECT_THROW(sig.add_op("g", 0), InvalidArgument);
  EXPECT_EQ(sig.arity_of("f"), 2u);
  EXPECT_FALSE(sig.arity_of("e"));
  EXPECT_TRUE(sig.has_constant("e"));
}

TEST(Signature, StandardShape) {
  Signature sig = standard_signature(3);
  ASSERT_EQ(sig.ops().size(), 4u);
  EXPECT_EQ(sig.ops()[0].name, "theta");
  EXPECT_EQ(sig.ops()[0].arity, 4u);
  EXPECT_EQ(sig.ops()[3].name, "alpha3");
  EXPECT_EQ(sig.constants(), (std::vector<std::string>{"e1", "e2", "e3"}));
  EXPECT_THROW(standard_signature(0), InvalidArgument);
}

TEST(FlatIndex, RoundTripsEveryTuple) {
  const std::size_t m = 3, k = 4;
  std::vector<Element> t(k);
  for (std::uint64_t i = 0; i < 81; ++i) {
    unflatten(i, m, t);
    EXPECT_EQ(flat_index(m, t), i);
  }
  unflatten(5, 3, t);
  EXPECT_EQ(t, (std::vector<Element>{0, 0, 1, 2}));
}

TEST(CheckedPow, Overflow) {
  EXPECT_EQ(checked_pow(2, 10), 1024u);
  EXPECT_FALSE(checked_pow(2, 64));
  EXPECT_FALSE(checked_pow(10, 3, 999));
  EXPECT_EQ(checked_pow(10, 3, 1000), 1000u);
  EXPECT_EQ(checked_pow(0, 0), 1u);
}

TEST(OpTable, TabulateMaterializesSmallTables) {
  auto t = OpTable::tabulate(3, 2, [](std::span<const Element> a) { return (a[0] + a[1]) % 3; });
  ASSERT_TRUE(t.materialized());
  EXPECT_EQ(t.values(), (std::vector<Element>{0, 1, 2, 1, 2, 0, 2, 0, 1}));
  const Element args[2] = {2, 2};
  EXPECT_EQ(t(args), 1u);
}

TEST(OpTable, ComputedTablesCheckTheirRange) {
  auto bad = OpTable::computed(2, 1, [](std::span<const Element>) { return Element{5}; });
  EXPECT_FALSE(bad.materialized());
  const Element x[1] = {0};
  EXPECT_THROW(bad(x), VerificationFailure);
  EXPECT_THROW(bad.values(), InvalidArgument);
  auto copy = bad;
  EXPECT_TRUE(copy == bad);
  auto other = OpTable::computed(2, 1, [](std::span<const Element>) { return Element{5}; });
  EXPECT_FALSE(other == bad);
}

TEST(OpTable, LargeTablesStayComputed) {
  auto t = OpTable::tabulate(512, 3, [](std::span<const Element> a) { return a[1]; });
  EXPECT_FALSE(t.materialized());
  EXPECT_EQ(t.at_flat(512 * 7 + 3), 7u);
}

TEST(FiniteAlgebra, LookupsAndEquality) {
  FiniteAlgebra a("a", standard_signature(1), 2);
  EXPECT_THROW(a.table("theta"), InvalidArgument);
  EXPECT_THROW(a.set_table("nope", std::vector<Element>{0}), InvalidArgument);
  EXPECT_THROW(a.set_constant("theta", 0), InvalidArgument);
  a.set_table("theta", {0, 1, 1, 0}).set_table("alpha1", {0, 1, 1, 0}).set_constant("e1", 0);
  FiniteAlgebra b = a;
  b.rename("b");
  EXPECT_TRUE(a.same_structure(b));
  EXPECT_FALSE(a == b);
  b.set_constant("e1", 1);
  EXPECT_FALSE(a.same_structure(b));
  EXPECT_EQ(theta_parameter(a), 1u);
  EXPECT_TRUE(has_standard_signature(a, 1));
  EXPECT_FALSE(has_standard_signature(a, 2));
}

TEST(FiniteAlgebra, ThetaParameterNeedsTheta) {
  Signature sig;
  sig.add_op("mu", 3);
  FiniteAlgebra a("a", sig, 2);
  EXPECT_THROW(theta_parameter(a), PreconditionFailed);
}
