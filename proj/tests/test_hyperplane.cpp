#include <gtest/gtest.h>

#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/hyperplane.hpp"
#include "hyperrank/incidence.hpp"

using namespace hyperrank;

TEST(Hyperplane, SpanDimensionK1EqualsBinomial) {
  EXPECT_EQ(hyperspan_dim(RingCtx(3, 1, 2)), 6U);
  EXPECT_EQ(hyperspan_dim(RingCtx(2, 1, 3)), 4U);
  EXPECT_EQ(hyperspan_dim(RingCtx(2, 1, 2)), 3U);
  EXPECT_EQ(hyperspan_dim(RingCtx(5, 1, 2)), 15U);
}

TEST(Hyperplane, SpanDimensionZ4SquaredBelowBinomial) {
  const std::uint64_t d = hyperspan_dim(RingCtx(2, 2, 2));
  EXPECT_EQ(d, 9U);
  EXPECT_LT(d, binomial(3 + 2, 2));
}

TEST(Hyperplane, SpanMatchesLiteralIndicators) {
  for (const RingCtx& ctx : {RingCtx(2, 2, 2), RingCtx(3, 1, 2), RingCtx(2, 1, 3), RingCtx(2, 3, 2)}) {
    const auto span = span_basis(ctx);
    const auto lit = indicator_basis(ctx);
    EXPECT_EQ(span.provenance, "phi");
    EXPECT_EQ(lit.provenance, "indicator");
    EXPECT_TRUE(RowSpace(span.rows).contains_rows(lit.rows));
    EXPECT_TRUE(RowSpace(lit.rows).contains_rows(span.rows));
  }
}

TEST(Hyperplane, IndicatorIsMemberWithCertificate) {
  const RingCtx ctx(2, 2, 2);
  const auto basis = span_basis(ctx);
  for (const auto& b : directions(ctx)) {
    const Hyperplane h{b, ctx.point({1, 2})};
    std::vector<std::uint8_t> v(ctx.size(), 0);
    for (auto x : h.members(ctx)) v[x] = 1;
    const auto c = is_hyperplane_function(FnTable(ctx, v), basis);
    ASSERT_TRUE(c);
    EXPECT_EQ(left_multiply(*c, basis.rows), v);
  }
}

TEST(Hyperplane, Phi21IsNotMember) {
  const RingCtx ctx(2, 2, 2);
  EXPECT_FALSE(is_hyperplane_function(phi_table(ctx, MultiIndex::make(ctx, {2, 1}))));
}

TEST(Hyperplane, LowDigitOfFirstCoordinateIsMember) {
  const RingCtx ctx(2, 2, 2);
  const FnTable f = FnTable::tabulate(ctx, [&](std::uint64_t i) { return ctx.point(i).coords[0] % 2; });
  EXPECT_TRUE(is_hyperplane_function(f));
}

TEST(Hyperplane, FactorizationIdentities) {
  const std::vector<std::tuple<RingCtx, std::uint64_t>> cases{
      {RingCtx(2, 2, 2), 8}, {RingCtx(3, 2, 2), 33}, {RingCtx(2, 3, 2), 24}, {RingCtx(2, 2, 3), 14}};
  for (const auto& [ctx, rank_h] : cases) {
    const FactorizationReport r = verify_factorization(ctx);
    EXPECT_TRUE(r.product_matches);
    EXPECT_EQ(r.rank_H, rank_h);
    EXPECT_EQ(r.rank_B, rank_h);
    EXPECT_EQ(r.rank_Psi, ctx.size());
    EXPECT_TRUE(r.zero_pattern_violations.empty());
    EXPECT_TRUE(r.passed());
  }
}

TEST(Hyperplane, FactorizationProductEqualsH) {
  const RingCtx ctx(3, 1, 2);
  const BFactorization f = build_factorization(ctx);
  EXPECT_EQ(multiply(multiply(f.Psi, f.B), f.Phi), f.H);
}

TEST(Hyperplane, FactorizationPreconditions) {
  EXPECT_THROW(build_factorization(RingCtx(2, 3, 1)), std::invalid_argument);
  EXPECT_THROW(build_factorization(RingCtx(2, 5, 3)), BudgetExceeded);
}

TEST(Hyperplane, BoundArithmetic) {
  const TheoremBounds small = theorem_bounds(RingCtx(2, 2, 2));
  EXPECT_EQ(small.trivial_bound, 10U);
  EXPECT_EQ(small.fan_bound, 40U);
  EXPECT_EQ(theorem_bounds(RingCtx(3, 1, 2)).trivial_bound, 6U);

  const TheoremBounds big = theorem_bounds(RingCtx(2, 7, 3));
  EXPECT_EQ(big.trivial_bound, binomial(130, 3));
  EXPECT_EQ(big.fan_bound, 6 * binomial(69, 3));
  EXPECT_LT(big.fan_bound, big.trivial_bound);
}

TEST(Hyperplane, BoundChecksCompareAgainstComputedValues) {
  const auto checks = bound_checks(theorem_bounds(RingCtx(2, 2, 2)), 9, 8);
  ASSERT_EQ(checks.size(), 3U);
  EXPECT_TRUE(all_pass(checks));
  EXPECT_FALSE(all_pass(bound_checks(theorem_bounds(RingCtx(2, 2, 2)), 11, std::nullopt)));
}

TEST(Hyperplane, K1PolynomialSpans) {
  EXPECT_TRUE(verify_k1_spans(3, 2, 2).passed());
  EXPECT_TRUE(verify_k1_spans(2, 2, 1).passed());
  EXPECT_TRUE(verify_k1_spans(5, 2, 3).passed());
  const auto r = verify_k1_spans(2, 2, 1);
  ASSERT_TRUE(r.ones_identity.has_value());
  EXPECT_TRUE(*r.ones_identity);
  EXPECT_THROW(verify_k1_spans(3, 2, 3), std::invalid_argument);
}
