#include <gtest/gtest.h>

#include "hyperrank/errors.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/rng.hpp"

using namespace hyperrank;

namespace {

FnTable phi(const RingCtx& ctx, std::vector<std::uint64_t> alpha) {
  return phi_table(ctx, MultiIndex::make(ctx, std::move(alpha)));
}

FnTable random_table(const RingCtx& ctx, Xoshiro256& rng) {
  return FnTable::tabulate(ctx, [&](std::uint64_t) { return rng.below(ctx.p()); });
}

}  // namespace

TEST(Phi, Phi21TableMatchesPublishedValues) {
  const RingCtx ctx(2, 2, 2);
  const FnTable f = phi(ctx, {2, 1});
  // Rows y, columns x, both in natural order.
  const int expected[4][4] = {{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 0, 1, 1}};
  for (std::uint64_t y = 0; y < 4; ++y) {
    for (std::uint64_t x = 0; x < 4; ++x) EXPECT_EQ(f.at(ctx.point({x, y})), expected[y][x]) << x << "," << y;
  }
  EXPECT_EQ(phi_eval(MultiIndex::make(ctx, {2, 1}), ctx.point({2, 1}), ctx), 1U);
}

TEST(Phi, NonzeroIndexVanishesAtOrigin) {
  const RingCtx ctx(3, 2, 2);
  for (std::uint64_t a = 1; a < ctx.size(); ++a) {
    EXPECT_EQ(phi_eval(MultiIndex::from_index(ctx, a), ctx.point(0), ctx), 0U);
  }
  EXPECT_EQ(phi_univariate(2, 3, RingCtx(2, 2, 1)), 1U);
}

TEST(Phi, OutOfRangeIndexIsZero) {
  const RingCtx ctx(2, 2, 1);
  for (std::uint64_t x = 0; x < 4; ++x) {
    EXPECT_EQ(phi_univariate(-1, x, ctx), 0U);
    EXPECT_EQ(phi_univariate(4, x, ctx), 0U);
  }
}

TEST(Phi, ExpandIndicatorOfZero) {
  const RingCtx ctx(2, 2, 1);
  const FnTable f(ctx, {1, 0, 0, 0});
  const PhiCoeffs c = expand(f);
  EXPECT_EQ(std::vector<std::uint8_t>(c.coeffs().begin(), c.coeffs().end()), (std::vector<std::uint8_t>{1, 1, 1, 1}));
  EXPECT_EQ(c, expand_via_derivatives(f));
}

TEST(Phi, BasisFunctionsExpandToUnitVectors) {
  const RingCtx ctx(3, 1, 3);
  for (std::uint64_t a = 0; a < ctx.size(); ++a) {
    const PhiCoeffs c = expand(phi_table(ctx, MultiIndex::from_index(ctx, a)));
    for (std::uint64_t j = 0; j < ctx.size(); ++j) ASSERT_EQ(c[j], j == a ? 1 : 0);
  }
}

TEST(Phi, ZeroFunctionHasNegativeInfiniteDegree) {
  const RingCtx ctx(2, 2, 2);
  const FnTable zero(ctx);
  EXPECT_EQ(degree(zero), kNegInfDegree);
  EXPECT_EQ(expand(zero).degree(), kNegInfDegree);
}

TEST(Phi, DegreeExamples) {
  const RingCtx line(3, 2, 1);
  for (std::uint64_t m = 0; m < 9; ++m) EXPECT_EQ(degree(phi(line, {m})), static_cast<std::int64_t>(m));
  const RingCtx ctx(2, 2, 2);
  EXPECT_EQ(degree(FnTable::tabulate(ctx, [](std::uint64_t) { return 1; })), 0);
  EXPECT_EQ(degree(phi(ctx, {2, 1})), 3);
}

TEST(Phi, ExpansionPathsAgreeOnRandomTables) {
  Xoshiro256 rng(17);
  for (const RingCtx& ctx : {RingCtx(2, 3, 2), RingCtx(3, 2, 2), RingCtx(5, 1, 3), RingCtx(2, 2, 3)}) {
    for (int s = 0; s < 20; ++s) {
      const FnTable f = random_table(ctx, rng);
      const PhiCoeffs c = expand(f);
      ASSERT_EQ(c, expand_via_derivatives(f));
      ASSERT_EQ(synthesize(c), f);
    }
  }
}

TEST(Phi, EqualUpToDegree) {
  const RingCtx ctx(2, 2, 1);
  const FnTable a = phi(ctx, {3}) + phi(ctx, {1});
  const FnTable b = phi(ctx, {3});
  EXPECT_TRUE(equal_up_to_degree(a, b, 1));
  EXPECT_FALSE(equal_up_to_degree(a, b, 0));
}

TEST(Phi, IteratedDifferenceExamples) {
  const RingCtx ctx(2, 2, 2);
  const Point e1 = ctx.point({1, 0});
  const std::vector<Point> one{e1};
  EXPECT_EQ(iterated_difference(phi(ctx, {1, 0}), one), FnTable::tabulate(ctx, [](std::uint64_t) { return 1; }));

  const FnTable f = phi(ctx, {2, 1}) + phi(ctx, {0, 2});
  Xoshiro256 rng(1);
  for (int s = 0; s < 20; ++s) {
    std::vector<Point> steps;
    for (int i = 0; i < 4; ++i) steps.push_back(ctx.point(rng.below(ctx.size())));
    EXPECT_TRUE(iterated_difference(f, steps).is_zero());
    EXPECT_EQ(iterated_difference(f, steps), iterated_difference_box(f, steps));
  }
  EXPECT_EQ(iterated_difference(f, {}), f);
  EXPECT_EQ(iterated_difference_box(f, {}), f);
}

TEST(Phi, NormalizedDifferenceOfPhiLowersIndex) {
  const RingCtx line(3, 2, 1);
  for (std::uint64_t m = 1; m < 9; ++m) EXPECT_EQ(normalized_difference(phi(line, {m}), 1), phi(line, {m - 1}));
  EXPECT_THROW(normalized_difference(phi(line, {2}), 3), std::invalid_argument);
  EXPECT_THROW(normalized_difference(phi(RingCtx(3, 2, 2), {2, 0}), 1), std::invalid_argument);
}

TEST(Phi, DNullExamples) {
  const RingCtx ctx(2, 2, 2);
  for (std::uint64_t a = 0; a < ctx.size(); ++a) {
    const MultiIndex alpha = MultiIndex::from_index(ctx, a);
    const FnTable f = phi_table(ctx, alpha);
    EXPECT_TRUE(is_d_null(f, alpha.total + 1)) << a;
    if (alpha.total > 0) EXPECT_FALSE(is_d_null(f, alpha.total)) << a;
  }
  EXPECT_TRUE(is_d_null(FnTable(ctx), 1));
  EXPECT_THROW(is_d_null(FnTable(ctx), 0), std::invalid_argument);
}

TEST(Phi, DNullSampledModeIsReproducible) {
  const RingCtx ctx(2, 3, 2);
  const FnTable f = phi(ctx, {5, 4});
  const NullCheck mode{NullCheck::Mode::Sampled, 9, 200};
  EXPECT_TRUE(is_d_null(f, 10, mode));
  EXPECT_EQ(is_d_null(f, 9, mode), is_d_null(f, 9, mode));
}

TEST(Phi, DNullExhaustiveRespectsBudget) {
  const RingCtx ctx(2, 3, 3);
  NullCheck tiny;
  tiny.budget = 1000;
  EXPECT_THROW(is_d_null(phi(ctx, {7, 7, 7}), 22, tiny), BudgetExceeded);
}

TEST(Phi, OmegaDimensionExamples) {
  EXPECT_EQ(omega_dim(RingCtx(2, 2, 2), 3), 10U);
  EXPECT_EQ(omega_dim(RingCtx(2, 2, 2), 0), 1U);
  EXPECT_EQ(omega_dim(RingCtx(3, 1, 2), 2), 6U);
  EXPECT_EQ(omega_dim(RingCtx(3, 1, 2), -1), 0U);
  EXPECT_THROW(omega_dim(RingCtx(3, 1, 2), 3), std::domain_error);
}

TEST(Phi, ProductCoefficientExamples) {
  const RingCtx line(2, 2, 1);
  const PhiCoeffs c0 = product_coeff_tensor(0, line);
  for (std::uint64_t i = 0; i < 16; ++i) EXPECT_EQ(c0[i], i == 0 ? 1 : 0);
  // phi_1(xy) = (x mod 2)(y mod 2) = phi_1(x) phi_1(y).
  const PhiCoeffs c1 = product_coeff_tensor(1, line);
  for (std::uint64_t i = 0; i < 16; ++i) EXPECT_EQ(c1[i], i == 1 + 4 * 1 ? 1 : 0);
  EXPECT_THROW(product_coeff_tensor(4, line), std::invalid_argument);
}

TEST(Phi, ProductCoefficientsVanishAboveDegreeBound) {
  for (const RingCtx& line : {RingCtx(2, 2, 1), RingCtx(2, 3, 1), RingCtx(3, 2, 1), RingCtx(2, 4, 1)}) {
    const std::uint64_t pk = line.pk();
    for (std::uint64_t m = 0; m < pk; ++m) {
      const PhiCoeffs c = product_coeff_tensor(m, line);
      for (std::uint64_t a = 0; a < pk * pk; ++a) {
        if (a % pk + a / pk > m + 2 * (line.p() - 1)) ASSERT_EQ(c[a], 0) << "m=" << m << " cell " << a;
      }
    }
  }
}

TEST(Phi, ScaleCoefficientExamples) {
  const RingCtx line(2, 2, 1);
  EXPECT_EQ(scale_coeffs(1, 3, line), (std::vector<std::uint8_t>{0, 1}));
  for (std::uint64_t m = 0; m < 4; ++m) {
    const auto a1 = scale_coeffs(m, 1, line);
    for (std::uint64_t l = 0; l <= m; ++l) EXPECT_EQ(a1[l], l == m ? 1 : 0);
    if (m > 0) {
      for (auto v : scale_coeffs(m, 0, line)) EXPECT_EQ(v, 0);
    }
  }
}

TEST(Phi, TableValidation) {
  const RingCtx ctx(3, 1, 1);
  EXPECT_THROW(FnTable(ctx, {0, 1}), std::invalid_argument);
  EXPECT_THROW(FnTable(ctx, {0, 1, 3}), std::invalid_argument);
  EXPECT_THROW(MultiIndex::make(ctx, {3}), std::invalid_argument);
  EXPECT_THROW(MultiIndex::make(ctx, {1, 1}), std::invalid_argument);
}

TEST(Phi, PointwiseArithmetic) {
  const RingCtx ctx(3, 1, 1);
  const FnTable a(ctx, {1, 2, 0});
  const FnTable b(ctx, {2, 2, 1});
  EXPECT_EQ(a + b, FnTable(ctx, {0, 1, 1}));
  EXPECT_EQ(a - b, FnTable(ctx, {2, 0, 2}));
  EXPECT_EQ(a * b, FnTable(ctx, {2, 1, 0}));
  EXPECT_EQ(a.scaled(2), FnTable(ctx, {2, 1, 0}));
}
