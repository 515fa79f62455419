#include <gtest/gtest.h>

#include "hyperrank/ring.hpp"
#include "hyperrank/rng.hpp"

using namespace hyperrank;

TEST(Ring, DigitsLeastSignificantFirst) {
  EXPECT_EQ(digits(6, RingCtx(2, 3, 1)), (std::vector<std::uint32_t>{0, 1, 1}));
  EXPECT_EQ(digits(7, RingCtx(3, 2, 1)), (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(digits(0, RingCtx(2, 2, 1)), (std::vector<std::uint32_t>{0, 0}));
}

TEST(Ring, DigitsRoundTripExhaustive) {
  const RingCtx ctx(3, 4, 1);
  for (std::uint64_t x = 0; x < ctx.pk(); ++x) EXPECT_EQ(from_digits(digits(x, ctx), 3), x);
}

TEST(Ring, LucasBinomialExamples) {
  EXPECT_EQ(binom_mod_p(7, 5, 2), 1U);
  EXPECT_EQ(binom_mod_p(3, 5, 2), 0U);
  EXPECT_EQ(binom_mod_p(4, 4, 3), 1U);
}

TEST(Ring, LucasMatchesIntegerBinomials) {
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
    for (std::uint64_t x = 0; x < 60; ++x) {
      for (std::uint64_t m = 0; m < 60; ++m) {
        ASSERT_EQ(binom_mod_p(x, m, p), binomial(x, m) % p) << "p=" << p << " x=" << x << " m=" << m;
      }
    }
  }
}

TEST(Ring, ValuationExamples) {
  EXPECT_EQ(valuation(12, RingCtx(2, 4, 1)), 2U);
  EXPECT_EQ(valuation(5, RingCtx(3, 2, 1)), 0U);
  EXPECT_EQ(valuation(0, RingCtx(2, 2, 1)), 2U);
}

TEST(Ring, UnitExamples) {
  EXPECT_TRUE(is_unit(3, RingCtx(2, 2, 1)));
  EXPECT_FALSE(is_unit(2, RingCtx(2, 2, 1)));
  EXPECT_FALSE(is_unit(0, RingCtx(3, 1, 1)));
}

TEST(Ring, InverseTimesUnitIsOne) {
  const RingCtx ctx(3, 3, 1);
  for (std::uint64_t a = 0; a < ctx.pk(); ++a) {
    if (is_unit(a, ctx)) EXPECT_EQ(ctx.mul(a, ctx.inv(a)), 1U);
  }
}

TEST(Ring, ProjectionExamples) {
  const RingCtx ctx(2, 2, 2);
  const Point x = ctx.point({3, 2});
  EXPECT_EQ(project(x, 1, ctx).coords, (std::vector<std::uint64_t>{1, 0}));
  EXPECT_EQ(project(x, 2, ctx), x);
  EXPECT_EQ(project(x, 2, ctx).index, x.index);
  EXPECT_EQ(project(x, 0, ctx).index, 0U);
  EXPECT_EQ(project(x, 0, ctx), project(ctx.point({1, 1}), 0, ctx));
}

TEST(Ring, InnerProductExamples) {
  EXPECT_EQ(inner(RingCtx(2, 2, 2).point({1, 2}), RingCtx(2, 2, 2).point({2, 1}), RingCtx(2, 2, 2)), 0U);
  EXPECT_EQ(inner(RingCtx(2, 2, 2).point(0), RingCtx(2, 2, 2).point({3, 1}), RingCtx(2, 2, 2)), 0U);
  const RingCtx c3(3, 2, 2);
  EXPECT_EQ(inner(c3.point({2, 2}), c3.point({2, 2}), c3), 8U);
}

TEST(Ring, CodecCoordinateOneIsLeastSignificant) {
  const RingCtx ctx(2, 2, 2);
  EXPECT_EQ(ctx.point({1, 0}).index, 1U);
  EXPECT_EQ(ctx.point({0, 1}).index, 4U);
  EXPECT_EQ(ctx.point({3, 2}).index, 11U);
  for (std::uint64_t i = 0; i < ctx.size(); ++i) EXPECT_EQ(ctx.point(ctx.point(i).coords).index, i);
}

TEST(Ring, AddIndexMatchesCoordinatewiseSum) {
  const RingCtx ctx(3, 2, 2);
  Xoshiro256 rng(5);
  for (int s = 0; s < 200; ++s) {
    const Point x = ctx.point(rng.below(ctx.size()));
    const Point y = ctx.point(rng.below(ctx.size()));
    const Point z = ctx.point(ctx.add_index(x.index, y.index));
    for (std::uint32_t i = 0; i < 2; ++i) EXPECT_EQ(z.coords[i], ctx.add(x.coords[i], y.coords[i]));
  }
}

TEST(Ring, RejectsBadContexts) {
  EXPECT_THROW(RingCtx(4, 1, 1), std::invalid_argument);
  EXPECT_THROW(RingCtx(2, 0, 1), std::invalid_argument);
  EXPECT_THROW(RingCtx(2, 1, 0), std::invalid_argument);
  EXPECT_THROW(RingCtx(2, 40, 2), std::invalid_argument);
}

TEST(Ring, SeededGeneratorIsReproducible) {
  Xoshiro256 a(42);
  Xoshiro256 b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  auto c = Xoshiro256::for_item(7, 3);
  auto d = Xoshiro256::for_item(7, 3);
  EXPECT_EQ(c.below(1000), d.below(1000));
}
