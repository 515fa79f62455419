#include <gtest/gtest.h>

#include <algorithm>

#include "hyperrank/errors.hpp"
#include "hyperrank/geometry.hpp"

using namespace hyperrank;

namespace {

Direction dir(const RingCtx& ctx, std::vector<std::uint64_t> c) { return canonical_direction(ctx.point(std::move(c)), ctx); }

PointSet points(const RingCtx& ctx, std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> xs) {
  PointSet out;
  for (auto [x, y] : xs) out.push_back(ctx.point({x, y}).index);
  std::sort(out.begin(), out.end());
  return out;
}

Fan example_fan(const RingCtx& ctx) {
  const Point a = ctx.point({0, 1});
  std::vector<Line> lines{Line{dir(ctx, {1, 0}), a}, Line{dir(ctx, {1, 1}), a}, Line{dir(ctx, {0, 1}), a}};
  return make_fan(ctx, 0, cube_of(a, 0, ctx), cube_of(a, 1, ctx), lines);
}

FnTable indicator(const RingCtx& ctx, const PointSet& s) {
  std::vector<std::uint8_t> v(ctx.size(), 0);
  for (auto x : s) v[x] = 1;
  return FnTable(ctx, v);
}

}  // namespace

TEST(Geometry, AngleExamples) {
  const RingCtx ctx(2, 2, 2);
  EXPECT_EQ(angle(dir(ctx, {1, 0}), dir(ctx, {1, 1}), ctx), 0U);
  EXPECT_EQ(angle(dir(ctx, {1, 0}), dir(ctx, {1, 2}), ctx), 1U);
  EXPECT_EQ(angle(dir(ctx, {1, 3}), dir(ctx, {1, 3}), ctx), kAngleEqual);
}

TEST(Geometry, CubeMembership) {
  const RingCtx ctx(3, 2, 2);
  const Cube q = cube_of(ctx.point({4, 7}), 1, ctx);
  const auto m = q.members(ctx);
  EXPECT_EQ(m.size(), 9U);
  for (auto x : m) EXPECT_EQ(project(ctx.point(x), 1, ctx), project(ctx.point({4, 7}), 1, ctx));
  EXPECT_EQ(cube_of(ctx.point({4, 7}), 0, ctx).members(ctx).size(), ctx.size());
  EXPECT_EQ(cube_of(ctx.point({4, 7}), 2, ctx).members(ctx), (PointSet{ctx.point({4, 7}).index}));
}

TEST(Geometry, IotaExamples) {
  const RingCtx ctx(2, 2, 2);
  const Cube whole{0, ctx.point(0)};
  for (std::uint64_t i = 0; i < ctx.size(); ++i) EXPECT_EQ(iota(whole, ctx.point(i), ctx), ctx.point(i));

  const Cube q = cube_of(ctx.point({0, 1}), 1, ctx);
  const Line l{dir(ctx, {1, 0}), ctx.point({0, 1})};
  PointSet lq;
  for (auto x : l.members(ctx)) {
    if (q.contains(x, ctx)) lq.push_back(x);
  }
  const RingCtx down(2, 1, 2);
  EXPECT_EQ(iota(q, lq, ctx), points(down, {{0, 0}, {1, 0}}));

  const Cube pt = cube_of(ctx.point({3, 2}), 2, ctx);
  EXPECT_EQ(iota(pt, ctx.point({3, 2}), ctx).index, 0U);
  EXPECT_THROW(iota(q, ctx.point({1, 1}), ctx), std::invalid_argument);
}

TEST(Geometry, NeighbourhoodAndDistance) {
  const RingCtx ctx(2, 2, 2);
  const PointSet s{ctx.point({1, 1}).index};
  EXPECT_EQ(neighbourhood(s, 0, ctx).size(), 16U);
  EXPECT_EQ(neighbourhood(s, 1, ctx).size(), 4U);
  EXPECT_EQ(neighbourhood(s, 2, ctx), s);
  EXPECT_TRUE(neighbourhood({}, 1, ctx).empty());
  EXPECT_EQ(dist_exponent(ctx.point({1, 1}), s, ctx), 2U);
  EXPECT_EQ(dist_exponent(ctx.point({3, 1}), s, ctx), 1U);
  EXPECT_EQ(dist_exponent(ctx.point({0, 1}), s, ctx), 0U);
  EXPECT_THROW(dist_exponent(ctx.point(0), {}, ctx), std::invalid_argument);
}

TEST(Geometry, WorkedExampleFanPoints) {
  const RingCtx ctx(2, 2, 2);
  const Fan fan = example_fan(ctx);
  EXPECT_EQ(fan.points, points(ctx, {{1, 1}, {3, 1}, {1, 2}, {3, 0}, {0, 2}, {0, 0}}));
  const FnTable phi21 = phi_table(ctx, MultiIndex::make(ctx, {2, 1}));
  PointSet support;
  for (auto x : fan.points) {
    if (phi21[x]) support.push_back(x);
  }
  EXPECT_EQ(support, points(ctx, {{3, 1}}));
  EXPECT_EQ(sum_over(phi21, fan.points), 1U);
  const std::vector<Fan> one{fan};
  const auto rep = fan_test(phi21, one);
  ASSERT_EQ(rep.violations.size(), 1U);
  EXPECT_EQ(rep.violations[0].sum, 1U);
}

TEST(Geometry, FanConstructionErrors) {
  const RingCtx ctx(2, 2, 2);
  const Point a = ctx.point({0, 1});
  const Cube qp = cube_of(a, 0, ctx);
  const Cube q = cube_of(a, 1, ctx);
  // (1,0) and (1,2) make angle 1/2.
  std::vector<Line> narrow{Line{dir(ctx, {1, 0}), a}, Line{dir(ctx, {1, 2}), a}, Line{dir(ctx, {0, 1}), a}};
  EXPECT_THROW(make_fan(ctx, 0, qp, q, narrow), std::invalid_argument);
  std::vector<Line> two{Line{dir(ctx, {1, 0}), a}, Line{dir(ctx, {0, 1}), a}};
  EXPECT_THROW(make_fan(ctx, 0, qp, q, two), std::invalid_argument);
  std::vector<Line> lines{Line{dir(ctx, {1, 0}), a}, Line{dir(ctx, {1, 1}), a}, Line{dir(ctx, {0, 1}), a}};
  EXPECT_THROW(make_fan(ctx, 1, cube_of(a, 1, ctx), cube_of(a, 2, ctx), lines), std::invalid_argument);
  std::vector<Line> missing{Line{dir(ctx, {1, 0}), ctx.point({0, 0})}, Line{dir(ctx, {1, 1}), a},
                            Line{dir(ctx, {0, 1}), a}};
  EXPECT_THROW(make_fan(ctx, 0, qp, q, missing), std::invalid_argument);
}

TEST(Geometry, FansInHigherDimensionNeedAPlane) {
  const RingCtx ctx(2, 2, 3);
  const Point a = ctx.point(0);
  std::vector<Line> lines{Line{dir(ctx, {1, 0, 0}), a}, Line{dir(ctx, {1, 1, 0}), a}, Line{dir(ctx, {0, 1, 0}), a}};
  EXPECT_THROW(make_fan(ctx, 0, cube_of(a, 0, ctx), cube_of(a, 1, ctx), lines), std::invalid_argument);
  const auto plane = Plane2Nbhd::make(a, dir(ctx, {1, 0, 0}), dir(ctx, {0, 1, 0}), 1, ctx);
  const Fan fan = make_fan(ctx, 0, cube_of(a, 0, ctx), cube_of(a, 1, ctx), lines, plane);
  EXPECT_FALSE(fan.points.empty());
  std::vector<Line> off{Line{dir(ctx, {1, 0, 0}), a}, Line{dir(ctx, {1, 1, 0}), a}, Line{dir(ctx, {0, 0, 1}), a}};
  EXPECT_THROW(make_fan(ctx, 0, cube_of(a, 0, ctx), cube_of(a, 1, ctx), off, plane), std::invalid_argument);
  EXPECT_THROW(Plane2Nbhd::make(a, dir(ctx, {1, 0, 0}), dir(ctx, {1, 2, 0}), 1, ctx), std::invalid_argument);
}

TEST(Geometry, ExhaustiveFamilyOnZ4Squared) {
  const RingCtx ctx(2, 2, 2);
  EXPECT_EQ(fan_family_size(ctx, 0), 256U);
  const auto fans = fan_family(ctx, 0, FanMode{});
  EXPECT_EQ(fans.size(), 256U);
  for (const auto& f : fans) {
    EXPECT_EQ(f.lines.size(), 3U);
    EXPECT_FALSE(f.points.empty());
  }
  FanMode tight;
  tight.budget = 10;
  EXPECT_THROW(fan_family(ctx, 0, tight), BudgetExceeded);
  EXPECT_THROW(fan_family_size(RingCtx(2, 2, 3), 0), std::invalid_argument);
}

TEST(Geometry, SampledFamiliesAreReproducible) {
  const RingCtx ctx(3, 2, 2);
  const FanMode mode{FanMode::Kind::Sampled, 1, 100};
  const auto a = fan_family(ctx, 0, mode);
  const auto b = fan_family(ctx, 0, mode);
  ASSERT_EQ(a.size(), 100U);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].points, b[i].points);
    EXPECT_EQ(a[i].points, sample_fan(ctx, 0, 1, i).points);
  }
}

TEST(Geometry, FansExistOnScaleOne) {
  const RingCtx ctx(2, 3, 2);
  EXPECT_GT(fan_family_size(ctx, 1), 0U);
  const Fan f = sample_fan(ctx, 1, 4, 0);
  EXPECT_EQ(f.scale, 1U);
  EXPECT_EQ(f.q.scale, 2U);
  for (auto x : f.points) {
    EXPECT_TRUE(f.qprime.contains(x, ctx));
    EXPECT_FALSE(f.q.contains(x, ctx));
  }
}

TEST(Geometry, IncidenceCountExamples) {
  const RingCtx ctx(2, 2, 2);
  const Fan fan = example_fan(ctx);
  const auto axis = Line{dir(ctx, {1, 0}), ctx.point(0)}.members(ctx);
  const auto c = incidence_count(axis, fan.points, 2);
  EXPECT_EQ(c.count, 2U);
  EXPECT_EQ(c.residue, 0U);
  for (const auto& b : directions(ctx)) {
    for (std::uint64_t a = 0; a < ctx.size(); ++a) {
      EXPECT_EQ(incidence_count(Hyperplane{b, ctx.point(a)}.members(ctx), fan.points, 2).residue, 0U);
    }
  }
  const auto none = incidence_count(PointSet{0, 1}, PointSet{2, 3}, 2);
  EXPECT_EQ(none.count, 0U);
  EXPECT_EQ(none.residue, 0U);
}

TEST(Geometry, HyperplaneIndicatorsPassEveryFan) {
  const RingCtx ctx(2, 2, 2);
  const auto fans = fan_family(ctx, 0, FanMode{});
  for (const auto& b : directions(ctx)) {
    const FnTable f = indicator(ctx, Hyperplane{b, ctx.point({1, 3})}.members(ctx));
    EXPECT_TRUE(fan_test(f, fans).passed());
  }
  const auto zero = fan_test(FnTable(ctx), fans);
  EXPECT_TRUE(zero.passed());
  EXPECT_EQ(zero.fans_checked, 256U);
}

TEST(Geometry, ParallelLineCheckExamples) {
  const RingCtx ctx(2, 2, 2);
  const Cube whole{0, ctx.point(0)};
  const Direction b = dir(ctx, {1, 0});
  const Line l1{b, ctx.point({0, 0})};
  const Line l2{b, ctx.point({0, 1})};
  const FnTable f30 = phi_table(ctx, MultiIndex::make(ctx, {3, 0}));
  EXPECT_EQ(sum_over(f30, l1.members(ctx)), 1U);
  EXPECT_EQ(sum_over(f30, l2.members(ctx)), 1U);
  EXPECT_TRUE(parallel_line_check(f30, whole, l1, l2));

  const FnTable h = indicator(ctx, Hyperplane{dir(ctx, {1, 1}), ctx.point({2, 0})}.members(ctx));
  EXPECT_TRUE(parallel_line_check(h, whole, l1, l2));

  EXPECT_THROW(parallel_line_check(phi_table(ctx, MultiIndex::make(ctx, {3, 3})), whole, l1, l2),
               std::invalid_argument);
  EXPECT_THROW(parallel_line_check(f30, whole, l1, Line{dir(ctx, {0, 1}), ctx.point(0)}), std::invalid_argument);
  const Cube corner = cube_of(ctx.point({1, 1}), 1, ctx);
  EXPECT_THROW(parallel_line_check(f30, corner, l1, l2), std::invalid_argument);
}
