#include <gtest/gtest.h>

#include <algorithm>

#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/incidence.hpp"

using namespace hyperrank;

namespace {

const Check* find(const RankReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST(Incidence, DirectionsOfZ4Squared) {
  const RingCtx ctx(2, 2, 2);
  std::vector<std::vector<std::uint64_t>> got;
  for (const auto& d : directions(ctx)) got.push_back(d.rep.coords);
  const std::vector<std::vector<std::uint64_t>> expected{{1, 0}, {1, 1}, {1, 2}, {1, 3}, {0, 1}, {2, 1}};
  EXPECT_EQ(got, expected);
}

TEST(Incidence, DirectionCounts) {
  EXPECT_EQ(directions(RingCtx(2, 1, 2)).size(), 3U);
  EXPECT_EQ(directions(RingCtx(3, 1, 2)).size(), 4U);
  for (const RingCtx& ctx : {RingCtx(2, 3, 3), RingCtx(3, 2, 2), RingCtx(5, 1, 3)}) {
    EXPECT_EQ(directions(ctx).size(), direction_count(ctx));
  }
}

TEST(Incidence, CanonicalDirectionExamples) {
  const RingCtx ctx(2, 2, 2);
  EXPECT_EQ(canonical_direction(ctx.point({3, 1}), ctx).rep.coords, (std::vector<std::uint64_t>{1, 3}));
  for (std::uint64_t c = 0; c < 4; ++c) {
    EXPECT_EQ(canonical_direction(ctx.point({1, c}), ctx).rep.coords, (std::vector<std::uint64_t>{1, c}));
  }
  EXPECT_THROW(canonical_direction(ctx.point({2, 0}), ctx), std::invalid_argument);
}

TEST(Incidence, HyperplaneAndLineSizes) {
  const RingCtx ctx(3, 2, 2);
  for (const auto& b : directions(ctx)) {
    const Hyperplane h{b, ctx.point({4, 7})};
    const auto m = h.members(ctx);
    EXPECT_EQ(m.size(), 9U);
    for (auto x : m) EXPECT_TRUE(h.contains(ctx.point(x), ctx));
    EXPECT_EQ((Line{b, ctx.point({4, 7})}.members(ctx).size()), 9U);
  }
}

TEST(Incidence, RankWK1Formula) {
  const std::vector<std::pair<RingCtx, std::uint64_t>> cases{
      {RingCtx(2, 1, 2), 3}, {RingCtx(3, 1, 2), 4}, {RingCtx(5, 1, 2), 6}, {RingCtx(2, 1, 3), 4}, {RingCtx(3, 1, 3), 7}};
  for (const auto& [ctx, expected] : cases) {
    EXPECT_EQ(rank(build_incidence(IncidenceKind::W, ctx)), expected);
    EXPECT_EQ(binomial(ctx.p() + ctx.n() - 2, ctx.n() - 1) + 1, expected);
  }
}

TEST(Incidence, RankReportAtP3K1N2) {
  const RankReport r = rank_report(RingCtx(3, 1, 2));
  EXPECT_EQ(r.rank_W, 4U);
  const Check* c = find(r, "rank_W_k1_formula");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->pass);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.complete());
}

TEST(Incidence, RankReportStrictnessInThePlane) {
  const std::vector<std::tuple<RingCtx, std::uint64_t, std::uint64_t>> cases{
      {RingCtx(2, 2, 2), 7, 6}, {RingCtx(2, 3, 2), 15, 12}, {RingCtx(3, 2, 2), 13, 12}};
  for (const auto& [ctx, w, ws] : cases) {
    const RankReport r = rank_report(ctx);
    EXPECT_EQ(r.rank_W, w);
    EXPECT_EQ(r.rank_Wstar, ws);
    const Check* c = find(r, "rank_Wstar_lt_rank_W_plane");
    ASSERT_NE(c, nullptr);
    EXPECT_TRUE(c->pass);
    EXPECT_TRUE(r.passed());
  }
}

TEST(Incidence, RankReportOmitsOverBudgetQuantities) {
  const RankReport r = rank_report(RingCtx(2, 3, 2), 100);
  EXPECT_FALSE(r.complete());
  EXPECT_FALSE(r.rank_W.has_value());
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(build_incidence(IncidenceKind::W, RingCtx(2, 3, 2), 100), BudgetExceeded);
}

TEST(Incidence, LiteralAffineMatrixOnlyForSmallContexts) {
  EXPECT_THROW(build_incidence(IncidenceKind::AstarLiteral, RingCtx(2, 3, 3)), BudgetExceeded);
  const MatGFp a = build_incidence(IncidenceKind::AstarLiteral, RingCtx(2, 2, 2));
  EXPECT_EQ(a.rows(), 6U * 16U);
  EXPECT_EQ(a.cols(), 16U);
}

TEST(Incidence, WstarRowsAreHomogeneousHyperplanes) {
  const RingCtx ctx(2, 2, 2);
  const MatGFp ws = build_incidence(IncidenceKind::Wstar, ctx);
  const auto dirs = directions(ctx);
  for (std::size_t r = 0; r < dirs.size(); ++r) {
    const auto m = Hyperplane{dirs[r], ctx.point(0)}.members(ctx);
    for (std::uint64_t x = 0; x < ctx.size(); ++x) {
      EXPECT_EQ(ws.get(r, x), std::binary_search(m.begin(), m.end(), x) ? 1 : 0);
    }
  }
}

TEST(Incidence, ScaleBlocksMatchReducedRanks) {
  for (const RingCtx& ctx : {RingCtx(2, 2, 2), RingCtx(2, 3, 2), RingCtx(3, 2, 2), RingCtx(2, 2, 3)}) {
    for (const auto& b : scale_block_ranks(ctx)) EXPECT_EQ(b.block_rank, b.reduced_rank) << "j=" << b.j;
  }
}
