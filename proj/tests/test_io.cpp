#include <gtest/gtest.h>

#include <sstream>

#include "hyperrank/errors.hpp"
#include "hyperrank/io.hpp"

using namespace hyperrank;

namespace {

FnTable parse(const std::string& text, const std::optional<RingCtx>& expected = std::nullopt) {
  std::istringstream is(text);
  return read_fn_table(is, expected);
}

}  // namespace

TEST(Io, JsonTableRoundTrip) {
  const RingCtx ctx(2, 2, 2);
  const FnTable f = phi_table(ctx, MultiIndex::make(ctx, {2, 1}));
  std::stringstream ss;
  write_fn_table_json(ss, f);
  EXPECT_EQ(read_fn_table(ss, ctx), f);
}

TEST(Io, CsvTableRoundTrip) {
  const RingCtx ctx(3, 1, 2);
  const FnTable f = phi_table(ctx, MultiIndex::make(ctx, {1, 2}));
  std::stringstream ss;
  write_fn_table_csv(ss, f);
  EXPECT_EQ(read_fn_table(ss), f);
}

TEST(Io, CsvWithoutHeaderWord) {
  EXPECT_EQ(parse("3,1,1\n0\n2\n1\n"), FnTable(RingCtx(3, 1, 1), {0, 2, 1}));
}

TEST(Io, RejectsEntryNotBelowP) {
  EXPECT_THROW(parse(R"({"p":2,"k":1,"n":1,"values":[0,2]})"), ParseError);
  EXPECT_THROW(parse("p,k,n\n2,1,1\n0\n2\n"), ParseError);
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(parse(R"({"p":2,"k":1,"n":1,"values":[0,1)"), ParseError);
  EXPECT_THROW(parse(R"({"p":2,"k":1,"values":[0,1]})"), ParseError);
  EXPECT_THROW(parse(R"({"p":2,"k":1,"n":1,"values":[0]})"), ParseError);
  EXPECT_THROW(parse(R"({"p":4,"k":1,"n":1,"values":[0,1,2,3]})"), ParseError);
  EXPECT_THROW(parse(R"({"p":2,"k":1,"n":1,"values":[0,-1]})"), ParseError);
  EXPECT_THROW(parse("p,k,n\n2,1,1\n0\nx\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(Io, RejectsContextMismatch) {
  EXPECT_THROW(parse(R"({"p":2,"k":1,"n":1,"values":[0,1]})", RingCtx(2, 1, 2)), ParseError);
}

TEST(Io, CheckJsonFields) {
  const Json j = to_json(check_le("x_le_y", 2, 3));
  EXPECT_EQ(j.dump(), R"({"name":"x_le_y","relation":"<=","lhs":2,"rhs":3,"pass":true})");
}

TEST(Io, RankReportJsonRoundTripsThroughText) {
  const RankReport r = rank_report(RingCtx(2, 2, 2));
  const Json j = to_json(r);
  EXPECT_EQ(Json::parse(j.dump()), j);
  EXPECT_EQ(j["rank_W"], 7);
  EXPECT_EQ(j["rank_Wstar"], 6);
  EXPECT_FALSE(j.contains("seconds"));
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>());
}

TEST(Io, FanJsonCarriesGeometry) {
  const RingCtx ctx(2, 2, 2);
  const Fan f = sample_fan(ctx, 0, 1, 0);
  const Json j = to_json(f, ctx);
  EXPECT_EQ(j["lines"].size(), 3U);
  EXPECT_EQ(j["stated_scale_bound"], 0);
  EXPECT_EQ(j["points"].size(), f.points.size());
  EXPECT_TRUE(j["plane"].is_null());
}
