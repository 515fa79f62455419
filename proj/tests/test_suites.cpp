#include <gtest/gtest.h>

#include "hyperrank/suites.hpp"

using namespace hyperrank;

namespace {

void expect_all_pass(const std::vector<SuiteResult>& results) {
  for (const auto& r : results) {
    EXPECT_FALSE(r.checks.empty()) << r.suite;
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << r.suite << ": " << c.name;
  }
}

}  // namespace

TEST(Suites, AllPassOnSmallContexts) {
  const SuiteOptions opts{3, 200};
  for (const RingCtx& ctx : {RingCtx(2, 2, 1), RingCtx(3, 1, 2), RingCtx(2, 2, 2), RingCtx(2, 1, 3)}) {
    const auto results = run_suites("all", ctx, opts);
    EXPECT_EQ(results.size(), suite_names().size());
    expect_all_pass(results);
  }
}

TEST(Suites, SingleSuiteByName) {
  const auto results = run_suites("geometry", RingCtx(3, 2, 2), SuiteOptions{5, 100});
  ASSERT_EQ(results.size(), 1U);
  EXPECT_EQ(results[0].suite, "geometry");
  expect_all_pass(results);
}

TEST(Suites, UnknownNameThrows) {
  EXPECT_THROW(run_suites("nope", RingCtx(2, 1, 1), SuiteOptions{}), std::invalid_argument);
}
