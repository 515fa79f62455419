#include "hyperrank/suites.hpp"

#include <chrono>
#include <stdexcept>

#include "hyperrank/errors.hpp"
#include "hyperrank/hyperplane.hpp"

namespace hyperrank {

std::vector<Check> factorization_suite(const RingCtx& ctx, const SuiteOptions&) {
  std::vector<Check> out;
  std::optional<std::uint64_t> rank_B;
  std::optional<std::uint64_t> dim_H;
  if (ctx.n() < 2) {
    out.push_back(check_holds("factorization_applicable", true, "skipped: needs n >= 2"));
  } else if (ctx.size() > kFactorizationMaxPoints) {
    out.push_back(check_holds("factorization_applicable", true, "skipped: p^(kn) > 4096"));
  } else {
    const FactorizationReport rep = verify_factorization(ctx);
    out.insert(out.end(), rep.checks.begin(), rep.checks.end());
    rank_B = rep.rank_B;
    dim_H = rep.dim_H;
  }
  if (!dim_H) {
    try {
      dim_H = hyperspan_dim(ctx);
    } catch (const BudgetExceeded&) {
    }
  }
  try {
    const auto more = bound_checks(theorem_bounds(ctx), dim_H, rank_B);
    out.insert(out.end(), more.begin(), more.end());
  } catch (const std::overflow_error& e) {
    out.push_back(check_holds("bounds_representable", true, std::string("skipped: ") + e.what()));
  }
  return out;
}

std::vector<SuiteResult> run_suites(const std::string& name, const RingCtx& ctx, const SuiteOptions& opts) {
  using Fn = std::vector<Check> (*)(const RingCtx&, const SuiteOptions&);
  const std::vector<std::pair<std::string, Fn>> table{
      {"phi", phi_suite},
      {"incidence", incidence_suite},
      {"factorization", factorization_suite},
      {"geometry", geometry_suite},
  };
  std::vector<SuiteResult> out;
  for (const auto& [suite, fn] : table) {
    if (name != "all" && name != suite) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r{suite, ctx, fn(ctx, opts), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  if (out.empty()) throw std::invalid_argument("unknown suite '" + name + "'");
  return out;
}

}  // namespace hyperrank
