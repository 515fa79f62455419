#pragma once

// Property suites: every invariant of the library checked at one context,
// exhaustively where the context is small and on seeded samples otherwise.

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrank/check.hpp"
#include "hyperrank/ring.hpp"

namespace hyperrank {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Random cases per sampled property.
  std::uint64_t samples = 1000;
};

struct SuiteResult {
  std::string suite;
  RingCtx ctx;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const { return all_pass(checks); }
};

std::vector<Check> phi_suite(const RingCtx& ctx, const SuiteOptions& opts);
/// Incidence matrices, directions, the GF(p) kernel and the hyperplane span.
std::vector<Check> incidence_suite(const RingCtx& ctx, const SuiteOptions& opts);
/// Factorization identities and bound comparisons; needs n >= 2.
std::vector<Check> factorization_suite(const RingCtx& ctx, const SuiteOptions& opts);
/// Cubes, rescaling maps, line/hyperplane intersections, fans.
std::vector<Check> geometry_suite(const RingCtx& ctx, const SuiteOptions& opts);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"phi", "incidence", "factorization", "geometry"};
  return names;
}

/// Runs one named suite, or every suite for "all". Throws
/// std::invalid_argument for an unknown name.
std::vector<SuiteResult> run_suites(const std::string& name, const RingCtx& ctx, const SuiteOptions& opts);

}  // namespace hyperrank
