#pragma once

// The hyperplane function space H^n: the span over Z/pZ of indicator
// functions of affine hyperplanes in R^n, its reduced spanning set
// {phi_l(<x, b>)}, membership tests, the factorization H = Psi B Phi, and
// closed-form dimension bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperrank/check.hpp"
#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/ring.hpp"

namespace hyperrank {

/// Rows spanning H^n as tables over x in R^n (columns in point order).
struct HyperSpanBasis {
  RingCtx ctx;
  /// "phi": row (b, l) at index b * p^k + l is phi_l(<x, b>), b in direction order.
  /// "indicator": row (b, a) at index b * p^(kn) + a is the indicator of H_b(a).
  std::string provenance;
  MatGFp rows;
};

HyperSpanBasis span_basis(const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);
/// Literal indicator rows; p^(kn) <= 256 only.
HyperSpanBasis indicator_basis(const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);

/// dim H^n, the rank of the phi-form spanning set.
std::uint64_t hyperspan_dim(const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);

/// Coefficients over the basis rows reproducing f, or nullopt when f is not
/// a hyperplane function.
std::optional<std::vector<std::uint8_t>> is_hyperplane_function(const FnTable& f, const HyperSpanBasis& basis);
std::optional<std::vector<std::uint8_t>> is_hyperplane_function(const FnTable& f,
                                                                std::uint64_t budget = kDefaultEntryBudget);

/// H = Psi * B * Phi for n >= 2, with
///   H    rows (m, a~) at m + p^k idx(a~), columns x: phi_m(<a~, x~> + x_n)
///   Psi  rows (m, a~), columns (mu, alpha~): [m = mu] phi_alpha~(a~)
///   B    rows (m, alpha~), columns beta in [p^k]^n
///   Phi  rows beta, columns x: phi_beta(x)
/// where x~ = (x_1..x_{n-1}) and idx is the point codec of R^(n-1).
struct BFactorization {
  RingCtx ctx;
  MatGFp H;
  MatGFp Psi;
  MatGFp B;
  MatGFp Phi;
};

/// Largest p^(kn) accepted by build_factorization.
inline constexpr std::uint64_t kFactorizationMaxPoints = 4096;

/// Throws std::invalid_argument for n < 2 and BudgetExceeded beyond 4096 points.
BFactorization build_factorization(const RingCtx& ctx);

struct ZeroPatternViolation {
  std::uint64_t m;
  std::vector<std::uint64_t> alpha;  // alpha~, length n - 1
  std::vector<std::uint64_t> beta;   // length n
  std::uint8_t value;
};

struct FactorizationReport {
  explicit FactorizationReport(const RingCtx& c) : ctx(c) {}

  RingCtx ctx;
  std::uint64_t dim = 0;  // side of every (square) matrix, p^(kn)
  bool product_matches = false;
  std::uint64_t rank_H = 0;
  std::uint64_t rank_B = 0;
  std::uint64_t rank_Psi = 0;
  std::optional<std::uint64_t> dim_H;
  std::vector<ZeroPatternViolation> zero_pattern_violations;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const { return all_pass(checks); }
};

/// Builds the factorization and checks: product equals H entrywise,
/// rank H = rank B, Psi nonsingular, dim H^n <= n rank H, and B vanishes
/// whenever |alpha~| + |beta| > m + 2(n-1)(p-1).
FactorizationReport verify_factorization(const RingCtx& ctx);

struct TheoremBounds {
  /// C(p^k - 1 + n, n)
  std::uint64_t trivial_bound;
  /// 2n C(floor(p^k/2) + (n-1)(p-1) + n, n)
  std::uint64_t fan_bound;
  /// 2 C(floor(p^k/2) + (n-1)(p-1) + n, n)
  std::uint64_t ubn_bound;
};

/// Pure arithmetic; throws std::overflow_error if a value exceeds 64 bits.
TheoremBounds theorem_bounds(const RingCtx& ctx);

/// Comparisons of the bounds against computed dimensions, where given.
std::vector<Check> bound_checks(const TheoremBounds& bounds, std::optional<std::uint64_t> dim_H,
                                std::optional<std::uint64_t> rank_B);

struct K1SpanResult {
  /// span{<x, b>^d : b} == span of degree-d monomials.
  bool homogeneous = false;
  /// span{<x - a, b>^d : a, b} == span of monomials of degree <= d.
  bool affine = false;
  /// 1 == 1_{x1 = 0} + sum_c 1_{x2 = c x1}; needs n >= 2.
  std::optional<bool> ones_identity;

  bool passed() const { return homogeneous && affine && ones_identity.value_or(true); }
};

/// Polynomial span identities over F_p^n (k = 1). Throws
/// std::invalid_argument for d >= p and BudgetExceeded for p^n > 4096.
K1SpanResult verify_k1_spans(std::uint32_t p, std::uint32_t n, std::uint32_t d);

}  // namespace hyperrank
