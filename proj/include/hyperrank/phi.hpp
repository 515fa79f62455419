#pragma once

// Generalized polynomials over R = Z/p^kZ built from the binomial functions
// phi_m(x) = C(x, m) mod p and their tensor products
// phi_alpha(x) = phi_{alpha_1}(x_1) ... phi_{alpha_n}(x_n).

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hyperrank/ring.hpp"

namespace hyperrank {

/// Degree of the zero function.
inline constexpr std::int64_t kNegInfDegree = std::numeric_limits<std::int64_t>::min();

/// Dense table of a function R^n -> Z/pZ, indexed by the point codec.
/// Requires p < 256.
class FnTable {
 public:
  /// The zero function.
  explicit FnTable(const RingCtx& ctx);
  /// Throws std::invalid_argument unless values has length p^(kn) with
  /// every entry < p.
  FnTable(const RingCtx& ctx, std::vector<std::uint8_t> values);

  template <class F>
  static FnTable tabulate(const RingCtx& ctx, F&& f) {
    std::vector<std::uint8_t> values(ctx.size());
    for (std::uint64_t i = 0; i < ctx.size(); ++i) values[i] = static_cast<std::uint8_t>(f(i) % ctx.p());
    return FnTable(ctx, std::move(values));
  }

  const RingCtx& ctx() const { return ctx_; }
  std::span<const std::uint8_t> values() const { return values_; }
  std::uint8_t operator[](std::uint64_t index) const { return values_[index]; }
  std::uint8_t at(const Point& x) const { return values_[x.index]; }

  bool is_zero() const;

  FnTable operator+(const FnTable& other) const;
  FnTable operator-(const FnTable& other) const;
  /// Pointwise product.
  FnTable operator*(const FnTable& other) const;
  FnTable scaled(std::uint32_t c) const;

  friend bool operator==(const FnTable& a, const FnTable& b) {
    return a.ctx_ == b.ctx_ && a.values_ == b.values_;
  }

 private:
  RingCtx ctx_;
  std::vector<std::uint8_t> values_;
};

/// alpha in [p^k]^n with cached |alpha|.
struct MultiIndex {
  std::vector<std::uint64_t> alpha;
  std::uint64_t total = 0;

  /// Throws std::invalid_argument if the length is not n or an entry is >= p^k.
  static MultiIndex make(const RingCtx& ctx, std::vector<std::uint64_t> alpha);
  static MultiIndex from_index(const RingCtx& ctx, std::uint64_t index);
};

/// Coefficients c_alpha of f = sum_alpha c_alpha phi_alpha, indexed by the
/// same codec as points.
class PhiCoeffs {
 public:
  PhiCoeffs(const RingCtx& ctx, std::vector<std::uint8_t> coeffs);

  const RingCtx& ctx() const { return ctx_; }
  std::span<const std::uint8_t> coeffs() const { return coeffs_; }
  std::uint8_t operator[](std::uint64_t index) const { return coeffs_[index]; }
  std::uint8_t coefficient(const MultiIndex& alpha) const;
  /// max |alpha| over nonzero coefficients, or kNegInfDegree.
  std::int64_t degree() const { return degree_; }

  friend bool operator==(const PhiCoeffs& a, const PhiCoeffs& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

 private:
  RingCtx ctx_;
  std::vector<std::uint8_t> coeffs_;
  std::int64_t degree_;
};

/// phi_m(x) for m in [0, p^k); the total convention phi_m = 0 outside
/// that range is applied.
std::uint32_t phi_univariate(std::int64_t m, std::uint64_t x, const RingCtx& ctx);

std::uint32_t phi_eval(const MultiIndex& alpha, const Point& x, const RingCtx& ctx);

/// Table of phi_alpha.
FnTable phi_table(const RingCtx& ctx, const MultiIndex& alpha);

/// Unique phi-basis expansion (triangular solve, one base-p digit axis at
/// a time).
PhiCoeffs expand(const FnTable& f);

/// Same coefficients through c_alpha = D_1^{alpha_1} ... D_n^{alpha_n} f(0),
/// computed by repeated forward differencing. Independent of expand().
PhiCoeffs expand_via_derivatives(const FnTable& f);

/// Inverse of expand.
FnTable synthesize(const PhiCoeffs& c);

std::int64_t degree(const FnTable& f);

/// f =_l g, i.e. degree(f - g) <= l.
bool equal_up_to_degree(const FnTable& f, const FnTable& g, std::int64_t l);

/// Delta_r f(x) = f(x + r) - f(x).
FnTable difference(const FnTable& f, const Point& r);

/// D_c f = c^{-1} Delta_c f with c^{-1} taken mod p. Requires n = 1 and c a
/// unit; throws std::invalid_argument otherwise.
FnTable normalized_difference(const FnTable& f, std::uint64_t c);

/// Delta_{r_1} ... Delta_{r_d} f by folding difference().
FnTable iterated_difference(const FnTable& f, std::span<const Point> steps);

/// The same function evaluated as the alternating sum over the 2^d box
/// vertices x + sum eps_j r_j.
FnTable iterated_difference_box(const FnTable& f, std::span<const Point> steps);

struct NullCheck {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  /// Exhaustive mode refuses when (#step multisets) * p^(kn) exceeds this.
  std::uint64_t budget = 10'000'000;
};

/// True iff every order-d iterated difference of f vanishes (over all step
/// tuples, or over `count` seeded random tuples). Exhaustive mode walks
/// step multisets in non-decreasing order, which covers every tuple because
/// difference operators commute. Throws BudgetExceeded when over budget and
/// std::invalid_argument for d = 0.
bool is_d_null(const FnTable& f, std::uint64_t d, const NullCheck& mode = {});

/// dim Omega_m^n = C(m + n, n) for m < p^k; 0 for m < 0. Throws
/// std::domain_error for m >= p^k.
std::uint64_t omega_dim(const RingCtx& ctx, std::int64_t m);

/// Expansion of g(x, y) = phi_m(xy) in the bivariate basis: the table
/// c_{m,(alpha_1,alpha_2)}. Requires ctx.n() == 1 and 0 <= m < p^k.
PhiCoeffs product_coeff_tensor(std::uint64_t m, const RingCtx& ctx);

/// A_{m,l}(a) = Delta_a^l phi_m(0) for l = 0..m, so that
/// phi_m(ax) = sum_l A_{m,l}(a) phi_l(x). Requires ctx.n() == 1.
std::vector<std::uint8_t> scale_coeffs(std::uint64_t m, std::uint64_t a, const RingCtx& ctx);

}  // namespace hyperrank
