#pragma once

// Arithmetic over R = Z/p^kZ and the index codecs for R^n.
//
// Elements are canonical representatives in [0, p^k). Points of R^n are
// encoded as sum_i x_i * (p^k)^i with coordinate 1 (i = 0) least
// significant; every matrix row/column order and every file format in this
// project depends on that order.

#include <cstdint>
#include <span>
#include <vector>

namespace hyperrank {

/// Integer power with overflow detection (throws std::overflow_error).
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);

/// Trial-division primality.
bool is_prime(std::uint64_t p);

/// C(x, m) mod p by Lucas's theorem. C(a, b) = 0 for a < b, C(0, 0) = 1.
std::uint32_t binom_mod_p(std::uint64_t x, std::uint64_t m, std::uint32_t p);

/// Exact C(n, r) as an unsigned integer; throws std::overflow_error.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

/// Modular inverse of a unit a mod m; throws std::domain_error otherwise.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

/// Encodes points of (Z/MZ)^n as integers in [0, M^n). M may be 1 (the
/// zero-dimensional reduction R_0), in which case every point is index 0.
class IndexCodec {
 public:
  IndexCodec(std::uint64_t modulus, std::uint32_t n);

  std::uint64_t modulus() const { return modulus_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t encode(std::span<const std::uint64_t> coords) const;
  void decode(std::uint64_t index, std::span<std::uint64_t> coords) const;
  std::vector<std::uint64_t> decode(std::uint64_t index) const;

  /// Coordinate i of the point with the given index.
  std::uint64_t coord(std::uint64_t index, std::uint32_t i) const;

 private:
  std::uint64_t modulus_;
  std::uint32_t n_;
  std::uint64_t size_;
};

/// A point of (Z/p^lZ)^n together with its codec index.
struct Point {
  std::vector<std::uint64_t> coords;
  std::uint64_t index = 0;

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
};

/// The ambient parameters (p, k, n). Immutable after construction.
class RingCtx {
 public:
  /// Largest p^(kn) accepted; keeps every index and product in 64 bits.
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 62;

  /// Throws std::invalid_argument for non-prime p, k = 0, n = 0, or
  /// p^(kn) > kMaxSize.
  RingCtx(std::uint32_t p, std::uint32_t k, std::uint32_t n);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t pk() const { return pk_; }
  std::uint64_t size() const { return codec_.size(); }
  const IndexCodec& codec() const { return codec_; }

  /// p^j for 0 <= j <= k.
  std::uint64_t pow_p(std::uint32_t j) const;

  /// Same (p, k) in a different dimension.
  RingCtx with_dim(std::uint32_t n) const { return RingCtx(p_, k_, n); }

  Point point(std::uint64_t index) const;
  Point point(std::vector<std::uint64_t> coords) const;

  std::uint64_t reduce(std::int64_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % pk_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + pk_ - b) % pk_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const { return (pk_ - a) % pk_; }
  std::uint64_t inv(std::uint64_t a) const { return inverse_mod(a, pk_); }

  /// Index of x + y (coordinatewise in R), both given as indices.
  std::uint64_t add_index(std::uint64_t x, std::uint64_t y) const;

  friend bool operator==(const RingCtx& a, const RingCtx& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.n_ == b.n_;
  }

 private:
  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t n_;
  std::uint64_t pk_;
  IndexCodec codec_;
};

/// Base-p digits (x_0, ..., x_{k-1}) of x, least significant first.
std::vector<std::uint32_t> digits(std::uint64_t x, const RingCtx& ctx);
std::uint64_t from_digits(std::span<const std::uint32_t> d, std::uint32_t p);

/// Largest j <= k with p^j | a; valuation(0) = k.
std::uint32_t valuation(std::uint64_t a, const RingCtx& ctx);

bool is_unit(std::uint64_t a, const RingCtx& ctx);

/// Componentwise reduction mod p^l; the result's index uses the R_l codec.
Point project(const Point& x, std::uint32_t scale, const RingCtx& ctx);

/// <x, y> = sum x_i y_i mod p^k. Throws std::invalid_argument on a
/// dimension mismatch.
std::uint64_t inner(const Point& x, const Point& y, const RingCtx& ctx);
std::uint64_t inner(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y,
                    const RingCtx& ctx);

}  // namespace hyperrank
