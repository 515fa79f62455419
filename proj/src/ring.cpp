#include "hyperrank/ring.hpp"

#include <stdexcept>
#include <string>

namespace hyperrank {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// C(a, b) mod p for single digits a, b < p.
std::uint64_t small_binom(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    num = mulmod(num, a - i, p);
    den = mulmod(den, i + 1, p);
  }
  return mulmod(num, powmod(den, p - 2, p), p);
}

}  // namespace

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > ~std::uint64_t{0} / base) throw std::overflow_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t binom_mod_p(std::uint64_t x, std::uint64_t m, std::uint32_t p) {
  std::uint64_t result = 1;
  while (m > 0 || x > 0) {
    const std::uint64_t xd = x % p;
    const std::uint64_t md = m % p;
    if (md > xd) return 0;
    result = mulmod(result, small_binom(xd, md, p), p);
    x /= p;
    m /= p;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  u128 acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc * (n - r + i) / i stays integral at every step.
    acc = acc * (n - r + i) / i;
    if (acc > ~std::uint64_t{0}) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t old_r = static_cast<std::int64_t>(a % m);
  std::int64_t r = static_cast<std::int64_t>(m);
  std::int64_t old_s = 1;
  std::int64_t s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("element " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  std::int64_t inv = old_s % static_cast<std::int64_t>(m);
  if (inv < 0) inv += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(inv);
}

IndexCodec::IndexCodec(std::uint64_t modulus, std::uint32_t n)
    : modulus_(modulus), n_(n), size_(checked_pow(modulus, n)) {
  if (modulus == 0) throw std::invalid_argument("codec modulus must be positive");
}

std::uint64_t IndexCodec::encode(std::span<const std::uint64_t> coords) const {
  if (coords.size() != n_) throw std::invalid_argument("point has wrong dimension");
  std::uint64_t index = 0;
  for (std::size_t i = coords.size(); i-- > 0;) index = index * modulus_ + coords[i] % modulus_;
  return index;
}

void IndexCodec::decode(std::uint64_t index, std::span<std::uint64_t> coords) const {
  for (std::uint32_t i = 0; i < n_; ++i) {
    coords[i] = index % modulus_;
    index /= modulus_;
  }
}

std::vector<std::uint64_t> IndexCodec::decode(std::uint64_t index) const {
  std::vector<std::uint64_t> coords(n_);
  decode(index, coords);
  return coords;
}

std::uint64_t IndexCodec::coord(std::uint64_t index, std::uint32_t i) const {
  for (std::uint32_t j = 0; j < i; ++j) index /= modulus_;
  return index % modulus_;
}

RingCtx::RingCtx(std::uint32_t p, std::uint32_t k, std::uint32_t n)
    : p_(p), k_(k), n_(n), pk_(0), codec_(1, 0) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::uint64_t size = 0;
  try {
    pk_ = checked_pow(p, k);
    size = checked_pow(pk_, n);
  } catch (const std::overflow_error&) {
    size = kMaxSize + 1;
  }
  if (size > kMaxSize) {
    throw std::invalid_argument("p^(kn) exceeds the index range for (p,k,n) = (" + std::to_string(p) + "," +
                                std::to_string(k) + "," + std::to_string(n) + ")");
  }
  codec_ = IndexCodec(pk_, n);
}

std::uint64_t RingCtx::pow_p(std::uint32_t j) const {
  if (j > k_) throw std::invalid_argument("scale exceeds k");
  return checked_pow(p_, j);
}

Point RingCtx::point(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("point index out of range");
  return Point{codec_.decode(index), index};
}

Point RingCtx::point(std::vector<std::uint64_t> coords) const {
  if (coords.size() != n_) throw std::invalid_argument("point has wrong dimension");
  for (auto& c : coords) c %= pk_;
  const std::uint64_t index = codec_.encode(coords);
  return Point{std::move(coords), index};
}

std::uint64_t RingCtx::reduce(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(pk_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t RingCtx::mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, pk_); }

std::uint64_t RingCtx::add_index(std::uint64_t x, std::uint64_t y) const {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    out += ((x % pk_ + y % pk_) % pk_) * place;
    x /= pk_;
    y /= pk_;
    place *= pk_;
  }
  return out;
}

std::vector<std::uint32_t> digits(std::uint64_t x, const RingCtx& ctx) {
  std::vector<std::uint32_t> d(ctx.k());
  x %= ctx.pk();
  for (auto& digit : d) {
    digit = static_cast<std::uint32_t>(x % ctx.p());
    x /= ctx.p();
  }
  return d;
}

std::uint64_t from_digits(std::span<const std::uint32_t> d, std::uint32_t p) {
  std::uint64_t x = 0;
  for (std::size_t j = d.size(); j-- > 0;) x = x * p + d[j];
  return x;
}

std::uint32_t valuation(std::uint64_t a, const RingCtx& ctx) {
  a %= ctx.pk();
  if (a == 0) return ctx.k();
  std::uint32_t j = 0;
  while (a % ctx.p() == 0) {
    a /= ctx.p();
    ++j;
  }
  return j;
}

bool is_unit(std::uint64_t a, const RingCtx& ctx) { return a % ctx.p() != 0; }

Point project(const Point& x, std::uint32_t scale, const RingCtx& ctx) {
  const std::uint64_t m = ctx.pow_p(scale);
  Point out;
  out.coords.reserve(x.coords.size());
  for (auto c : x.coords) out.coords.push_back(c % m);
  out.index = IndexCodec(m, static_cast<std::uint32_t>(x.coords.size())).encode(out.coords);
  return out;
}

std::uint64_t inner(std::span<const std::uint64_t> x, std::span<const std::uint64_t> y, const RingCtx& ctx) {
  if (x.size() != y.size()) throw std::invalid_argument("inner product of points with different dimensions");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = ctx.add(acc, ctx.mul(x[i], y[i]));
  return acc;
}

std::uint64_t inner(const Point& x, const Point& y, const RingCtx& ctx) { return inner(x.coords, y.coords, ctx); }

}  // namespace hyperrank
