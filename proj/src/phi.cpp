#include "hyperrank/phi.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

#include "hyperrank/errors.hpp"
#include "hyperrank/rng.hpp"

namespace hyperrank {

namespace {

void require_small_field(const RingCtx& ctx) {
  if (ctx.p() >= 256) throw std::invalid_argument("function tables require p < 256");
}

// C(b, a) mod p for digits a, b < p, laid out [a * p + b].
std::vector<std::uint8_t> digit_block(std::uint32_t p) {
  std::vector<std::uint8_t> block(static_cast<std::size_t>(p) * p);
  for (std::uint32_t a = 0; a < p; ++a) {
    for (std::uint32_t b = 0; b < p; ++b) block[a * p + b] = static_cast<std::uint8_t>(binom_mod_p(b, a, p));
  }
  return block;
}

// Applies the digit block (forward) or its inverse along every base-p digit
// axis of a table over (p, k, n). The univariate matrix Phi is the k-fold
// Kronecker power of the block by Lucas, and phi_alpha is a tensor product,
// so this is the full n-variate transform.
void digit_transform(std::vector<std::uint8_t>& data, const RingCtx& ctx, bool inverse) {
  const std::uint32_t p = ctx.p();
  const auto block = digit_block(p);
  const std::uint64_t axes = static_cast<std::uint64_t>(ctx.k()) * ctx.n();
  std::vector<std::uint32_t> fiber(p);
  std::uint64_t stride = 1;
  for (std::uint64_t t = 0; t < axes; ++t, stride *= p) {
    const std::uint64_t span_len = stride * p;
    for (std::uint64_t hi = 0; hi < data.size(); hi += span_len) {
      for (std::uint64_t lo = 0; lo < stride; ++lo) {
        const std::uint64_t base = hi + lo;
        for (std::uint32_t b = 0; b < p; ++b) fiber[b] = data[base + b * stride];
        if (inverse) {
          // c_b = g(b) - sum_{a<b} c_a C(b, a); unit diagonal.
          for (std::uint32_t b = 0; b < p; ++b) {
            std::uint32_t acc = fiber[b];
            for (std::uint32_t a = 0; a < b; ++a) acc += (p - fiber[a]) * block[a * p + b];
            fiber[b] = acc % p;
          }
        } else {
          for (std::uint32_t b = p; b-- > 0;) {
            std::uint32_t acc = 0;
            for (std::uint32_t a = 0; a <= b; ++a) acc += fiber[a] * block[a * p + b];
            fiber[b] = acc % p;
          }
        }
        for (std::uint32_t b = 0; b < p; ++b) data[base + b * stride] = static_cast<std::uint8_t>(fiber[b]);
      }
    }
  }
}

std::int64_t degree_of(const RingCtx& ctx, std::span<const std::uint8_t> coeffs) {
  std::int64_t best = kNegInfDegree;
  std::vector<std::uint64_t> coords(ctx.n());
  for (std::uint64_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    ctx.codec().decode(i, coords);
    std::int64_t total = 0;
    for (auto c : coords) total += static_cast<std::int64_t>(c);
    best = std::max(best, total);
  }
  return best;
}

std::vector<std::uint8_t> difference_values(std::span<const std::uint8_t> f, const RingCtx& ctx,
                                            std::uint64_t step) {
  const std::uint32_t p = ctx.p();
  std::vector<std::uint8_t> out(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    out[x] = static_cast<std::uint8_t>((f[ctx.add_index(x, step)] + p - f[x]) % p);
  }
  return out;
}

bool all_zero(std::span<const std::uint8_t> v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

}  // namespace

FnTable::FnTable(const RingCtx& ctx) : ctx_(ctx) {
  require_small_field(ctx);
  values_.assign(ctx.size(), 0);
}

FnTable::FnTable(const RingCtx& ctx, std::vector<std::uint8_t> values) : ctx_(ctx), values_(std::move(values)) {
  require_small_field(ctx);
  if (values_.size() != ctx.size()) {
    throw std::invalid_argument("function table has " + std::to_string(values_.size()) + " entries, expected " +
                                std::to_string(ctx.size()));
  }
  for (auto v : values_) {
    if (v >= ctx.p()) throw std::invalid_argument("function table entry " + std::to_string(v) + " is not below p");
  }
}

bool FnTable::is_zero() const { return all_zero(values_); }

FnTable FnTable::operator+(const FnTable& other) const {
  if (!(ctx_ == other.ctx_)) throw std::invalid_argument("tables over different contexts");
  auto out = values_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>((out[i] + other.values_[i]) % ctx_.p());
  return FnTable(ctx_, std::move(out));
}

FnTable FnTable::operator-(const FnTable& other) const {
  if (!(ctx_ == other.ctx_)) throw std::invalid_argument("tables over different contexts");
  auto out = values_;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((out[i] + ctx_.p() - other.values_[i]) % ctx_.p());
  }
  return FnTable(ctx_, std::move(out));
}

FnTable FnTable::operator*(const FnTable& other) const {
  if (!(ctx_ == other.ctx_)) throw std::invalid_argument("tables over different contexts");
  auto out = values_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>(out[i] * other.values_[i] % ctx_.p());
  return FnTable(ctx_, std::move(out));
}

FnTable FnTable::scaled(std::uint32_t c) const {
  auto out = values_;
  for (auto& v : out) v = static_cast<std::uint8_t>(v * (c % ctx_.p()) % ctx_.p());
  return FnTable(ctx_, std::move(out));
}

MultiIndex MultiIndex::make(const RingCtx& ctx, std::vector<std::uint64_t> alpha) {
  if (alpha.size() != ctx.n()) throw std::invalid_argument("multi-index has wrong length");
  MultiIndex m;
  for (auto a : alpha) {
    if (a >= ctx.pk()) throw std::invalid_argument("multi-index entry " + std::to_string(a) + " is not below p^k");
    m.total += a;
  }
  m.alpha = std::move(alpha);
  return m;
}

MultiIndex MultiIndex::from_index(const RingCtx& ctx, std::uint64_t index) {
  return make(ctx, ctx.codec().decode(index));
}

PhiCoeffs::PhiCoeffs(const RingCtx& ctx, std::vector<std::uint8_t> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)), degree_(kNegInfDegree) {
  if (coeffs_.size() != ctx.size()) throw std::invalid_argument("coefficient table has wrong size");
  degree_ = degree_of(ctx_, coeffs_);
}

std::uint8_t PhiCoeffs::coefficient(const MultiIndex& alpha) const {
  return coeffs_[ctx_.codec().encode(alpha.alpha)];
}

std::uint32_t phi_univariate(std::int64_t m, std::uint64_t x, const RingCtx& ctx) {
  if (m < 0 || static_cast<std::uint64_t>(m) >= ctx.pk()) return 0;
  return binom_mod_p(x % ctx.pk(), static_cast<std::uint64_t>(m), ctx.p());
}

std::uint32_t phi_eval(const MultiIndex& alpha, const Point& x, const RingCtx& ctx) {
  if (alpha.alpha.size() != x.coords.size()) throw std::invalid_argument("multi-index and point differ in dimension");
  std::uint32_t v = 1;
  for (std::size_t i = 0; i < x.coords.size() && v != 0; ++i) {
    v = v * phi_univariate(static_cast<std::int64_t>(alpha.alpha[i]), x.coords[i], ctx) % ctx.p();
  }
  return v;
}

FnTable phi_table(const RingCtx& ctx, const MultiIndex& alpha) {
  std::vector<std::uint8_t> coeffs(ctx.size(), 0);
  coeffs[ctx.codec().encode(alpha.alpha)] = 1;
  return synthesize(PhiCoeffs(ctx, std::move(coeffs)));
}

PhiCoeffs expand(const FnTable& f) {
  std::vector<std::uint8_t> data(f.values().begin(), f.values().end());
  digit_transform(data, f.ctx(), true);
  return PhiCoeffs(f.ctx(), std::move(data));
}

PhiCoeffs expand_via_derivatives(const FnTable& f) {
  const RingCtx& ctx = f.ctx();
  const std::uint64_t pk = ctx.pk();
  const std::uint32_t p = ctx.p();
  std::vector<std::uint8_t> data(f.values().begin(), f.values().end());
  std::vector<std::uint32_t> work(pk);
  std::uint64_t stride = 1;
  for (std::uint32_t axis = 0; axis < ctx.n(); ++axis, stride *= pk) {
    for (std::uint64_t hi = 0; hi < data.size(); hi += stride * pk) {
      for (std::uint64_t lo = 0; lo < stride; ++lo) {
        const std::uint64_t base = hi + lo;
        for (std::uint64_t x = 0; x < pk; ++x) work[x] = data[base + x * stride];
        for (std::uint64_t l = 0; l < pk; ++l) {
          data[base + l * stride] = static_cast<std::uint8_t>(work[0]);  // D^l g(0)
          const std::uint32_t first = work[0];
          for (std::uint64_t x = 0; x + 1 < pk; ++x) work[x] = (work[x + 1] + p - work[x]) % p;
          work[pk - 1] = (first + p - work[pk - 1]) % p;
        }
      }
    }
  }
  return PhiCoeffs(ctx, std::move(data));
}

FnTable synthesize(const PhiCoeffs& c) {
  std::vector<std::uint8_t> data(c.coeffs().begin(), c.coeffs().end());
  digit_transform(data, c.ctx(), false);
  return FnTable(c.ctx(), std::move(data));
}

std::int64_t degree(const FnTable& f) { return expand(f).degree(); }

bool equal_up_to_degree(const FnTable& f, const FnTable& g, std::int64_t l) { return degree(f - g) <= l; }

FnTable difference(const FnTable& f, const Point& r) {
  if (r.coords.size() != f.ctx().n()) throw std::invalid_argument("step has wrong dimension");
  return FnTable(f.ctx(), difference_values(f.values(), f.ctx(), f.ctx().point(r.coords).index));
}

FnTable normalized_difference(const FnTable& f, std::uint64_t c) {
  const RingCtx& ctx = f.ctx();
  if (ctx.n() != 1) throw std::invalid_argument("normalized difference is defined for n = 1");
  if (!is_unit(c, ctx)) throw std::invalid_argument("normalized difference needs a unit step, got " + std::to_string(c));
  const auto inv = static_cast<std::uint32_t>(inverse_mod(c % ctx.p(), ctx.p()));
  return difference(f, ctx.point({c})).scaled(inv);
}

FnTable iterated_difference(const FnTable& f, std::span<const Point> steps) {
  FnTable g = f;
  for (const auto& r : steps) g = difference(g, r);
  return g;
}

FnTable iterated_difference_box(const FnTable& f, std::span<const Point> steps) {
  const RingCtx& ctx = f.ctx();
  const std::uint32_t p = ctx.p();
  const std::size_t d = steps.size();
  if (d >= 63) throw std::invalid_argument("too many steps for a box sum");
  std::vector<std::uint64_t> step_index;
  for (const auto& r : steps) step_index.push_back(ctx.point(r.coords).index);
  std::vector<std::uint8_t> out(ctx.size());
  for (std::uint64_t x = 0; x < ctx.size(); ++x) {
    std::uint32_t acc = 0;
    for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << d); ++eps) {
      std::uint64_t vertex = x;
      std::size_t ones = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if ((eps >> j) & 1U) {
          vertex = ctx.add_index(vertex, step_index[j]);
          ++ones;
        }
      }
      const std::uint32_t v = f[vertex];
      acc += ((ones + d) % 2 == 0) ? v : (p - v) % p;
    }
    out[x] = static_cast<std::uint8_t>(acc % p);
  }
  return FnTable(ctx, std::move(out));
}

bool is_d_null(const FnTable& f, std::uint64_t d, const NullCheck& mode) {
  if (d == 0) throw std::invalid_argument("d-null needs d >= 1");
  const RingCtx& ctx = f.ctx();
  const std::uint64_t points = ctx.size();

  if (mode.mode == NullCheck::Mode::Sampled) {
    for (std::uint64_t i = 0; i < mode.count; ++i) {
      auto rng = Xoshiro256::for_item(mode.seed, i);
      std::vector<std::uint8_t> g(f.values().begin(), f.values().end());
      for (std::uint64_t j = 0; j < d && !all_zero(g); ++j) g = difference_values(g, ctx, rng.below(points));
      if (!all_zero(g)) return false;
    }
    return true;
  }

  std::uint64_t boxes = 0;
  try {
    boxes = binomial(points + d - 1, d);
    if (boxes > mode.budget / points) boxes = mode.budget + 1;
    else boxes *= points;
  } catch (const std::overflow_error&) {
    boxes = mode.budget + 1;
  }
  if (boxes > mode.budget) {
    throw BudgetExceeded("exhaustive d-null check needs more than " + std::to_string(mode.budget) +
                         " box evaluations; use sampled mode");
  }

  // Depth-first over non-decreasing step sequences; a zero table stays zero.
  std::function<bool(const std::vector<std::uint8_t>&, std::uint64_t, std::uint64_t)> walk =
      [&](const std::vector<std::uint8_t>& g, std::uint64_t depth, std::uint64_t first) -> bool {
    if (all_zero(g)) return true;
    if (depth == d) return false;
    for (std::uint64_t s = first; s < points; ++s) {
      if (!walk(difference_values(g, ctx, s), depth + 1, s)) return false;
    }
    return true;
  };
  return walk(std::vector<std::uint8_t>(f.values().begin(), f.values().end()), 0, 0);
}

std::uint64_t omega_dim(const RingCtx& ctx, std::int64_t m) {
  if (m < 0) return 0;
  if (static_cast<std::uint64_t>(m) >= ctx.pk()) {
    throw std::domain_error("omega_dim: the formula C(m+n, n) holds only for m <= p^k - 1");
  }
  return binomial(static_cast<std::uint64_t>(m) + ctx.n(), ctx.n());
}

PhiCoeffs product_coeff_tensor(std::uint64_t m, const RingCtx& ctx) {
  if (ctx.n() != 1) throw std::invalid_argument("product_coeff_tensor expects a univariate context");
  if (m >= ctx.pk()) throw std::invalid_argument("product_coeff_tensor: m must be below p^k");
  const RingCtx plane = ctx.with_dim(2);
  const std::uint64_t pk = ctx.pk();
  auto g = FnTable::tabulate(plane, [&](std::uint64_t idx) {
    return phi_univariate(static_cast<std::int64_t>(m), ctx.mul(idx % pk, idx / pk), ctx);
  });
  return expand(g);
}

std::vector<std::uint8_t> scale_coeffs(std::uint64_t m, std::uint64_t a, const RingCtx& ctx) {
  if (ctx.n() != 1) throw std::invalid_argument("scale_coeffs expects a univariate context");
  if (m >= ctx.pk()) throw std::invalid_argument("scale_coeffs: m must be below p^k");
  FnTable g = phi_table(ctx, MultiIndex::make(ctx, {m}));
  const Point step = ctx.point({a % ctx.pk()});
  std::vector<std::uint8_t> out;
  out.reserve(m + 1);
  for (std::uint64_t l = 0; l <= m; ++l) {
    out.push_back(g[0]);
    g = difference(g, step);
  }
  return out;
}

}  // namespace hyperrank
