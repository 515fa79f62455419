#include "hyperrank/hyperplane.hpp"

#include <chrono>
#include <stdexcept>

#include "hyperrank/incidence.hpp"

namespace hyperrank {

namespace {

// table[l][v] = phi_l(v) for l, v in [0, p^k).
std::vector<std::vector<std::uint8_t>> phi_values(const RingCtx& ctx) {
  const std::uint64_t pk = ctx.pk();
  std::vector<std::vector<std::uint8_t>> t(pk, std::vector<std::uint8_t>(pk));
  for (std::uint64_t l = 0; l < pk; ++l) {
    for (std::uint64_t v = 0; v < pk; ++v) t[l][v] = static_cast<std::uint8_t>(binom_mod_p(v, l, ctx.p()));
  }
  return t;
}

std::uint64_t total(std::span<const std::uint64_t> v) {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

std::uint32_t pow_mod(std::uint64_t base, std::uint32_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  for (std::uint32_t i = 0; i < e; ++i) r = r * base % p;
  return static_cast<std::uint32_t>(r);
}

// Rows x^e for every exponent vector e with |e| in [lo, hi], e_i < p.
MatGFp monomial_rows(const RingCtx& ctx, std::uint32_t lo, std::uint32_t hi) {
  const std::uint32_t p = ctx.p();
  const IndexCodec exps(p, ctx.n());
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::uint64_t> e(ctx.n());
  std::vector<std::uint64_t> x(ctx.n());
  for (std::uint64_t ei = 0; ei < exps.size(); ++ei) {
    exps.decode(ei, e);
    const std::uint64_t deg = total(e);
    if (deg < lo || deg > hi) continue;
    std::vector<std::uint8_t> row(ctx.size());
    for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) {
      ctx.codec().decode(xi, x);
      std::uint64_t v = 1;
      for (std::uint32_t i = 0; i < ctx.n(); ++i) v = v * pow_mod(x[i], static_cast<std::uint32_t>(e[i]), p) % p;
      row[xi] = static_cast<std::uint8_t>(v);
    }
    rows.push_back(std::move(row));
  }
  return MatGFp::from_rows(p, rows);
}

bool same_span(const MatGFp& a, const MatGFp& b) { return RowSpace(a).contains_rows(b) && RowSpace(b).contains_rows(a); }

}  // namespace

HyperSpanBasis span_basis(const RingCtx& ctx, std::uint64_t budget) {
  const std::uint64_t pk = ctx.pk();
  require_budget(saturating_product(saturating_product(direction_count(ctx), pk), ctx.size()), budget,
                 "hyperplane spanning set");
  const auto dirs = directions(ctx);
  const auto phi = phi_values(ctx);
  MatGFp rows(ctx.p(), dirs.size() * pk, ctx.size());
  std::vector<std::uint64_t> level(ctx.size());
  std::vector<std::uint64_t> x(ctx.n());
  for (std::size_t bi = 0; bi < dirs.size(); ++bi) {
    for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) {
      ctx.codec().decode(xi, x);
      level[xi] = inner(x, dirs[bi].rep.coords, ctx);
    }
    for (std::uint64_t l = 0; l < pk; ++l) {
      const std::size_t r = bi * pk + l;
      for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) {
        if (const auto v = phi[l][level[xi]]; v != 0) rows.set(r, xi, v);
      }
    }
  }
  return HyperSpanBasis{ctx, "phi", std::move(rows)};
}

HyperSpanBasis indicator_basis(const RingCtx& ctx, std::uint64_t budget) {
  return HyperSpanBasis{ctx, "indicator", build_incidence(IncidenceKind::AstarLiteral, ctx, budget)};
}

std::uint64_t hyperspan_dim(const RingCtx& ctx, std::uint64_t budget) { return rank(span_basis(ctx, budget).rows); }

std::optional<std::vector<std::uint8_t>> is_hyperplane_function(const FnTable& f, const HyperSpanBasis& basis) {
  if (!(f.ctx() == basis.ctx)) throw std::invalid_argument("function and spanning set use different contexts");
  return in_span(basis.rows, f.values());
}

std::optional<std::vector<std::uint8_t>> is_hyperplane_function(const FnTable& f, std::uint64_t budget) {
  return is_hyperplane_function(f, span_basis(f.ctx(), budget));
}

BFactorization build_factorization(const RingCtx& ctx) {
  const std::uint32_t n = ctx.n();
  if (n < 2) throw std::invalid_argument("the factorization needs n >= 2");
  if (ctx.size() > kFactorizationMaxPoints) {
    throw BudgetExceeded("the factorization is built only for p^(kn) <= " + std::to_string(kFactorizationMaxPoints));
  }
  const std::uint32_t p = ctx.p();
  const std::uint64_t pk = ctx.pk();
  const std::uint64_t size = ctx.size();
  const RingCtx sub = ctx.with_dim(n - 1);
  const std::uint64_t sub_size = sub.size();
  const auto phi = phi_values(ctx);

  std::vector<std::uint64_t> xs(n);
  std::vector<std::uint64_t> as(n - 1);

  MatGFp H(p, size, size);
  for (std::uint64_t ia = 0; ia < sub_size; ++ia) {
    sub.codec().decode(ia, as);
    for (std::uint64_t xi = 0; xi < size; ++xi) {
      ctx.codec().decode(xi, xs);
      std::uint64_t s = xs[n - 1];
      for (std::uint32_t j = 0; j + 1 < n; ++j) s += as[j] * xs[j];
      s %= pk;
      for (std::uint64_t m = 0; m < pk; ++m) {
        if (const auto v = phi[m][s]; v != 0) H.set(m + pk * ia, xi, v);
      }
    }
  }

  std::vector<std::uint64_t> al(n - 1);
  MatGFp Psi(p, size, size);
  for (std::uint64_t ia = 0; ia < sub_size; ++ia) {
    sub.codec().decode(ia, as);
    for (std::uint64_t ial = 0; ial < sub_size; ++ial) {
      sub.codec().decode(ial, al);
      std::uint32_t v = 1;
      for (std::uint32_t j = 0; j + 1 < n && v != 0; ++j) v = v * phi[al[j]][as[j]] % p;
      if (v == 0) continue;
      for (std::uint64_t m = 0; m < pk; ++m) Psi.set(m + pk * ia, m + pk * ial, v);
    }
  }

  std::vector<std::uint64_t> be(n);
  MatGFp Phi(p, size, size);
  for (std::uint64_t ib = 0; ib < size; ++ib) {
    ctx.codec().decode(ib, be);
    for (std::uint64_t xi = 0; xi < size; ++xi) {
      ctx.codec().decode(xi, xs);
      std::uint32_t v = 1;
      for (std::uint32_t i = 0; i < n && v != 0; ++i) v = v * phi[be[i]][xs[i]] % p;
      if (v != 0) Phi.set(ib, xi, v);
    }
  }

  // coeff[l][alpha + p^k beta]: phi_l(ax) = sum c phi_alpha(a) phi_beta(x).
  const RingCtx line = ctx.with_dim(1);
  std::vector<std::vector<std::uint8_t>> coeff(pk);
  for (std::uint64_t l = 0; l < pk; ++l) {
    const auto c = product_coeff_tensor(l, line);
    coeff[l].assign(c.coeffs().begin(), c.coeffs().end());
  }

  // phi_m(<a~, x~> + x_n) = sum over l_1 + .. + l_{n-1} + beta_n = m of
  // prod_j phi_{l_j}(a_j x_j) * phi_{beta_n}(x_n); the inner sum over l~ is a
  // convolution of the per-coordinate coefficient vectors.
  std::vector<std::uint64_t> bt(n - 1);
  std::vector<std::uint32_t> conv;
  std::vector<std::uint32_t> next;
  MatGFp B(p, size, size);
  for (std::uint64_t ial = 0; ial < sub_size; ++ial) {
    sub.codec().decode(ial, al);
    for (std::uint64_t ibt = 0; ibt < sub_size; ++ibt) {
      sub.codec().decode(ibt, bt);
      conv.assign(1, 1);
      for (std::uint32_t j = 0; j + 1 < n; ++j) {
        next.assign(conv.size() + pk - 1, 0);
        const std::uint64_t cell = al[j] + pk * bt[j];
        for (std::size_t s = 0; s < conv.size(); ++s) {
          if (conv[s] == 0) continue;
          for (std::uint64_t l = 0; l < pk; ++l) next[s + l] = (next[s + l] + conv[s] * coeff[l][cell]) % p;
        }
        conv.swap(next);
      }
      for (std::uint64_t m = 0; m < pk; ++m) {
        for (std::uint64_t bn = 0; bn <= m; ++bn) {
          const std::uint64_t s = m - bn;
          if (s < conv.size() && conv[s] != 0) B.set(m + pk * ial, ibt + sub_size * bn, conv[s]);
        }
      }
    }
  }
  return BFactorization{ctx, std::move(H), std::move(Psi), std::move(B), std::move(Phi)};
}

FactorizationReport verify_factorization(const RingCtx& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const BFactorization f = build_factorization(ctx);
  FactorizationReport rep(ctx);
  const std::uint32_t n = ctx.n();
  const std::uint64_t pk = ctx.pk();
  const RingCtx sub = ctx.with_dim(n - 1);
  rep.dim = ctx.size();
  rep.product_matches = multiply(multiply(f.Psi, f.B), f.Phi) == f.H;
  rep.rank_H = rank(f.H);
  rep.rank_B = rank(f.B);
  rep.rank_Psi = rank(f.Psi);
  try {
    rep.dim_H = hyperspan_dim(ctx);
  } catch (const BudgetExceeded&) {
  }

  const std::uint64_t slack = 2 * std::uint64_t{n - 1} * (ctx.p() - 1);
  std::vector<std::uint64_t> al(n - 1);
  std::vector<std::uint64_t> be(n);
  for (std::size_t r = 0; r < f.B.rows(); ++r) {
    const std::uint64_t m = r % pk;
    sub.codec().decode(r / pk, al);
    const std::uint64_t a_total = total(al);
    for (std::size_t c = 0; c < f.B.cols(); ++c) {
      const auto v = f.B.get(r, c);
      if (v == 0) continue;
      ctx.codec().decode(c, be);
      if (a_total + total(be) > m + slack) rep.zero_pattern_violations.push_back({m, al, be, v});
    }
  }

  rep.checks.push_back(check_holds("product_equals_H", rep.product_matches));
  rep.checks.push_back(check_eq("rank_H_eq_rank_B", rep.rank_H, rep.rank_B));
  rep.checks.push_back(check_eq("Psi_nonsingular", rep.rank_Psi, rep.dim));
  rep.checks.push_back(check_eq("Phi_nonsingular", rank(f.Phi), rep.dim));
  if (rep.dim_H) rep.checks.push_back(check_le("dim_H_le_n_rank_H", *rep.dim_H, std::uint64_t{n} * rep.rank_H));
  rep.checks.push_back(check_holds("B_zero_pattern", rep.zero_pattern_violations.empty(),
                                   std::to_string(rep.zero_pattern_violations.size()) + " violations"));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

TheoremBounds theorem_bounds(const RingCtx& ctx) {
  const std::uint64_t n = ctx.n();
  const std::uint64_t pk = ctx.pk();
  const std::uint64_t inner_top = pk / 2 + (n - 1) * (ctx.p() - 1) + n;
  const std::uint64_t c = binomial(inner_top, n);
  TheoremBounds b{};
  b.trivial_bound = binomial(pk - 1 + n, n);
  if (c > ~std::uint64_t{0} / (2 * n)) throw std::overflow_error("bound value overflows 64 bits");
  b.fan_bound = 2 * n * c;
  b.ubn_bound = 2 * c;
  return b;
}

std::vector<Check> bound_checks(const TheoremBounds& bounds, std::optional<std::uint64_t> dim_H,
                                std::optional<std::uint64_t> rank_B) {
  std::vector<Check> out;
  if (dim_H) {
    out.push_back(check_le("dim_H_le_trivial_bound", *dim_H, bounds.trivial_bound));
    out.push_back(check_le("dim_H_le_fan_bound", *dim_H, bounds.fan_bound));
  }
  if (rank_B) out.push_back(check_le("rank_B_le_ubn_bound", *rank_B, bounds.ubn_bound));
  return out;
}

K1SpanResult verify_k1_spans(std::uint32_t p, std::uint32_t n, std::uint32_t d) {
  if (d >= p) throw std::invalid_argument("the span identities need d <= p - 1");
  const RingCtx ctx(p, 1, n);
  if (ctx.size() > 4096) throw BudgetExceeded("span identities are checked only for p^n <= 4096");
  const auto dirs = directions(ctx);

  std::vector<std::uint64_t> x(n);
  std::vector<std::uint64_t> level(ctx.size());
  std::vector<std::vector<std::uint8_t>> homo;
  std::vector<std::vector<std::uint8_t>> affine;
  for (const auto& b : dirs) {
    for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) {
      ctx.codec().decode(xi, x);
      level[xi] = inner(x, b.rep.coords, ctx);
    }
    std::vector<std::uint8_t> row(ctx.size());
    for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) row[xi] = static_cast<std::uint8_t>(pow_mod(level[xi], d, p));
    homo.push_back(row);
    // <x - a, b> = <x, b> - c with c = <a, b>, so one row per c covers every a.
    for (std::uint64_t c = 0; c < p; ++c) {
      for (std::uint64_t xi = 0; xi < ctx.size(); ++xi) {
        row[xi] = static_cast<std::uint8_t>(pow_mod(level[xi] + p - c, d, p));
      }
      affine.push_back(row);
    }
  }

  K1SpanResult res;
  res.homogeneous = same_span(MatGFp::from_rows(p, homo), monomial_rows(ctx, d, d));
  res.affine = same_span(MatGFp::from_rows(p, affine), monomial_rows(ctx, 0, d));
  if (n >= 2) {
    bool ok = true;
    for (std::uint64_t xi = 0; xi < ctx.size() && ok; ++xi) {
      ctx.codec().decode(xi, x);
      std::uint64_t count = x[0] == 0 ? 1 : 0;
      for (std::uint64_t c = 0; c < p; ++c) count += (x[1] == c * x[0] % p) ? 1 : 0;
      ok = count % p == 1;
    }
    res.ones_identity = ok;
  }
  return res;
}

}  // namespace hyperrank
