#include <string>

#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/rng.hpp"
#include "hyperrank/suites.hpp"
#include "tally.hpp"

namespace hyperrank {

namespace {

using detail::Tally;

FnTable random_table(const RingCtx& ctx, Xoshiro256& rng) {
  return FnTable::tabulate(ctx, [&](std::uint64_t) { return rng.below(ctx.p()); });
}

// The table with values[i] = digit i of code in base p.
FnTable table_from_code(const RingCtx& ctx, std::uint64_t code) {
  return FnTable::tabulate(ctx, [&](std::uint64_t) {
    const auto v = code % ctx.p();
    code /= ctx.p();
    return v;
  });
}

std::string cell(std::initializer_list<std::uint64_t> v) {
  std::string s = "(";
  bool first = true;
  for (auto x : v) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ")";
}

FnTable univariate_phi(const RingCtx& line, std::uint64_t m) { return phi_table(line, MultiIndex::make(line, {m})); }

std::uint32_t pow_mod_p(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  for (std::uint64_t i = 0; i < e; ++i) r = r * (b % p) % p;
  return static_cast<std::uint32_t>(r);
}

// Iterates all values in [0, limit) when limit <= cap, else `samples` draws.
template <class F>
void cases(std::uint64_t limit, std::uint64_t cap, std::uint64_t samples, Xoshiro256& rng, F&& f) {
  if (limit <= cap) {
    for (std::uint64_t i = 0; i < limit; ++i) f(i);
  } else {
    for (std::uint64_t i = 0; i < samples; ++i) f(rng.below(limit));
  }
}

}  // namespace

std::vector<Check> phi_suite(const RingCtx& ctx, const SuiteOptions& opts) {
  std::vector<Check> out;
  const std::uint32_t p = ctx.p();
  const std::uint32_t k = ctx.k();
  const std::uint32_t n = ctx.n();
  const std::uint64_t pk = ctx.pk();
  const RingCtx line = ctx.with_dim(1);
  Xoshiro256 rng(opts.seed);

  {
    Tally t("lucas_matches_integer_binomial");
    const std::uint64_t top = std::min<std::uint64_t>(pk, 64);
    for (std::uint64_t x = 0; x < top; ++x) {
      for (std::uint64_t m = 0; m < top; ++m) {
        t.record(binom_mod_p(x, m, p) == binomial(x, m) % p, [&] { return cell({x, m}); });
      }
    }
    out.push_back(t.done());
  }
  {
    Tally t("digits_round_trip");
    cases(pk, 1 << 16, opts.samples, rng, [&](std::uint64_t x) {
      const auto d = digits(x, line);
      bool ok = from_digits(d, p) == x;
      for (auto v : d) ok = ok && v < p;
      t.record(ok, [&] { return cell({x}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("point_codec_round_trip");
    cases(ctx.size(), 1 << 16, opts.samples, rng, [&](std::uint64_t i) {
      const Point x = ctx.point(i);
      t.record(ctx.point(x.coords).index == i, [&] { return cell({i}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("projection_is_ring_homomorphism");
    const std::uint64_t pairs = pk * pk;
    cases(pairs, 256, opts.samples, rng, [&](std::uint64_t c) {
      const std::uint64_t x = c % pk;
      const std::uint64_t y = c / pk;
      for (std::uint32_t l = 0; l <= k; ++l) {
        const std::uint64_t m = line.pow_p(l);
        const bool ok = line.mul(x, y) % m == (x % m) * (y % m) % m && line.add(x, y) % m == (x % m + y % m) % m;
        t.record(ok, [&] { return cell({x, y, l}); });
      }
    });
    for (std::uint64_t s = 0; s < std::min<std::uint64_t>(opts.samples, 200); ++s) {
      const Point x = ctx.point(rng.below(ctx.size()));
      const Point y = ctx.point(rng.below(ctx.size()));
      const Point sum = ctx.point(ctx.add_index(x.index, y.index));
      for (std::uint32_t l = 0; l <= k; ++l) {
        const std::uint64_t m = ctx.pow_p(l);
        const Point px = project(x, l, ctx);
        const Point py = project(y, l, ctx);
        const Point ps = project(sum, l, ctx);
        bool ok = true;
        for (std::uint32_t i = 0; i < n; ++i) ok = ok && ps.coords[i] == (px.coords[i] + py.coords[i]) % m;
        t.record(ok, [&] { return cell({x.index, y.index, l}); });
      }
    }
    out.push_back(t.done());
  }
  {
    Tally zero("phi_vanishes_at_zero");
    Tally tri("phi_matrix_unit_upper_triangular");
    cases(pk, 4096, opts.samples, rng, [&](std::uint64_t m) {
      zero.record(phi_univariate(static_cast<std::int64_t>(m), 0, line) == (m == 0 ? 1U : 0U),
                  [&] { return cell({m}); });
      bool ok = phi_univariate(static_cast<std::int64_t>(m), m, line) == 1;
      for (std::uint64_t x = 0; x < m && ok; ++x) ok = phi_univariate(static_cast<std::int64_t>(m), x, line) == 0;
      tri.record(ok, [&] { return cell({m}); });
    });
    zero.record(phi_univariate(-1, 0, line) == 0 && phi_univariate(static_cast<std::int64_t>(pk), 0, line) == 0,
                [] { return std::string("out-of-range index"); });
    out.push_back(zero.done());
    out.push_back(tri.done());
  }
  {
    Tally t("vandermonde_identity");
    cases(pk * pk * pk, 27 * 27 * 27, opts.samples * 10, rng, [&](std::uint64_t c) {
      const std::uint64_t x = c % pk;
      const std::uint64_t y = (c / pk) % pk;
      const std::uint64_t m = c / (pk * pk);
      std::uint64_t rhs = 0;
      for (std::uint64_t i = 0; i <= m; ++i) {
        rhs += phi_univariate(static_cast<std::int64_t>(i), x, line) *
               phi_univariate(static_cast<std::int64_t>(m - i), y, line);
      }
      t.record(phi_univariate(static_cast<std::int64_t>(m), line.add(x, y), line) == rhs % p,
               [&] { return cell({m, x, y}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("scale_nesting");
    cases(pk * pk, 27 * 27, opts.samples, rng, [&](std::uint64_t c) {
      const std::uint64_t m = c % pk;
      const std::uint64_t x = c / pk;
      for (std::uint32_t j = 0; j <= k; ++j) {
        const std::uint64_t pj = line.pow_p(j);
        const std::uint64_t px = line.mul(pj, x);
        if (m % pj != 0) {
          t.record(phi_univariate(static_cast<std::int64_t>(m), px, line) == 0, [&] { return cell({m, x, j}); });
        }
        if (m * pj < pk) {
          t.record(phi_univariate(static_cast<std::int64_t>(m * pj), px, line) ==
                       phi_univariate(static_cast<std::int64_t>(m), x, line),
                   [&] { return cell({m, x, j}); });
        }
      }
    });
    out.push_back(t.done());
  }
  {
    Tally t("unit_step_derivative_lowers_index");
    const Point one = line.point({1});
    cases(pk, 1024, opts.samples, rng, [&](std::uint64_t m) {
      const FnTable d = difference(univariate_phi(line, m), one);
      const bool ok = m == 0 ? d.is_zero() : d == univariate_phi(line, m - 1);
      t.record(ok, [&] { return cell({m}); });
      if (m > 0) {
        t.record(normalized_difference(univariate_phi(line, m), 1) == univariate_phi(line, m - 1),
                 [&] { return cell({m}); });
      }
    });
    out.push_back(t.done());
  }
  {
    Tally t("difference_minus_scaled_lower_phi_degree_drop");
    cases(pk * pk, 64 * 64, opts.samples, rng, [&](std::uint64_t code) {
      const std::uint64_t c = code % pk;
      const std::uint64_t m = code / pk;
      if (m == 0) return;
      const FnTable lhs = difference(univariate_phi(line, m), line.point({c})) -
                          univariate_phi(line, m - 1).scaled(static_cast<std::uint32_t>(c % p));
      t.record(degree(lhs) <= static_cast<std::int64_t>(m) - 2, [&] { return cell({c, m}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("derivative_degree_null_equivalence");
    const std::uint64_t functions = checked_pow(p, std::min<std::uint64_t>(pk, 40));
    const bool all = pk <= 40 && functions <= 4096;
    const std::uint64_t count = all ? functions : opts.samples;
    const Point one = line.point({1});
    std::uint64_t null_skipped = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const FnTable f = all ? table_from_code(line, i) : random_table(line, rng);
      FnTable d = f;
      for (std::uint64_t m = 1; m <= pk; ++m) {
        d = difference(d, one);
        const bool by_derivative = d.is_zero();
        const bool by_degree = degree(f) <= static_cast<std::int64_t>(m) - 1;
        bool ok = by_derivative == by_degree;
        try {
          ok = ok && is_d_null(f, m) == by_degree;
        } catch (const BudgetExceeded&) {
          ++null_skipped;
        }
        t.record(ok, [&] { return "function " + std::to_string(i) + ", m = " + std::to_string(m); });
      }
    }
    if (null_skipped) t.skip("d-null leg over budget in " + std::to_string(null_skipped) + " cases");
    out.push_back(t.done());
  }
  {
    Tally t("expansion_paths_agree");
    for (std::uint64_t i = 0; i < 200; ++i) {
      const FnTable f = random_table(line, rng);
      const PhiCoeffs c = expand(f);
      t.record(c == expand_via_derivatives(f) && synthesize(c) == f,
               [&] { return "univariate sample " + std::to_string(i); });
    }
    if (n > 1 && ctx.size() <= (1U << 16)) {
      for (std::uint64_t i = 0; i < 200; ++i) {
        const FnTable f = random_table(ctx, rng);
        const PhiCoeffs c = expand(f);
        t.record(c == expand_via_derivatives(f) && synthesize(c) == f,
                 [&] { return "sample " + std::to_string(i); });
      }
    }
    out.push_back(t.done());
  }
  {
    Tally t("basis_functions_expand_to_unit_vectors");
    cases(ctx.size(), 1024, std::min<std::uint64_t>(opts.samples, 200), rng, [&](std::uint64_t a) {
      const MultiIndex alpha = MultiIndex::from_index(ctx, a);
      const FnTable f = phi_table(ctx, alpha);
      const PhiCoeffs c = expand(f);
      bool ok = c.degree() == static_cast<std::int64_t>(alpha.total);
      for (std::uint64_t j = 0; j < ctx.size() && ok; ++j) ok = c[j] == (j == a ? 1 : 0);
      const Point x = ctx.point(rng.below(ctx.size()));
      ok = ok && f.at(x) == phi_eval(alpha, x, ctx);
      t.record(ok, [&] { return cell({a}); });
    });
    out.push_back(t.done());
  }
  {
    Tally prefix("low_degree_iff_depends_on_low_digits");
    Tally single("single_digit_iff_coefficients_on_digit_multiples");
    if (pk <= 729) {
      const std::uint64_t functions = pk <= 16 ? checked_pow(p, pk) : ~std::uint64_t{0};
      const bool all = functions <= 65536;
      std::vector<FnTable> fs;
      if (all) {
        for (std::uint64_t i = 0; i < functions; ++i) fs.push_back(table_from_code(line, i));
      } else {
        for (std::uint64_t i = 0; i < opts.samples; ++i) fs.push_back(random_table(line, rng));
        for (std::uint32_t l = 0; l <= k; ++l) {
          const std::uint64_t m = line.pow_p(l);
          for (std::uint64_t i = 0; i < opts.samples / 4 + 1; ++i) {
            const FnTable g = random_table(line, rng);
            fs.push_back(FnTable::tabulate(line, [&](std::uint64_t x) { return g[x % m]; }));
            const std::uint32_t dl = std::min(l, k - 1);
            const std::uint64_t step = line.pow_p(dl);
            fs.push_back(FnTable::tabulate(line, [&](std::uint64_t x) { return g[(x / step) % p * step]; }));
          }
        }
      }
      for (std::size_t i = 0; i < fs.size(); ++i) {
        const FnTable& f = fs[i];
        const PhiCoeffs c = expand(f);
        for (std::uint32_t l = 0; l <= k; ++l) {
          const std::uint64_t m = line.pow_p(l);
          bool local = true;
          for (std::uint64_t x = 0; x < pk && local; ++x) local = f[x] == f[x % m];
          prefix.record(local == (c.degree() <= static_cast<std::int64_t>(m) - 1),
                        [&] { return "function " + std::to_string(i) + ", l = " + std::to_string(l); });
          if (l == k) continue;
          bool only = true;
          for (std::uint64_t x = 0; x < pk && only; ++x) only = f[x] == f[(x / m) % p * m];
          bool support = true;
          for (std::uint64_t a = 0; a < pk && support; ++a) support = c[a] == 0 || (a % m == 0 && a / m < p);
          single.record(only == support,
                        [&] { return "function " + std::to_string(i) + ", digit " + std::to_string(l); });
        }
      }
    } else {
      prefix.skip("p^k > 729");
      single.skip("p^k > 729");
    }
    out.push_back(prefix.done());
    out.push_back(single.done());
  }
  {
    Tally t("product_of_phis_leading_term");
    cases(pk * pk, 256 * 256, opts.samples, rng, [&](std::uint64_t code) {
      const std::uint64_t l = code % pk;
      const std::uint64_t m = code / pk;
      if (l + m >= pk) return;
      const FnTable lhs = univariate_phi(line, l) * univariate_phi(line, m) -
                          univariate_phi(line, l + m).scaled(binom_mod_p(l + m, l, p));
      t.record(degree(lhs) <= static_cast<std::int64_t>(l + m) - 1, [&] { return cell({l, m}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("unit_scaling_leading_term");
    cases(pk * pk, 256 * 256, opts.samples, rng, [&](std::uint64_t code) {
      const std::uint64_t b = code % pk;
      const std::uint64_t m = code / pk;
      if (!is_unit(b, line)) return;
      const FnTable scaled_arg = FnTable::tabulate(
          line, [&](std::uint64_t x) { return phi_univariate(static_cast<std::int64_t>(m), line.mul(b, x), line); });
      const FnTable lhs = scaled_arg - univariate_phi(line, m).scaled(pow_mod_p(b, m, p));
      t.record(degree(lhs) <= static_cast<std::int64_t>(m) - 1, [&] { return cell({b, m}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("scale_coefficients_reconstruct");
    cases(pk * pk, 32 * 32, opts.samples, rng, [&](std::uint64_t code) {
      const std::uint64_t a = code % pk;
      const std::uint64_t m = code / pk;
      const auto A = scale_coeffs(m, a, line);
      bool ok = A.size() == m + 1;
      for (std::uint64_t x = 0; x < pk && ok; ++x) {
        std::uint64_t rhs = 0;
        for (std::uint64_t l = 0; l <= m; ++l) rhs += A[l] * phi_univariate(static_cast<std::int64_t>(l), x, line);
        ok = phi_univariate(static_cast<std::int64_t>(m), line.mul(a, x), line) == rhs % p;
      }
      t.record(ok, [&] { return cell({a, m}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("d_null_iff_degree_below_d");
    std::uint64_t sampled = 0;
    NullCheck sampled_mode{NullCheck::Mode::Sampled, opts.seed, 64};
    auto verdict = [&](const FnTable& f, std::uint64_t d, bool expected) {
      try {
        return is_d_null(f, d) == expected;
      } catch (const BudgetExceeded&) {
        ++sampled;
        // A sampled check can only confirm nullity, never refute it.
        return !expected || is_d_null(f, d, sampled_mode);
      }
    };
    t.record(verdict(FnTable(ctx), 1, true), [] { return std::string("zero function"); });
    cases(ctx.size(), 256, 50, rng, [&](std::uint64_t a) {
      const MultiIndex alpha = MultiIndex::from_index(ctx, a);
      const FnTable f = phi_table(ctx, alpha);
      bool ok = verdict(f, alpha.total + 1, true);
      if (alpha.total >= 1) ok = ok && verdict(f, alpha.total, false);
      t.record(ok, [&] { return cell({a}); });
    });
    for (std::uint64_t i = 0; i < 20; ++i) {
      const FnTable f = random_table(ctx, rng);
      const std::int64_t deg = degree(f);
      if (deg < 0) continue;
      const auto d = static_cast<std::uint64_t>(deg);
      bool ok = verdict(f, d + 1, true);
      if (d >= 1) ok = ok && verdict(f, d, false);
      t.record(ok, [&] { return "random table " + std::to_string(i); });
    }
    if (sampled) t.skip(std::to_string(sampled) + " verdicts fell back to sampled mode");
    out.push_back(t.done());
  }
  {
    Tally t("low_degree_polynomials_are_phi_polynomials");
    if (ctx.size() <= 4096) {
      const IndexCodec exps(p, n);
      for (std::uint32_t d = 0; d + 1 <= p; ++d) {
        std::vector<std::vector<std::uint8_t>> rows;
        std::vector<std::uint64_t> e(n);
        for (std::uint64_t ei = 0; ei < exps.size(); ++ei) {
          exps.decode(ei, e);
          std::uint64_t total = 0;
          for (auto v : e) total += v;
          if (total > d) continue;
          const FnTable mono = FnTable::tabulate(ctx, [&](std::uint64_t xi) {
            const auto x = ctx.codec().decode(xi);
            std::uint64_t v = 1;
            for (std::uint32_t i = 0; i < n; ++i) v = v * pow_mod_p(x[i], e[i], p) % p;
            return v;
          });
          t.record(degree(mono) <= static_cast<std::int64_t>(d), [&] { return "monomial " + std::to_string(ei); });
          rows.emplace_back(mono.values().begin(), mono.values().end());
        }
        const auto expected = omega_dim(ctx, d);
        t.record(rows.size() == expected && rank(MatGFp::from_rows(p, rows)) == expected,
                 [&] { return "monomial count or rank at d = " + std::to_string(d); });
      }
    } else {
      t.skip("p^(kn) > 4096");
    }
    out.push_back(t.done());
  }
  {
    Tally t("omega_dimension_counts_multi_indices");
    if (ctx.size() <= (1U << 16)) {
      std::vector<std::uint64_t> by_total(n * (pk - 1) + 1, 0);
      for (std::uint64_t a = 0; a < ctx.size(); ++a) ++by_total[MultiIndex::from_index(ctx, a).total];
      std::uint64_t acc = 0;
      for (std::uint64_t m = 0; m < pk; ++m) {
        acc += by_total[m];
        t.record(omega_dim(ctx, static_cast<std::int64_t>(m)) == acc, [&] { return cell({m}); });
      }
    } else {
      t.skip("p^(kn) > 65536");
    }
    out.push_back(t.done());
  }
  {
    Tally t("product_coefficients_vanish_above_m_plus_2p_minus_2");
    cases(pk, 64, std::min<std::uint64_t>(opts.samples, 16), rng, [&](std::uint64_t m) {
      const PhiCoeffs c = product_coeff_tensor(m, line);
      bool ok = true;
      for (std::uint64_t a = 0; a < pk * pk && ok; ++a) {
        const std::uint64_t total = a % pk + a / pk;
        ok = c[a] == 0 || total <= m + 2 * (p - 1);
      }
      t.record(ok, [&] { return cell({m}); });
    });
    out.push_back(t.done());
  }
  {
    Tally t("digit_product_degree_loss");
    if (k >= 2 && pk <= 64) {
      const RingCtx plane = ctx.with_dim(2);
      bool saw_equality = false;
      for (std::uint32_t i = 1; i < k; ++i) {
        for (std::uint32_t j = 1; j < k; ++j) {
          const std::uint64_t pi = line.pow_p(i);
          const std::uint64_t pj = line.pow_p(j);
          for (std::uint64_t m = 1; m < pk; ++m) {
            const FnTable g = FnTable::tabulate(plane, [&](std::uint64_t idx) {
              const std::uint64_t xd = (idx % pk) / pi % p;
              const std::uint64_t yd = (idx / pk) / pj % p;
              return binom_mod_p(xd * yd, m, p);
            });
            const std::int64_t deg = degree(g);
            const auto bound = static_cast<std::int64_t>(m * pi * pj);
            const bool special = p == 2 && i == 1 && j == 1 && m == 1;
            saw_equality = saw_equality || (special && deg == bound);
            t.record(deg <= bound && (deg != bound || special), [&] { return cell({i, j, m}); });
          }
        }
      }
      if (p == 2) t.record(saw_equality, [] { return std::string("equality at p = 2, i = j = m = 1 not observed"); });
    } else {
      t.skip(k < 2 ? "needs k >= 2" : "p^k > 64");
    }
    out.push_back(t.done());
  }
  return out;
}

}  // namespace hyperrank
