#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/hyperplane.hpp"
#include "hyperrank/incidence.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/rng.hpp"
#include "hyperrank/suites.hpp"
#include "tally.hpp"

namespace hyperrank {

namespace {

using detail::Tally;

Point random_point(const RingCtx& ctx, Xoshiro256& rng) { return ctx.point(rng.below(ctx.size())); }

bool degenerate(const Point& v, const RingCtx& ctx) {
  return std::none_of(v.coords.begin(), v.coords.end(), [&](std::uint64_t c) { return is_unit(c, ctx); });
}

Point random_nondegenerate(const RingCtx& ctx, Xoshiro256& rng) {
  for (;;) {
    Point v = random_point(ctx, rng);
    if (!degenerate(v, ctx)) return v;
  }
}

std::uint64_t random_unit(const RingCtx& ctx, Xoshiro256& rng) {
  for (;;) {
    const std::uint64_t u = rng.below(ctx.pk());
    if (is_unit(u, ctx)) return u;
  }
}

MatGFp random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols, Xoshiro256& rng) {
  MatGFp m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<std::uint32_t>(rng.below(p)));
  }
  return m;
}

bool same_row_space(const MatGFp& a, const MatGFp& b) {
  return RowSpace(a).contains_rows(b) && RowSpace(b).contains_rows(a);
}

}  // namespace

std::vector<Check> incidence_suite(const RingCtx& ctx, const SuiteOptions& opts) {
  std::vector<Check> out;
  const std::uint32_t p = ctx.p();
  const std::uint32_t k = ctx.k();
  const std::uint32_t n = ctx.n();
  const std::uint64_t pk = ctx.pk();
  Xoshiro256 rng(opts.seed ^ 0x1ac1de7ceULL);

  const auto dirs = directions(ctx);
  {
    Tally t("direction_count_matches_projective_classes");
    t.record(dirs.size() == direction_count(ctx), [&] {
      return std::to_string(dirs.size()) + " listed vs " + std::to_string(direction_count(ctx));
    });
    if (ctx.size() <= (1U << 16)) {
      std::set<std::uint64_t> classes;
      for (std::uint64_t i = 0; i < ctx.size(); ++i) {
        const Point v = ctx.point(i);
        if (!degenerate(v, ctx)) classes.insert(canonical_direction(v, ctx).rep.index);
      }
      t.record(classes.size() == dirs.size(), [&] { return std::to_string(classes.size()) + " classes"; });
    } else {
      t.skip("orbit enumeration needs p^(kn) <= 65536");
    }
    out.push_back(t.done());
  }
  {
    Tally t("directions_are_canonical_and_ordered");
    std::uint32_t last_lead = 0;
    std::uint64_t last_index = 0;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto& c = dirs[i].rep.coords;
      std::uint32_t lead = 0;
      while (lead < n && !is_unit(c[lead], ctx)) ++lead;
      bool ok = lead < n && c[lead] == 1 && canonical_direction(dirs[i].rep, ctx) == dirs[i];
      for (std::uint32_t j = 0; j < lead && ok; ++j) ok = c[j] % p == 0;
      if (i > 0) ok = ok && (lead > last_lead || (lead == last_lead && dirs[i].rep.index > last_index));
      last_lead = lead;
      last_index = dirs[i].rep.index;
      t.record(ok, [&] { return "direction " + std::to_string(i); });
    }
    out.push_back(t.done());
  }
  {
    Tally t("canonical_direction_invariant_under_units");
    for (std::uint64_t s = 0; s < std::min<std::uint64_t>(opts.samples, 500); ++s) {
      const Point v = random_nondegenerate(ctx, rng);
      const std::uint64_t u = random_unit(ctx, rng);
      std::vector<std::uint64_t> scaled(v.coords);
      for (auto& c : scaled) c = ctx.mul(c, u);
      t.record(canonical_direction(ctx.point(std::move(scaled)), ctx) == canonical_direction(v, ctx),
               [&] { return "v = " + std::to_string(v.index) + ", u = " + std::to_string(u); });
    }
    bool threw = false;
    try {
      canonical_direction(ctx.point(std::vector<std::uint64_t>(n, k >= 2 ? p : 0)), ctx);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    t.record(threw, [] { return std::string("degenerate vector accepted"); });
    out.push_back(t.done());
  }
  {
    Tally planes("hyperplane_has_p_pow_k_n_minus_1_points");
    Tally lines("line_has_p_pow_k_points");
    if (ctx.size() <= (1U << 20)) {
      const std::uint64_t expected = ctx.size() / pk;
      for (std::uint64_t s = 0; s < 64; ++s) {
        const Direction& b = dirs[rng.below(dirs.size())];
        const Point a = random_point(ctx, rng);
        const Hyperplane h{b, a};
        const auto members = h.members(ctx);
        bool ok = members.size() == expected && std::binary_search(members.begin(), members.end(), a.index);
        const Point x = random_point(ctx, rng);
        ok = ok && h.contains(x, ctx) == std::binary_search(members.begin(), members.end(), x.index);
        planes.record(ok, [&] { return "b = " + std::to_string(b.rep.index) + ", a = " + std::to_string(a.index); });

        const Line l{b, a};
        const auto pts = l.members(ctx);
        bool lok = pts.size() == pk;
        for (std::uint64_t t = 0; t < pk && lok; ++t) lok = std::binary_search(pts.begin(), pts.end(), l.at(t, ctx).index);
        lines.record(lok, [&] { return "b = " + std::to_string(b.rep.index) + ", a = " + std::to_string(a.index); });
      }
    } else {
      planes.skip("p^(kn) > 2^20");
      lines.skip("p^(kn) > 2^20");
    }
    out.push_back(planes.done());
    out.push_back(lines.done());
  }

  const RankReport rep = rank_report(ctx);
  for (const auto& c : rep.checks) out.push_back(c);
  out.push_back(check_holds("rank_report_within_budget", true,
                            rep.omitted.empty() ? "all quantities computed"
                                                : std::to_string(rep.omitted.size()) + " quantities over budget"));
  if (rep.rank_W) {
    Tally t("rank_kernel_matches_reference_on_W");
    if (ctx.size() <= 256) {
      const MatGFp w = build_incidence(IncidenceKind::W, ctx);
      t.record(rank_reference(w) == *rep.rank_W && rank(w.transpose()) == *rep.rank_W);
      bool ones = true;
      for (std::uint64_t y = 0; y < ctx.size() && ones; ++y) ones = w.get(0, y) == 1;
      t.record(ones, [] { return std::string("row x = 0 is not all ones"); });
    } else {
      t.skip("p^(kn) > 256");
    }
    out.push_back(t.done());
  }
  {
    Tally t("scale_blocks_of_W_match_reduced_Wstar");
    try {
      for (const auto& b : scale_block_ranks(ctx)) {
        t.record(b.block_rank == b.reduced_rank, [&] {
          return "j = " + std::to_string(b.j) + ": " + std::to_string(b.block_rank) + " vs " +
                 std::to_string(b.reduced_rank);
        });
      }
    } catch (const BudgetExceeded& e) {
      t.skip(e.what());
    }
    out.push_back(t.done());
  }

  std::optional<HyperSpanBasis> basis;
  try {
    basis = span_basis(ctx);
  } catch (const BudgetExceeded& e) {
    out.push_back(check_holds("span_basis_within_budget", true, std::string("skipped span checks: ") + e.what()));
  }
  if (basis) {
    {
      Tally t("span_rows_have_degree_below_p_pow_k");
      Tally ones("span_constant_rows_are_all_ones");
      const std::size_t rows = basis->rows.rows();
      const std::size_t count = std::min<std::size_t>(rows, 512);
      for (std::size_t s = 0; s < count; ++s) {
        const std::size_t r = rows <= 512 ? s : rng.below(rows);
        const auto row = basis->rows.row(r);
        t.record(degree(FnTable(ctx, row)) <= static_cast<std::int64_t>(pk) - 1, [&] { return "row " + std::to_string(r); });
      }
      for (std::size_t bi = 0; bi < dirs.size(); ++bi) {
        const auto row = basis->rows.row(bi * pk);
        ones.record(std::all_of(row.begin(), row.end(), [](std::uint8_t v) { return v == 1; }),
                    [&] { return "direction " + std::to_string(bi); });
      }
      out.push_back(t.done());
      out.push_back(ones.done());
    }
    {
      Tally t("span_row_space_equals_literal_indicator_span");
      if (ctx.size() <= kAstarLiteralMaxPoints) {
        const HyperSpanBasis lit = indicator_basis(ctx);
        t.record(same_row_space(basis->rows, lit.rows));
        t.record(same_row_space(lit.rows, build_incidence(IncidenceKind::AstarLiteral, ctx)));
      } else {
        t.skip("p^(kn) > 256");
      }
      out.push_back(t.done());
    }
    {
      Tally t("hyperplane_indicators_are_members_with_certificates");
      for (std::uint64_t s = 0; s < 32; ++s) {
        const Hyperplane h{dirs[rng.below(dirs.size())], random_point(ctx, rng)};
        const auto members = h.members(ctx);
        std::vector<std::uint8_t> v(ctx.size(), 0);
        for (auto x : members) v[x] = 1;
        const auto coeffs = is_hyperplane_function(FnTable(ctx, v), *basis);
        t.record(coeffs && left_multiply(*coeffs, basis->rows) == v,
                 [&] { return "b = " + std::to_string(h.b.rep.index) + ", a = " + std::to_string(h.a.index); });
      }
      out.push_back(t.done());
    }
  }
  {
    Tally t("k1_polynomial_span_identities");
    if (k == 1 && checked_pow(p, n) <= 4096) {
      for (std::uint32_t d = 0; d < p; ++d) {
        t.record(verify_k1_spans(p, n, d).passed(), [&] { return "d = " + std::to_string(d); });
      }
    } else {
      t.skip(k == 1 ? "p^n > 4096" : "needs k = 1");
    }
    out.push_back(t.done());
  }
  {
    Tally t("gfp_rank_matches_reference_elimination");
    Tally tr("gfp_rank_transpose_invariant");
    Tally prod("gfp_rank_of_product_bounded");
    Tally cert("gfp_span_certificates_reconstruct");
    Tally dump("gfp_dump_round_trip");
    for (std::uint64_t s = 0; s < 60; ++s) {
      const std::size_t r = 1 + rng.below(40);
      const std::size_t c = 1 + rng.below(70);
      const std::size_t inner_dim = 1 + rng.below(12);
      // Low-rank products exercise dependent rows.
      const MatGFp a = s % 2 == 0 ? random_matrix(p, r, c, rng)
                                  : multiply(random_matrix(p, r, inner_dim, rng), random_matrix(p, inner_dim, c, rng));
      const std::size_t ra = rank(a);
      t.record(ra == rank_reference(a), [&] { return "sample " + std::to_string(s); });
      tr.record(rank(a.transpose()) == ra, [&] { return "sample " + std::to_string(s); });
      const MatGFp b = random_matrix(p, c, 1 + rng.below(30), rng);
      prod.record(rank(multiply(a, b)) <= std::min(ra, rank(b)), [&] { return "sample " + std::to_string(s); });

      std::vector<std::uint8_t> coeffs(r);
      for (auto& x : coeffs) x = static_cast<std::uint8_t>(rng.below(p));
      const auto v = left_multiply(coeffs, a);
      const auto found = in_span(a, v);
      cert.record(found && left_multiply(*found, a) == v, [&] { return "sample " + std::to_string(s); });

      std::stringstream ss;
      write_dump(ss, a);
      dump.record(read_dump(ss) == a, [&] { return "sample " + std::to_string(s); });
    }
    out.push_back(t.done());
    out.push_back(tr.done());
    out.push_back(prod.done());
    out.push_back(cert.done());
    out.push_back(dump.done());
  }
  return out;
}

}  // namespace hyperrank
