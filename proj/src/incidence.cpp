#include "hyperrank/incidence.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hyperrank/hyperplane.hpp"

namespace hyperrank {

namespace {

// <x, y> for x, y given as point indices, using a flat coordinate cache.
class InnerTable {
 public:
  explicit InnerTable(const RingCtx& ctx) : ctx_(ctx), coords_(ctx.size() * ctx.n()) {
    for (std::uint64_t i = 0; i < ctx.size(); ++i) {
      ctx.codec().decode(i, std::span<std::uint64_t>(coords_.data() + i * ctx.n(), ctx.n()));
    }
  }

  std::uint64_t operator()(std::uint64_t x, std::span<const std::uint64_t> y) const {
    std::uint64_t acc = 0;
    const std::uint64_t* cx = coords_.data() + x * ctx_.n();
    for (std::uint32_t i = 0; i < ctx_.n(); ++i) acc += cx[i] * y[i];
    return acc % ctx_.pk();
  }

  std::span<const std::uint64_t> coords(std::uint64_t x) const {
    return {coords_.data() + x * ctx_.n(), ctx_.n()};
  }

 private:
  const RingCtx& ctx_;
  std::vector<std::uint64_t> coords_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t wstar_entries(const RingCtx& ctx) { return saturating_product(direction_count(ctx), ctx.size()); }

}  // namespace

Direction canonical_direction(const Point& v, const RingCtx& ctx) {
  if (v.coords.size() != ctx.n()) throw std::invalid_argument("direction has wrong dimension");
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (!is_unit(v.coords[i], ctx)) continue;
    const std::uint64_t inv = ctx.inv(v.coords[i] % ctx.pk());
    std::vector<std::uint64_t> c(v.coords.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = ctx.mul(v.coords[j] % ctx.pk(), inv);
    return Direction{ctx.point(std::move(c))};
  }
  throw std::invalid_argument("degenerate direction: no coordinate is a unit");
}

std::uint64_t direction_count(const RingCtx& ctx) {
  const std::uint64_t p = ctx.p();
  return checked_pow(p, static_cast<std::uint64_t>(ctx.k() - 1) * (ctx.n() - 1)) *
         ((checked_pow(p, ctx.n()) - 1) / (p - 1));
}

std::vector<Direction> directions(const RingCtx& ctx) {
  std::vector<std::vector<Direction>> blocks(ctx.n());
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint64_t idx = 0; idx < ctx.size(); ++idx) {
    ctx.codec().decode(idx, c);
    for (std::uint32_t i = 0; i < ctx.n(); ++i) {
      if (!is_unit(c[i], ctx)) continue;
      if (c[i] == 1) blocks[i].push_back(Direction{Point{c, idx}});
      break;
    }
  }
  std::vector<Direction> out;
  out.reserve(direction_count(ctx));
  for (auto& block : blocks) {
    for (auto& d : block) out.push_back(std::move(d));
  }
  return out;
}

bool Hyperplane::contains(const Point& x, const RingCtx& ctx) const {
  return inner(x, b.rep, ctx) == inner(a, b.rep, ctx);
}

std::vector<std::uint64_t> Hyperplane::members(const RingCtx& ctx) const {
  const std::uint64_t target = inner(a, b.rep, ctx);
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint64_t idx = 0; idx < ctx.size(); ++idx) {
    ctx.codec().decode(idx, c);
    if (inner(c, b.rep.coords, ctx) == target) out.push_back(idx);
  }
  return out;
}

Point Line::at(std::uint64_t t, const RingCtx& ctx) const {
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint32_t i = 0; i < ctx.n(); ++i) c[i] = ctx.add(a.coords[i], ctx.mul(t % ctx.pk(), b.rep.coords[i]));
  return ctx.point(std::move(c));
}

std::vector<std::uint64_t> Line::members(const RingCtx& ctx) const {
  std::vector<std::uint64_t> out;
  out.reserve(ctx.pk());
  for (std::uint64_t t = 0; t < ctx.pk(); ++t) out.push_back(at(t, ctx).index);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MatGFp build_incidence(IncidenceKind kind, const RingCtx& ctx, std::uint64_t budget) {
  const std::uint64_t size = ctx.size();
  switch (kind) {
    case IncidenceKind::W: {
      require_budget(saturating_product(size, size), budget, "W");
      InnerTable ip(ctx);
      MatGFp m(ctx.p(), size, size);
      for (std::uint64_t x = 0; x < size; ++x) {
        for (std::uint64_t y = 0; y < size; ++y) {
          if (ip(x, ip.coords(y)) == 0) m.set(x, y, 1);
        }
      }
      return m;
    }
    case IncidenceKind::Wstar: {
      require_budget(wstar_entries(ctx), budget, "W*");
      InnerTable ip(ctx);
      const auto dirs = directions(ctx);
      MatGFp m(ctx.p(), dirs.size(), size);
      for (std::size_t r = 0; r < dirs.size(); ++r) {
        for (std::uint64_t x = 0; x < size; ++x) {
          if (ip(x, dirs[r].rep.coords) == 0) m.set(r, x, 1);
        }
      }
      return m;
    }
    case IncidenceKind::AstarLiteral: {
      if (size > kAstarLiteralMaxPoints) {
        throw BudgetExceeded("the literal affine incidence matrix is built only for p^(kn) <= 256; use the reduced "
                             "spanning set (hyperspan_dim) instead");
      }
      require_budget(saturating_product(wstar_entries(ctx), size), budget, "A*");
      InnerTable ip(ctx);
      const auto dirs = directions(ctx);
      MatGFp m(ctx.p(), dirs.size() * size, size);
      std::vector<std::uint64_t> level(size);
      for (std::size_t bi = 0; bi < dirs.size(); ++bi) {
        for (std::uint64_t x = 0; x < size; ++x) level[x] = ip(x, dirs[bi].rep.coords);
        for (std::uint64_t a = 0; a < size; ++a) {
          for (std::uint64_t x = 0; x < size; ++x) {
            if (level[x] == level[a]) m.set(bi * size + a, x, 1);
          }
        }
      }
      return m;
    }
  }
  throw std::invalid_argument("unknown incidence kind");
}

std::vector<ScaleBlockRank> scale_block_ranks(const RingCtx& ctx, std::uint64_t budget) {
  const auto dirs = directions(ctx);
  InnerTable ip(ctx);
  std::vector<ScaleBlockRank> out;
  for (std::uint32_t j = 0; j < ctx.k(); ++j) {
    const std::uint64_t scale = ctx.pow_p(j);
    std::vector<std::uint64_t> cols;
    for (const auto& d : dirs) {
      std::vector<std::uint64_t> c(d.rep.coords);
      for (auto& v : c) v = ctx.mul(v, scale);
      cols.push_back(ctx.codec().encode(c));
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    require_budget(saturating_product(ctx.size(), cols.size()), budget, "W column block");
    MatGFp block(ctx.p(), ctx.size(), cols.size());
    for (std::uint64_t x = 0; x < ctx.size(); ++x) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (ip(x, ip.coords(cols[c])) == 0) block.set(x, c, 1);
      }
    }
    const RingCtx reduced(ctx.p(), ctx.k() - j, ctx.n());
    out.push_back({j, rank(block), rank(build_incidence(IncidenceKind::Wstar, reduced, budget))});
  }
  return out;
}

RankReport rank_report(const RingCtx& ctx, std::uint64_t budget) {
  const auto start = std::chrono::steady_clock::now();
  RankReport rep(ctx);
  const std::uint32_t p = ctx.p();
  const std::uint32_t k = ctx.k();
  const std::uint32_t n = ctx.n();

  auto attempt = [&](const std::string& what, auto&& fn) -> std::optional<std::uint64_t> {
    try {
      return fn();
    } catch (const BudgetExceeded& e) {
      rep.omitted.push_back(what + ": " + e.what());
      return std::nullopt;
    }
  };

  rep.rank_W = attempt("rank_W", [&] { return rank(build_incidence(IncidenceKind::W, ctx, budget)); });
  rep.rank_Wstar = attempt("rank_Wstar", [&] { return rank(build_incidence(IncidenceKind::Wstar, ctx, budget)); });
  rep.dim_H = attempt("dim_H", [&] { return hyperspan_dim(ctx, budget); });
  if (rep.dim_H) rep.dim_H_path = "span";
  if (ctx.size() <= kAstarLiteralMaxPoints) {
    rep.rank_Astar_literal =
        attempt("rank_Astar_literal", [&] { return rank(build_incidence(IncidenceKind::AstarLiteral, ctx, budget)); });
  }

  const auto& rW = rep.rank_W;
  const auto& rWs = rep.rank_Wstar;
  if (rW && rWs) {
    rep.checks.push_back(check_le("rank_Wstar_le_rank_W", *rWs, *rW));
    if (k >= 2 && n == 2) rep.checks.push_back(check_lt("rank_Wstar_lt_rank_W_plane", *rWs, *rW));
    if (n >= 2) rep.checks.push_back(check_le("rank_W_le_1_plus_k_rank_Wstar", *rW, 1 + std::uint64_t{k} * *rWs));
  }
  if (rW && n >= 2) {
    std::uint64_t sum = 0;
    bool complete = true;
    for (std::uint32_t j = 1; j <= k && complete; ++j) {
      const RingCtx sub(p, j, n);
      if (j == k && rWs) {
        sum += *rWs;
        continue;
      }
      auto r = attempt("rank_Wstar at scale " + std::to_string(j),
                       [&] { return rank(build_incidence(IncidenceKind::Wstar, sub, budget)); });
      if (r) sum += *r;
      else complete = false;
    }
    if (complete) rep.checks.push_back(check_le("rank_W_le_1_plus_scale_sum_Wstar", *rW, 1 + sum));
  }
  if (rep.dim_H && n >= 2) {
    std::optional<std::uint64_t> next;
    try {
      const RingCtx up(p, k, n + 1);
      next = attempt("rank_Wstar_next_dim", [&] { return rank(build_incidence(IncidenceKind::Wstar, up, budget)); });
    } catch (const std::invalid_argument& e) {
      rep.omitted.push_back(std::string("rank_Wstar_next_dim: ") + e.what());
    }
    if (next) {
      rep.checks.push_back(check_le("dim_H_le_rank_Wstar_next_dim", *rep.dim_H, *next));
      rep.checks.push_back(check_le("rank_Wstar_next_dim_le_2k2_dim_H", *next, 2 * (std::uint64_t{k} + 1) * *rep.dim_H));
    }
  }
  if (rW && k == 1) rep.checks.push_back(check_eq("rank_W_k1_formula", *rW, binomial(p + n - 2, n - 1) + 1));
  if (rep.dim_H) {
    const std::uint64_t bound = binomial(ctx.pk() - 1 + n, n);
    rep.checks.push_back(check_le("dim_H_le_binomial_bound", *rep.dim_H, bound));
    if (k == 1) rep.checks.push_back(check_eq("dim_H_k1_formula", *rep.dim_H, bound));
    if (rep.rank_Astar_literal) {
      rep.checks.push_back(check_eq("literal_Astar_rank_eq_dim_H", *rep.rank_Astar_literal, *rep.dim_H));
    }
  }
  rep.seconds = seconds_since(start);
  return rep;
}

}  // namespace hyperrank
