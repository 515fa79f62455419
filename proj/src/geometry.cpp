#include "hyperrank/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "hyperrank/errors.hpp"
#include "hyperrank/rng.hpp"

namespace hyperrank {

namespace {

PointSet sorted_unique(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

PointSet intersect(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Index of the projective class of b mod p, as a point index of F_p^n.
std::uint64_t class_mod_p(const Direction& b, const RingCtx& ctx) {
  return project(b.rep, 1, ctx).index;
}

Point random_point(Xoshiro256& rng, const RingCtx& ctx) { return ctx.point(rng.below(ctx.size())); }

// Uniform point of the cube: base + p^scale * w.
Point random_in_cube(Xoshiro256& rng, const Cube& q, const RingCtx& ctx) {
  const std::uint64_t step = ctx.pow_p(q.scale);
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint32_t i = 0; i < ctx.n(); ++i) {
    c[i] = ctx.add(q.base.coords[i], ctx.mul(step, rng.below(ctx.pk())));
  }
  return ctx.point(std::move(c));
}

Direction random_direction(Xoshiro256& rng, const RingCtx& ctx) {
  for (;;) {
    const Point v = random_point(rng, ctx);
    for (auto c : v.coords) {
      if (is_unit(c, ctx)) return canonical_direction(v, ctx);
    }
  }
}

std::string describe(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + std::to_string(x.coords[i]);
  return s + ")";
}

}  // namespace

std::uint32_t angle(const Direction& b, const Direction& b2, const RingCtx& ctx) {
  if (b == b2) return kAngleEqual;
  std::uint32_t s = ctx.k();
  for (std::uint32_t i = 0; i < ctx.n(); ++i) s = std::min(s, valuation(ctx.sub(b.rep.coords[i], b2.rep.coords[i]), ctx));
  return s;
}

bool Cube::contains(const Point& x, const RingCtx& ctx) const {
  const std::uint64_t m = ctx.pow_p(scale);
  for (std::uint32_t i = 0; i < ctx.n(); ++i) {
    if (x.coords[i] % m != base.coords[i] % m) return false;
  }
  return true;
}

bool Cube::contains(std::uint64_t index, const RingCtx& ctx) const { return contains(ctx.point(index), ctx); }

PointSet Cube::members(const RingCtx& ctx) const {
  const std::uint64_t m = ctx.pow_p(scale);
  const IndexCodec inner_codec(ctx.pow_p(ctx.k() - scale), ctx.n());
  PointSet out;
  out.reserve(inner_codec.size());
  std::vector<std::uint64_t> w(ctx.n());
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint64_t i = 0; i < inner_codec.size(); ++i) {
    inner_codec.decode(i, w);
    for (std::uint32_t j = 0; j < ctx.n(); ++j) c[j] = base.coords[j] % m + m * w[j];
    out.push_back(ctx.codec().encode(c));
  }
  return sorted_unique(std::move(out));
}

Cube cube_of(const Point& x, std::uint32_t scale, const RingCtx& ctx) {
  const std::uint64_t m = ctx.pow_p(scale);
  std::vector<std::uint64_t> c(x.coords);
  for (auto& v : c) v %= m;
  return Cube{scale, ctx.point(std::move(c))};
}

Point iota(const Cube& q, const Point& x, const RingCtx& ctx) {
  if (!q.contains(x, ctx)) throw std::invalid_argument("iota: point " + describe(x) + " is not in the cube");
  const std::uint64_t m = ctx.pow_p(q.scale);
  Point out;
  for (auto c : x.coords) out.coords.push_back((c - c % m) / m);
  out.index = IndexCodec(ctx.pow_p(ctx.k() - q.scale), ctx.n()).encode(out.coords);
  return out;
}

PointSet iota(const Cube& q, std::span<const std::uint64_t> s, const RingCtx& ctx) {
  PointSet out;
  for (auto x : s) out.push_back(iota(q, ctx.point(x), ctx).index);
  return sorted_unique(std::move(out));
}

PointSet project_set(std::span<const std::uint64_t> s, std::uint32_t scale, const RingCtx& ctx) {
  PointSet out;
  for (auto x : s) out.push_back(project(ctx.point(x), scale, ctx).index);
  return sorted_unique(std::move(out));
}

std::uint32_t dist_exponent(const Point& x, std::span<const std::uint64_t> s, const RingCtx& ctx) {
  if (s.empty()) throw std::invalid_argument("distance to the empty set is undefined");
  std::uint32_t best = 0;
  for (auto si : s) {
    const Point y = ctx.point(si);
    std::uint32_t j = ctx.k();
    for (std::uint32_t i = 0; i < ctx.n(); ++i) j = std::min(j, valuation(ctx.sub(x.coords[i], y.coords[i]), ctx));
    best = std::max(best, j);
  }
  return best;
}

PointSet neighbourhood(std::span<const std::uint64_t> s, std::uint32_t j, const RingCtx& ctx) {
  const IndexCodec reduced(ctx.pow_p(j), ctx.n());
  std::vector<bool> hit(reduced.size(), false);
  for (auto x : s) hit[project(ctx.point(x), j, ctx).index] = true;
  PointSet out;
  for (std::uint64_t x = 0; x < ctx.size(); ++x) {
    if (hit[project(ctx.point(x), j, ctx).index]) out.push_back(x);
  }
  return out;
}

PointSet plane_points(const Point& anchor, const Direction& u, const Direction& v, const RingCtx& ctx) {
  PointSet out;
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint64_t s = 0; s < ctx.pk(); ++s) {
    for (std::uint64_t t = 0; t < ctx.pk(); ++t) {
      for (std::uint32_t i = 0; i < ctx.n(); ++i) {
        c[i] = ctx.add(anchor.coords[i], ctx.add(ctx.mul(s, u.rep.coords[i]), ctx.mul(t, v.rep.coords[i])));
      }
      out.push_back(ctx.codec().encode(c));
    }
  }
  return sorted_unique(std::move(out));
}

Plane2Nbhd Plane2Nbhd::make(const Point& anchor, const Direction& u, const Direction& v, std::uint32_t nbhd_scale,
                            const RingCtx& ctx) {
  if (angle(u, v, ctx) != 0) throw std::invalid_argument("2-plane directions must make angle 1");
  if (nbhd_scale > ctx.k()) throw std::invalid_argument("neighbourhood scale exceeds k");
  return Plane2Nbhd{anchor, u, v, nbhd_scale};
}

bool Plane2Nbhd::near(const Point& x, const RingCtx& ctx) const {
  const std::uint64_t m = ctx.pow_p(nbhd_scale);
  std::vector<std::uint64_t> target(ctx.n());
  for (std::uint32_t i = 0; i < ctx.n(); ++i) target[i] = ctx.sub(x.coords[i], anchor.coords[i]) % m;
  for (std::uint64_t s = 0; s < m; ++s) {
    for (std::uint64_t t = 0; t < m; ++t) {
      bool match = true;
      for (std::uint32_t i = 0; i < ctx.n() && match; ++i) {
        match = (s * u.rep.coords[i] + t * v.rep.coords[i]) % m == target[i];
      }
      if (match) return true;
    }
  }
  return false;
}

Fan make_fan(const RingCtx& ctx, std::uint32_t scale, const Cube& qprime, const Cube& q, std::vector<Line> lines,
             std::optional<Plane2Nbhd> plane) {
  const std::uint32_t p = ctx.p();
  if (ctx.k() < 2 || scale > ctx.k() - 2) {
    throw std::invalid_argument("fan scale must satisfy 0 <= l <= k - 2 (l = " + std::to_string(scale) +
                                ", k = " + std::to_string(ctx.k()) + ")");
  }
  if (qprime.scale != scale) throw std::invalid_argument("Q' must be a cube on the fan scale");
  if (q.scale != scale + 1) throw std::invalid_argument("Q must be a cube on scale l + 1");
  if (!qprime.contains(q.base, ctx)) throw std::invalid_argument("Q is not contained in Q'");
  if (lines.size() != std::size_t{p} + 1) {
    throw std::invalid_argument("a fan needs exactly p + 1 = " + std::to_string(p + 1) + " lines, got " +
                                std::to_string(lines.size()));
  }

  const PointSet qprime_pts = qprime.members(ctx);
  const PointSet q_pts = q.members(ctx);
  std::vector<PointSet> pieces;
  std::set<std::uint64_t> classes;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (!(canonical_direction(line.b.rep, ctx) == line.b)) {
      throw std::invalid_argument("line " + std::to_string(i) + " has a non-canonical direction");
    }
    const PointSet pts = line.members(ctx);
    if (intersect(pts, q_pts).empty()) throw std::invalid_argument("line " + std::to_string(i) + " does not meet Q");
    for (std::size_t j = 0; j < i; ++j) {
      const auto s = angle(line.b, lines[j].b, ctx);
      if (s != 0) {
        throw std::invalid_argument("lines " + std::to_string(j) + " and " + std::to_string(i) +
                                    " make angle below 1 (s = " +
                                    (s == kAngleEqual ? std::string("inf") : std::to_string(s)) + ")");
      }
    }
    if (!classes.insert(class_mod_p(line.b, ctx)).second) {
      throw std::invalid_argument("line " + std::to_string(i) + " repeats a direction class mod p");
    }
    pieces.push_back(intersect(pts, qprime_pts));
  }

  if (ctx.n() > 2 && !plane) throw std::invalid_argument("fans in dimension n > 2 need a 2-plane");
  if (plane) {
    if (plane->nbhd_scale != scale + 1) throw std::invalid_argument("the 2-plane neighbourhood must be on scale l + 1");
    if (!qprime.contains(plane->anchor, ctx)) throw std::invalid_argument("the 2-plane anchor is not in Q'");
    if (!(cube_of(plane->anchor, scale + 1, ctx).base == cube_of(q.base, scale + 1, ctx).base)) {
      throw std::invalid_argument("Q must be the scale l + 1 cube of the 2-plane anchor");
    }
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      for (auto x : pieces[i]) {
        if (!plane->near(ctx.point(x), ctx)) {
          throw std::invalid_argument("line " + std::to_string(i) + " leaves the 2-plane neighbourhood at " +
                                      describe(ctx.point(x)));
        }
      }
    }
  }

  PointSet all;
  for (const auto& piece : pieces) all.insert(all.end(), piece.begin(), piece.end());
  all = sorted_unique(std::move(all));
  PointSet x;
  std::set_difference(all.begin(), all.end(), q_pts.begin(), q_pts.end(), std::back_inserter(x));
  return Fan{scale, qprime, q, std::move(lines), std::move(plane), std::move(x)};
}

namespace {

// For n = 2: the distinct sets L intersect Q' over lines meeting Q, grouped
// by direction class mod p (classes in direction order of F_p^2).
std::vector<std::vector<Line>> line_options(const RingCtx& ctx, const Cube& qprime, const Cube& q) {
  const RingCtx field(ctx.p(), 1, ctx.n());
  const auto class_list = directions(field);
  std::map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < class_list.size(); ++i) slot[class_list[i].rep.index] = i;

  const PointSet qprime_pts = qprime.members(ctx);
  const PointSet q_pts = q.members(ctx);
  std::vector<std::vector<Line>> options(class_list.size());
  std::vector<std::set<PointSet>> seen(class_list.size());
  for (const auto& b : directions(ctx)) {
    const std::size_t c = slot.at(class_mod_p(b, ctx));
    for (auto qi : q_pts) {
      Line line{b, ctx.point(qi)};
      PointSet piece = intersect(line.members(ctx), qprime_pts);
      if (seen[c].insert(std::move(piece)).second) options[c].push_back(std::move(line));
    }
  }
  return options;
}

std::vector<Cube> cubes_on(const RingCtx& ctx, std::uint32_t scale, const Cube& parent) {
  std::vector<Cube> out;
  std::set<std::uint64_t> bases;
  for (auto x : parent.members(ctx)) {
    Cube c = cube_of(ctx.point(x), scale, ctx);
    if (bases.insert(c.base.index).second) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::uint64_t fan_family_size(const RingCtx& ctx, std::uint32_t scale) {
  if (ctx.n() != 2) throw std::invalid_argument("exhaustive fan families are enumerated for n = 2 only");
  if (ctx.k() < 2 || scale > ctx.k() - 2) throw std::invalid_argument("fan scale must satisfy 0 <= l <= k - 2");
  const Point origin = ctx.point(0);
  const auto options = line_options(ctx, cube_of(origin, scale, ctx), cube_of(origin, scale + 1, ctx));
  std::uint64_t per_q = 1;
  for (const auto& o : options) per_q = saturating_product(per_q, o.size());
  const std::uint64_t cubes = checked_pow(ctx.p(), std::uint64_t{scale + 1} * ctx.n());
  return saturating_product(per_q, cubes);
}

Fan sample_fan(const RingCtx& ctx, std::uint32_t scale, std::uint64_t seed, std::uint64_t index) {
  if (ctx.n() < 2) throw std::invalid_argument("fans need n >= 2");
  auto rng = Xoshiro256::for_item(seed, index);
  const std::uint32_t p = ctx.p();
  const Point a = random_point(rng, ctx);
  const Cube qprime = cube_of(a, scale, ctx);
  const Cube q = cube_of(a, scale + 1, ctx);
  std::vector<Line> lines;

  if (ctx.n() == 2) {
    const RingCtx field(p, 1, ctx.n());
    for (const auto& cls : directions(field)) {
      std::vector<std::uint64_t> v(ctx.n());
      for (std::uint32_t i = 0; i < ctx.n(); ++i) v[i] = ctx.add(cls.rep.coords[i], ctx.mul(p, rng.below(ctx.pk())));
      lines.push_back(Line{canonical_direction(ctx.point(std::move(v)), ctx), random_in_cube(rng, q, ctx)});
    }
    return make_fan(ctx, scale, qprime, q, std::move(lines));
  }

  const Direction u = random_direction(rng, ctx);
  Direction v = random_direction(rng, ctx);
  while (angle(u, v, ctx) != 0) v = random_direction(rng, ctx);
  // Classes (1 : t) for t in F_p, then (0 : 1).
  for (std::uint64_t c = 0; c <= p; ++c) {
    const std::uint64_t s = (c < p ? 1 : 0) + p * rng.below(ctx.pk());
    const std::uint64_t t = (c < p ? c : 1) + p * rng.below(ctx.pk());
    std::vector<std::uint64_t> w(ctx.n());
    for (std::uint32_t i = 0; i < ctx.n(); ++i) w[i] = ctx.add(ctx.mul(s, u.rep.coords[i]), ctx.mul(t, v.rep.coords[i]));
    lines.push_back(Line{canonical_direction(ctx.point(std::move(w)), ctx), random_in_cube(rng, q, ctx)});
  }
  return make_fan(ctx, scale, qprime, q, std::move(lines), Plane2Nbhd::make(a, u, v, scale + 1, ctx));
}

std::uint64_t fan_family(const RingCtx& ctx, std::uint32_t scale, const FanMode& mode,
                         const std::function<void(const Fan&)>& sink) {
  if (mode.kind == FanMode::Kind::Sampled) {
    for (std::uint64_t i = 0; i < mode.count; ++i) sink(sample_fan(ctx, scale, mode.seed, i));
    return mode.count;
  }
  const std::uint64_t expected = fan_family_size(ctx, scale);
  if (expected > mode.budget) {
    throw BudgetExceeded("exhaustive fan family has " + std::to_string(expected) + " fans, budget is " +
                         std::to_string(mode.budget));
  }
  std::uint64_t produced = 0;
  const Cube whole{0, ctx.point(0)};
  for (const auto& qprime : cubes_on(ctx, scale, whole)) {
    for (const auto& q : cubes_on(ctx, scale + 1, qprime)) {
      const auto options = line_options(ctx, qprime, q);
      std::vector<std::size_t> pick(options.size(), 0);
      for (;;) {
        std::vector<Line> lines;
        for (std::size_t c = 0; c < options.size(); ++c) lines.push_back(options[c][pick[c]]);
        sink(make_fan(ctx, scale, qprime, q, std::move(lines)));
        ++produced;
        std::size_t c = 0;
        while (c < pick.size() && ++pick[c] == options[c].size()) pick[c++] = 0;
        if (c == pick.size()) break;
      }
    }
  }
  return produced;
}

std::vector<Fan> fan_family(const RingCtx& ctx, std::uint32_t scale, const FanMode& mode) {
  std::vector<Fan> out;
  fan_family(ctx, scale, mode, [&](const Fan& f) { out.push_back(f); });
  return out;
}

IncidenceCount incidence_count(std::span<const std::uint64_t> s, std::span<const std::uint64_t> t, std::uint32_t p) {
  const std::uint64_t count = intersect(s, t).size();
  return {count, count % p};
}

std::uint32_t sum_over(const FnTable& f, std::span<const std::uint64_t> s) {
  std::uint64_t acc = 0;
  for (auto x : s) acc += f[x];
  return static_cast<std::uint32_t>(acc % f.ctx().p());
}

FanTestReport fan_test(const FnTable& f, std::span<const Fan> fans) {
  FanTestReport rep;
  for (const auto& fan : fans) {
    if (const auto s = sum_over(f, fan.points); s != 0) rep.violations.push_back({rep.fans_checked, s});
    ++rep.fans_checked;
  }
  return rep;
}

bool parallel_line_check(const FnTable& f, const Cube& q, const Line& l1, const Line& l2) {
  const RingCtx& ctx = f.ctx();
  const std::int64_t deg = degree(f);
  if (deg > static_cast<std::int64_t>(ctx.pk()) - 1) {
    throw std::invalid_argument("parallel line check needs degree <= p^k - 1; the function has a term with |alpha| = " +
                                std::to_string(deg));
  }
  if (!(l1.b == l2.b)) throw std::invalid_argument("parallel line check needs lines with the same direction");
  const PointSet q_pts = q.members(ctx);
  const PointSet a = intersect(l1.members(ctx), q_pts);
  const PointSet b = intersect(l2.members(ctx), q_pts);
  if (a.empty() || b.empty()) throw std::invalid_argument("parallel line check needs both lines to meet Q");
  return sum_over(f, a) == sum_over(f, b);
}

}  // namespace hyperrank
