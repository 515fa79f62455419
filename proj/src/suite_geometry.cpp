#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "hyperrank/errors.hpp"
#include "hyperrank/geometry.hpp"
#include "hyperrank/hyperplane.hpp"
#include "hyperrank/incidence.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/rng.hpp"
#include "hyperrank/suites.hpp"
#include "tally.hpp"

namespace hyperrank {

namespace {

using detail::Tally;

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const PointSet& a, const PointSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Point random_point(const RingCtx& ctx, Xoshiro256& rng) { return ctx.point(rng.below(ctx.size())); }

Point random_in_cube(const Cube& q, const RingCtx& ctx, Xoshiro256& rng) {
  const std::uint64_t step = ctx.pow_p(q.scale);
  std::vector<std::uint64_t> c(ctx.n());
  for (std::uint32_t i = 0; i < ctx.n(); ++i) c[i] = ctx.add(q.base.coords[i], ctx.mul(step, rng.below(ctx.pk())));
  return ctx.point(std::move(c));
}

// Direction reduced to R_j; stays canonical because the leading 1 survives.
Direction reduce(const Direction& b, const RingCtx& small) {
  std::vector<std::uint64_t> c(b.rep.coords);
  for (auto& v : c) v %= small.pk();
  return Direction{small.point(std::move(c))};
}

Point reduce(const Point& x, const RingCtx& small) {
  std::vector<std::uint64_t> c(x.coords);
  for (auto& v : c) v %= small.pk();
  return small.point(std::move(c));
}

std::string show(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) s += (i ? "," : "") + std::to_string(x.coords[i]);
  return s + ")";
}

// All distinct lines of R^n.
std::vector<Line> all_lines(const RingCtx& ctx, const std::vector<Direction>& dirs) {
  std::vector<Line> out;
  for (const auto& b : dirs) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < ctx.size(); ++a) {
      const Line l{b, ctx.point(a)};
      const auto m = l.members(ctx);
      if (seen.insert(m.front()).second) out.push_back(l);
    }
  }
  return out;
}

std::vector<Cube> all_cubes(const RingCtx& ctx, std::uint32_t scale) {
  std::map<std::uint64_t, Cube> by_base;
  for (std::uint64_t x = 0; x < ctx.size(); ++x) {
    Cube c = cube_of(ctx.point(x), scale, ctx);
    by_base.emplace(c.base.index, std::move(c));
  }
  std::vector<Cube> out;
  for (auto& [_, c] : by_base) out.push_back(std::move(c));
  return out;
}

// Every level set of <x, b> meets X in a multiple of p points.
bool levels_divisible(const PointSet& x, const Direction& b, const RingCtx& ctx, std::vector<std::uint64_t>& hist) {
  std::fill(hist.begin(), hist.end(), 0);
  for (auto xi : x) ++hist[inner(ctx.point(xi), b.rep, ctx)];
  return std::all_of(hist.begin(), hist.end(), [&](std::uint64_t c) { return c % ctx.p() == 0; });
}

template <class F>
bool throws_invalid(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument&) {
    return true;
  }
  return false;
}

}  // namespace

std::vector<Check> geometry_suite(const RingCtx& ctx, const SuiteOptions& opts) {
  std::vector<Check> out;
  const std::uint32_t p = ctx.p();
  const std::uint32_t k = ctx.k();
  const std::uint32_t n = ctx.n();
  const std::uint64_t pk = ctx.pk();
  Xoshiro256 rng(opts.seed ^ 0x9e0ULL);
  const auto dirs = directions(ctx);
  const bool small = ctx.size() <= 64;
  const bool tractable = ctx.size() <= (1U << 14);

  auto random_dir = [&] { return dirs[rng.below(dirs.size())]; };

  {
    Tally t("cube_sizes_and_membership");
    for (std::uint32_t s = 0; s <= k && tractable; ++s) {
      const Point x = random_point(ctx, rng);
      const Cube q = cube_of(x, s, ctx);
      const auto m = q.members(ctx);
      bool ok = m.size() == checked_pow(p, std::uint64_t{k - s} * n) && q.contains(x, ctx);
      for (std::uint64_t i = 0; i < 16 && ok; ++i) {
        const Point y = random_point(ctx, rng);
        ok = q.contains(y, ctx) == std::binary_search(m.begin(), m.end(), y.index) &&
             q.contains(y, ctx) == (project(y, s, ctx) == project(x, s, ctx));
      }
      t.record(ok, [&] { return "scale " + std::to_string(s); });
    }
    if (!tractable) t.skip("p^(kn) > 2^14");
    out.push_back(t.done());
  }
  {
    Tally t("neighbourhood_matches_distance_exponent");
    if (tractable) {
      for (std::uint64_t s = 0; s < 8; ++s) {
        PointSet set;
        const std::uint64_t size = 1 + rng.below(3);
        for (std::uint64_t i = 0; i < size; ++i) set.push_back(rng.below(ctx.size()));
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (std::uint32_t j = 0; j <= k; ++j) {
          const auto nb = neighbourhood(set, j, ctx);
          bool ok = subset(set, nb);
          for (std::uint64_t i = 0; i < 32 && ok; ++i) {
            const Point x = random_point(ctx, rng);
            ok = (dist_exponent(x, set, ctx) >= j) == std::binary_search(nb.begin(), nb.end(), x.index);
          }
          t.record(ok, [&] { return "sample " + std::to_string(s) + ", j = " + std::to_string(j); });
        }
      }
      t.record(neighbourhood({}, 1, ctx).empty(), [] { return std::string("empty set"); });
    } else {
      t.skip("p^(kn) > 2^14");
    }
    out.push_back(t.done());
  }

  // Rescaling and projection maps on lines, hyperplanes, 2-planes and neighbourhoods.
  {
    Tally io("iota_maps_objects_to_objects");
    Tally pi("projection_maps_objects_to_objects");
    if (k >= 2 && tractable) {
      for (std::uint64_t s = 0; s < 24; ++s) {
        const std::uint32_t l = 1 + static_cast<std::uint32_t>(rng.below(k - 1));
        const RingCtx down(p, k - l, n);
        const RingCtx proj(p, l, n);
        const Cube q = cube_of(random_point(ctx, rng), l, ctx);
        const PointSet qm = q.members(ctx);
        auto label = [&] { return "sample " + std::to_string(s) + ", l = " + std::to_string(l); };

        io.record(iota(q, qm, ctx).size() == down.size(), label);
        const Direction b = random_dir();
        const Line line{b, random_in_cube(q, ctx, rng)};
        const PointSet lq = intersect(line.members(ctx), qm);
        io.record(iota(q, lq, ctx) == Line{reduce(b, down), iota(q, line.a, ctx)}.members(down), label);
        const Hyperplane h{b, random_in_cube(q, ctx, rng)};
        const PointSet hq = intersect(h.members(ctx), qm);
        io.record(iota(q, hq, ctx) == Hyperplane{reduce(b, down), iota(q, h.a, ctx)}.members(down), label);

        pi.record(project_set(line.members(ctx), l, ctx) == Line{reduce(b, proj), reduce(line.a, proj)}.members(proj),
                  label);
        pi.record(project_set(h.members(ctx), l, ctx) == Hyperplane{reduce(b, proj), reduce(h.a, proj)}.members(proj),
                  label);

        if (n >= 2) {
          Direction v = random_dir();
          while (angle(b, v, ctx) != 0) v = random_dir();
          const Point a = random_in_cube(q, ctx, rng);
          const PointSet plane = plane_points(a, b, v, ctx);
          io.record(iota(q, intersect(plane, qm), ctx) ==
                        plane_points(iota(q, a, ctx), reduce(b, down), reduce(v, down), down),
                    label);
          pi.record(project_set(plane, l, ctx) == plane_points(reduce(a, proj), reduce(b, proj), reduce(v, proj), proj),
                    label);
        }

        PointSet set{random_in_cube(q, ctx, rng).index, random_in_cube(q, ctx, rng).index};
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (std::uint32_t j = l; j <= k; ++j) {
          const PointSet lhs = iota(q, intersect(neighbourhood(set, j, ctx), qm), ctx);
          io.record(lhs == neighbourhood(iota(q, set, ctx), j - l, down), label);
          pi.record(project_set(neighbourhood(set, j, ctx), l, ctx) == project_set(set, l, ctx), label);
        }
      }
      const Cube whole{0, ctx.point(0)};
      const Point x = random_point(ctx, rng);
      io.record(iota(whole, x, ctx) == x, [] { return std::string("scale 0 is the identity"); });
      io.record(throws_invalid([&] {
                  const Cube q = cube_of(ctx.point(0), 1, ctx);
                  iota(q, ctx.point(std::vector<std::uint64_t>(n, 1)), ctx);
                }),
                [] { return std::string("point outside Q accepted"); });
    } else {
      io.skip(k < 2 ? "needs k >= 2" : "p^(kn) > 2^14");
      pi.skip(k < 2 ? "needs k >= 2" : "p^(kn) > 2^14");
    }
    out.push_back(io.done());
    out.push_back(pi.done());
  }

  // Line/line and line/hyperplane intersections.
  {
    Tally inside("angle_one_lines_meet_inside_shared_unit_cube");
    Tally unique("angle_one_lines_meet_at_most_once");
    Tally narrow("narrow_angle_lines_meet_unit_cubes_in_multiples_of_p");
    if (n >= 2 && tractable) {
      const auto cubes = all_cubes(ctx, 1);
      auto visit = [&](const Line& l1, const Line& l2) {
        const auto m1 = l1.members(ctx);
        const auto m2 = l2.members(ctx);
        const PointSet both = intersect(m1, m2);
        const std::uint32_t s = angle(l1.b, l2.b, ctx);
        auto label = [&] { return show(l1.a) + "+t" + show(l1.b.rep) + " / " + show(l2.a) + "+t" + show(l2.b.rep); };
        if (s == 0) {
          unique.record(both.size() <= 1, label);
          for (const auto& q : cubes) {
            const auto qm = q.members(ctx);
            if (intersect(m1, qm).empty() || intersect(m2, qm).empty()) continue;
            inside.record(subset(both, qm), label);
          }
        } else if (k >= 2) {
          for (const auto& q : cubes) {
            narrow.record(intersect(both, q.members(ctx)).size() % p == 0, label);
          }
        }
      };
      if (small) {
        const auto lines = all_lines(ctx, dirs);
        for (std::size_t i = 0; i < lines.size(); ++i) {
          for (std::size_t j = 0; j <= i; ++j) visit(lines[i], lines[j]);
        }
      } else {
        for (std::uint64_t s = 0; s < std::min<std::uint64_t>(opts.samples, 400); ++s) {
          const Point a = random_point(ctx, rng);
          const Cube q = cube_of(a, 1, ctx);
          // Half the pairs share a unit cube, half share a direction class mod p.
          Direction b1 = random_dir();
          Direction b2 = random_dir();
          if (s % 2 == 1) {
            std::vector<std::uint64_t> c(b1.rep.coords);
            for (auto& v : c) v = ctx.add(v, ctx.mul(p, rng.below(pk)));
            b2 = canonical_direction(ctx.point(std::move(c)), ctx);
          }
          visit(Line{b1, random_in_cube(q, ctx, rng)}, Line{b2, random_in_cube(q, ctx, rng)});
        }
      }
    } else {
      const char* why = n < 2 ? "needs n >= 2" : "p^(kn) > 2^14";
      inside.skip(why);
      unique.skip(why);
      narrow.skip(why);
    }
    out.push_back(inside.done());
    out.push_back(unique.done());
    out.push_back(narrow.done());
  }
  {
    Tally t("line_hyperplane_intersection_size_and_cube");
    if (tractable) {
      auto visit = [&](const Line& l, const Hyperplane& h) {
        const PointSet both = intersect(l.members(ctx), h.members(ctx));
        if (both.empty()) return;
        const std::uint64_t c = inner(l.b.rep, h.b.rep, ctx);
        const std::uint32_t j = c == 0 ? k : valuation(c, ctx);
        bool ok = both.size() == ctx.pow_p(j);
        const Cube q = cube_of(ctx.point(both.front()), k - j, ctx);
        for (auto x : both) ok = ok && q.contains(x, ctx);
        t.record(ok, [&] { return show(l.a) + "+t" + show(l.b.rep) + " vs normal " + show(h.b.rep); });
      };
      if (small) {
        const auto lines = all_lines(ctx, dirs);
        for (const auto& l : lines) {
          for (const auto& b : dirs) {
            for (std::uint64_t c = 0; c < pk; ++c) {
              // One hyperplane per level: pick a point on that level along a unit coordinate.
              std::vector<std::uint64_t> a(n, 0);
              std::uint32_t lead = 0;
              while (!is_unit(b.rep.coords[lead], ctx)) ++lead;
              a[lead] = c;
              visit(l, Hyperplane{b, ctx.point(std::move(a))});
            }
          }
        }
      } else {
        for (std::uint64_t s = 0; s < std::min<std::uint64_t>(opts.samples, 400); ++s) {
          const Point a = random_point(ctx, rng);
          visit(Line{random_dir(), a}, Hyperplane{random_dir(), a});
        }
      }
    } else {
      t.skip("p^(kn) > 2^14");
    }
    out.push_back(t.done());
  }
  if (n == 2) {
    Tally t("plane_lines_are_hyperplanes_with_rotated_normal");
    for (std::uint64_t s = 0; s < 64; ++s) {
      const Direction b = random_dir();
      const Point a = random_point(ctx, rng);
      const Direction v = canonical_direction(ctx.point({ctx.neg(b.rep.coords[1]), b.rep.coords[0]}), ctx);
      t.record(Line{b, a}.members(ctx) == Hyperplane{v, a}.members(ctx), [&] { return show(b.rep); });
    }
    out.push_back(t.done());
  }

  // Fans.
  if (k >= 2 && n >= 2) {
    {
      Tally t("fan_constructor_rejects_invalid_input");
      const Point o = ctx.point(0);
      std::vector<Line> too_few(p, Line{dirs[0], o});
      t.record(throws_invalid([&] { make_fan(ctx, k - 1, cube_of(o, k - 1, ctx), cube_of(o, k, ctx), {}); }),
               [] { return std::string("scale k - 1 accepted"); });
      t.record(throws_invalid([&] { make_fan(ctx, 0, cube_of(o, 0, ctx), cube_of(o, 1, ctx), too_few); }),
               [] { return std::string("p lines accepted"); });
      std::vector<Line> repeated(p + 1, Line{dirs[0], o});
      t.record(throws_invalid([&] { make_fan(ctx, 0, cube_of(o, 0, ctx), cube_of(o, 1, ctx), repeated); }),
               [] { return std::string("repeated direction accepted"); });
      out.push_back(t.done());
    }
    Tally hyper("fan_meets_every_hyperplane_in_multiple_of_p");
    Tally repro("sampled_fans_are_reproducible");
    Tally family("exhaustive_fan_family_size_matches");
    std::vector<std::uint64_t> hist(pk);
    const std::size_t dir_cap = 256;
    for (std::uint32_t l = 0; l + 2 <= k; ++l) {
      auto check_fan = [&](const Fan& fan, std::uint64_t idx) {
        bool ok = true;
        if (dirs.size() <= dir_cap) {
          for (const auto& b : dirs) ok = ok && levels_divisible(fan.points, b, ctx, hist);
        } else {
          for (std::size_t i = 0; i < dir_cap; ++i) ok = ok && levels_divisible(fan.points, random_dir(), ctx, hist);
        }
        hyper.record(ok, [&] { return "scale " + std::to_string(l) + ", fan " + std::to_string(idx); });
      };
      bool exhaustive = false;
      if (n == 2 && tractable) {
        const std::uint64_t expected = fan_family_size(ctx, l);
        if (expected <= 20000) {
          exhaustive = true;
          std::uint64_t idx = 0;
          const std::uint64_t produced = fan_family(ctx, l, FanMode{}, [&](const Fan& f) { check_fan(f, idx++); });
          family.record(produced == expected, [&] { return "scale " + std::to_string(l); });
        }
      }
      if (!exhaustive && ctx.size() <= (1U << 16)) {
        const std::uint64_t count = std::min<std::uint64_t>(opts.samples, 200);
        const FanMode mode{FanMode::Kind::Sampled, opts.seed, count};
        std::uint64_t idx = 0;
        fan_family(ctx, l, mode, [&](const Fan& f) {
          check_fan(f, idx);
          if (idx < 8) {
            repro.record(sample_fan(ctx, l, opts.seed, idx).points == f.points, [&] { return std::to_string(idx); });
          }
          ++idx;
        });
      }
    }
    if (family.cases() == 0) family.skip("exhaustive families enumerated only for small n = 2 contexts");
    if (repro.cases() == 0) repro.skip("no sampled families at this context");
    if (hyper.cases() == 0) hyper.skip("p^(kn) > 2^16");
    out.push_back(hyper.done());
    out.push_back(family.done());
    out.push_back(repro.done());
  }

  {
    Tally t("parallel_lines_have_equal_sums_on_cubes");
    Tally gate("parallel_line_check_rejects_high_degree");
    if (tractable) {
      std::vector<MultiIndex> low;
      if (ctx.size() <= 4096) {
        for (std::uint64_t a = 0; a < ctx.size(); ++a) {
          auto m = MultiIndex::from_index(ctx, a);
          if (m.total <= pk - 1) low.push_back(std::move(m));
        }
      }
      if (small) {
        const auto lines = all_lines(ctx, dirs);
        for (const auto& alpha : low) {
          const FnTable f = phi_table(ctx, alpha);
          for (std::uint32_t s = 0; s <= k; ++s) {
            for (const auto& q : all_cubes(ctx, s)) {
              const auto qm = q.members(ctx);
              std::vector<const Line*> meeting;
              for (const auto& l : lines) {
                if (!intersect(l.members(ctx), qm).empty()) meeting.push_back(&l);
              }
              for (const Line* a : meeting) {
                for (const Line* b : meeting) {
                  if (!(a->b == b->b) || a >= b) continue;
                  t.record(parallel_line_check(f, q, *a, *b), [&] { return "alpha index " + std::to_string(alpha.total); });
                }
              }
            }
          }
        }
      } else if (!low.empty()) {
        for (std::uint64_t s = 0; s < std::min<std::uint64_t>(opts.samples, 300); ++s) {
          const MultiIndex& alpha = low[rng.below(low.size())];
          const FnTable f = phi_table(ctx, alpha);
          const auto scale = static_cast<std::uint32_t>(rng.below(k + 1));
          const Cube q = cube_of(random_point(ctx, rng), scale, ctx);
          const Direction b = random_dir();
          t.record(parallel_line_check(f, q, Line{b, random_in_cube(q, ctx, rng)}, Line{b, random_in_cube(q, ctx, rng)}),
                   [&] { return "sample " + std::to_string(s); });
        }
      }
      if (n >= 2) {
        const MultiIndex top = MultiIndex::make(ctx, std::vector<std::uint64_t>(n, pk - 1));
        const Cube whole{0, ctx.point(0)};
        const Line l{dirs[0], ctx.point(0)};
        gate.record(throws_invalid([&] { parallel_line_check(phi_table(ctx, top), whole, l, l); }));
      }
      if (low.empty()) t.skip("p^(kn) > 4096");
    } else {
      t.skip("p^(kn) > 2^14");
    }
    if (gate.cases() == 0) gate.skip("needs n >= 2");
    out.push_back(t.done());
    out.push_back(gate.done());
  }

  {
    Tally t("hyperplane_functions_pass_every_fan");
    if (k >= 2 && n >= 2 && ctx.size() <= 1024) {
      std::vector<Fan> fans;
      for (std::uint32_t l = 0; l + 2 <= k; ++l) {
        const bool exhaustive = n == 2 && fan_family_size(ctx, l) <= 5000;
        const FanMode mode = exhaustive ? FanMode{} : FanMode{FanMode::Kind::Sampled, opts.seed, 100};
        auto part = fan_family(ctx, l, mode);
        fans.insert(fans.end(), part.begin(), part.end());
      }
      const HyperSpanBasis basis = span_basis(ctx);
      for (std::uint64_t s = 0; s < 20; ++s) {
        std::vector<std::uint8_t> coeffs(basis.rows.rows());
        for (auto& c : coeffs) c = static_cast<std::uint8_t>(rng.below(p));
        const FnTable f(ctx, left_multiply(coeffs, basis.rows));
        t.record(fan_test(f, fans).passed(), [&] { return "combination " + std::to_string(s); });
      }
      t.record(fan_test(FnTable(ctx), fans).passed(), [] { return std::string("zero function"); });
    } else {
      t.skip(k < 2 || n < 2 ? "needs k >= 2 and n >= 2" : "p^(kn) > 1024");
    }
    out.push_back(t.done());
  }

  if (p == 2 && k == 2 && n == 2) {
    Tally t("phi21_fan_example");
    const FnTable f = phi_table(ctx, MultiIndex::make(ctx, {2, 1}));
    const Point a = ctx.point({0, 1});
    std::vector<Line> lines;
    for (auto d : {std::vector<std::uint64_t>{1, 0}, {1, 1}, {0, 1}}) lines.push_back(Line{Direction{ctx.point(d)}, a});
    const Fan fan = make_fan(ctx, 0, cube_of(a, 0, ctx), cube_of(a, 1, ctx), lines);
    PointSet expected;
    for (auto [x, y] : {std::pair{0, 0}, {3, 0}, {1, 1}, {3, 1}, {0, 2}, {1, 2}}) {
      expected.push_back(ctx.point({std::uint64_t(x), std::uint64_t(y)}).index);
    }
    std::sort(expected.begin(), expected.end());
    t.record(fan.points == expected, [] { return std::string("fan point set"); });
    t.record(sum_over(f, fan.points) == 1, [] { return std::string("sum over fan"); });
    const auto on_axis = Line{Direction{ctx.point({1, 0})}, ctx.point({0, 0})}.members(ctx);
    const auto ic = incidence_count(on_axis, fan.points, p);
    t.record(ic.count == 2 && ic.residue == 0, [] { return std::string("incidence with the x axis"); });
    t.record(!is_hyperplane_function(f).has_value(), [] { return std::string("membership verdict"); });
    std::uint64_t violated = 0;
    const std::uint64_t total = fan_family(ctx, 0, FanMode{}, [&](const Fan& g) { violated += sum_over(f, g.points) != 0; });
    t.record(violated == total && total == 256, [&] {
      return std::to_string(violated) + " of " + std::to_string(total) + " fans violated";
    });
    out.push_back(t.done());
  }
  return out;
}

}  // namespace hyperrank
