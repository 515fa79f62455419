#pragma once

// p-adic geometry on R^n: cubes, angles, the rescaling map iota_Q,
// neighbourhoods of 2-planes, fans, and the fan orthogonality test.
//
// Point sets are sorted vectors of point indices.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hyperrank/incidence.hpp"
#include "hyperrank/phi.hpp"
#include "hyperrank/ring.hpp"

namespace hyperrank {

using PointSet = std::vector<std::uint64_t>;

/// angle(b, b') = p^-s where p^s exactly divides b - b'. Returns s, or
/// kAngleEqual when b == b'.
inline constexpr std::uint32_t kAngleEqual = std::numeric_limits<std::uint32_t>::max();
std::uint32_t angle(const Direction& b, const Direction& b2, const RingCtx& ctx);

/// {y : y = base mod p^scale}.
struct Cube {
  std::uint32_t scale = 0;
  Point base;

  bool contains(const Point& x, const RingCtx& ctx) const;
  bool contains(std::uint64_t index, const RingCtx& ctx) const;
  PointSet members(const RingCtx& ctx) const;
};

/// Q_scale(x).
Cube cube_of(const Point& x, std::uint32_t scale, const RingCtx& ctx);

/// iota_Q(x' + p^l x'') = x'' with x' = x mod p^l; the result lies in
/// R_{k-l}^n and its index uses that codec. Throws std::invalid_argument
/// when x is not in Q.
Point iota(const Cube& q, const Point& x, const RingCtx& ctx);
PointSet iota(const Cube& q, std::span<const std::uint64_t> s, const RingCtx& ctx);

/// pi_l applied to every point, as sorted R_l^n indices.
PointSet project_set(std::span<const std::uint64_t> s, std::uint32_t scale, const RingCtx& ctx);

/// Largest j <= k with p^j | (x - s) for some s in S (k when x in S).
/// Throws std::invalid_argument for empty S.
std::uint32_t dist_exponent(const Point& x, std::span<const std::uint64_t> s, const RingCtx& ctx);

/// N_j(S) = {x : x = s mod p^j for some s in S}; empty for empty S.
PointSet neighbourhood(std::span<const std::uint64_t> s, std::uint32_t j, const RingCtx& ctx);

/// span_R(u, v) through the anchor: {a + s u + t v}.
PointSet plane_points(const Point& anchor, const Direction& u, const Direction& v, const RingCtx& ctx);

/// Pi = Q' intersected with N_{l+1}(a + span(u, v)).
struct Plane2Nbhd {
  Point anchor;
  Direction u;
  Direction v;
  std::uint32_t nbhd_scale = 1;  // l + 1

  /// Throws std::invalid_argument unless angle(u, v) = 1 (s = 0).
  static Plane2Nbhd make(const Point& anchor, const Direction& u, const Direction& v, std::uint32_t nbhd_scale,
                         const RingCtx& ctx);

  /// x in N_{nbhd_scale}(a + span(u, v)); Q' membership is checked separately.
  bool near(const Point& x, const RingCtx& ctx) const;
};

struct Fan {
  std::uint32_t scale = 0;
  Cube qprime;
  Cube q;
  std::vector<Line> lines;
  std::optional<Plane2Nbhd> plane;
  /// X = union of (L_i intersect Q') minus Q.
  PointSet points;
};

/// Validates and materializes a fan. Throws std::invalid_argument naming
/// the first violated condition: scale outside 0 <= l <= k - 2, cube
/// scales or containment, line count != p + 1, a line missing Q, a pair
/// of lines with angle below 1, repeated direction classes mod p, a
/// missing plane for n > 2, Q != Q_{l+1}(anchor), or a line leaving Pi.
Fan make_fan(const RingCtx& ctx, std::uint32_t scale, const Cube& qprime, const Cube& q, std::vector<Line> lines,
             std::optional<Plane2Nbhd> plane = std::nullopt);

/// The bound on the fan scale as printed in the source definition (p - 2);
/// make_fan uses k - 2. Reported alongside fans.
inline std::int64_t stated_scale_bound(const RingCtx& ctx) { return static_cast<std::int64_t>(ctx.p()) - 2; }

struct FanMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  /// Exhaustive mode refuses families larger than this.
  std::uint64_t budget = 2'000'000;
};

/// Number of fans exhaustive mode would produce (n = 2 only).
std::uint64_t fan_family_size(const RingCtx& ctx, std::uint32_t scale);

/// Streams fans on the given scale to `sink`; returns how many were
/// produced. Exhaustive mode covers every (Q', Q, one line per direction
/// class mod p) for n = 2 and throws std::invalid_argument for n > 2.
/// Sampled fan i depends only on (seed, i); for n > 2 lines run along
/// s u + t v for the p + 1 classes (s : t) and start in Q, so they stay in Pi.
std::uint64_t fan_family(const RingCtx& ctx, std::uint32_t scale, const FanMode& mode,
                         const std::function<void(const Fan&)>& sink);
std::vector<Fan> fan_family(const RingCtx& ctx, std::uint32_t scale, const FanMode& mode);

/// Sampled fan number `index` of a seeded family. Throws
/// std::invalid_argument for n < 2.
Fan sample_fan(const RingCtx& ctx, std::uint32_t scale, std::uint64_t seed, std::uint64_t index);

struct IncidenceCount {
  std::uint64_t count;
  std::uint64_t residue;
};
IncidenceCount incidence_count(std::span<const std::uint64_t> s, std::span<const std::uint64_t> t, std::uint32_t p);

/// sum over x in S of f(x), mod p.
std::uint32_t sum_over(const FnTable& f, std::span<const std::uint64_t> s);

struct FanViolation {
  std::uint64_t fan_index;
  std::uint32_t sum;
};

struct FanTestReport {
  std::uint64_t fans_checked = 0;
  std::vector<FanViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// sum_{x in X} f(x) mod p for every fan; a nonzero sum certifies that f
/// is not a hyperplane function.
FanTestReport fan_test(const FnTable& f, std::span<const Fan> fans);

/// sum over L intersect Q of f equals the same sum over L' mod p. Throws
/// std::invalid_argument when deg f > p^k - 1 (naming the degree), when
/// the lines have different directions, or when either misses Q.
bool parallel_line_check(const FnTable& f, const Cube& q, const Line& l1, const Line& l2);

}  // namespace hyperrank
