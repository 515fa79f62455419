#pragma once

// Projective directions, hyperplanes and lines in R^n, and the 0/1
// point-hyperplane incidence matrices over Z/pZ.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperrank/check.hpp"
#include "hyperrank/errors.hpp"
#include "hyperrank/gfp_matrix.hpp"
#include "hyperrank/ring.hpp"

namespace hyperrank {

/// A nondegenerate direction in canonical form: the first unit coordinate
/// is 1 and every earlier coordinate is divisible by p.
struct Direction {
  Point rep;

  friend bool operator==(const Direction& a, const Direction& b) { return a.rep == b.rep; }
};

/// Scales v by the inverse of its first unit coordinate. Throws
/// std::invalid_argument when v has no unit coordinate.
Direction canonical_direction(const Point& v, const RingCtx& ctx);

/// p^((k-1)(n-1)) (p^n - 1) / (p - 1).
std::uint64_t direction_count(const RingCtx& ctx);

/// One canonical representative per projective class. Ordered by the
/// position of the leading 1 (coordinate 1 first), then by point index.
/// Every matrix indexed by directions uses this order.
std::vector<Direction> directions(const RingCtx& ctx);

/// H_b(a) = {x : <x - a, b> = 0}.
struct Hyperplane {
  Direction b;
  Point a;

  bool contains(const Point& x, const RingCtx& ctx) const;
  /// Sorted point indices.
  std::vector<std::uint64_t> members(const RingCtx& ctx) const;
};

/// L_b(a) = {a + t b : t in R}.
struct Line {
  Direction b;
  Point a;

  /// Point a + t b.
  Point at(std::uint64_t t, const RingCtx& ctx) const;
  /// Sorted point indices.
  std::vector<std::uint64_t> members(const RingCtx& ctx) const;
};

enum class IncidenceKind {
  W,             // rows x, columns y in R^n: <x, y> = 0
  Wstar,         // rows b (direction order), columns x: <x, b> = 0
  AstarLiteral,  // rows (b, a) with b outer, columns x: x in H_b(a)
};

/// Largest p^(kn) for which the literal affine matrix is built.
inline constexpr std::uint64_t kAstarLiteralMaxPoints = 256;

/// Builds one incidence matrix. Throws BudgetExceeded when rows * cols
/// exceeds `budget` (or, for AstarLiteral, when p^(kn) > 256); the affine
/// rank is then available from the reduced spanning set (hyperspan_dim).
MatGFp build_incidence(IncidenceKind kind, const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);

/// Rank of the columns of W indexed by B_j = {p^j b : b a direction},
/// paired with rank W* over Z/p^(k-j)Z, for j = 0..k-1.
struct ScaleBlockRank {
  std::uint32_t j;
  std::uint64_t block_rank;
  std::uint64_t reduced_rank;
};
std::vector<ScaleBlockRank> scale_block_ranks(const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);

struct RankReport {
  explicit RankReport(const RingCtx& c) : ctx(c) {}

  RingCtx ctx;
  std::optional<std::uint64_t> rank_W;
  std::optional<std::uint64_t> rank_Wstar;
  std::optional<std::uint64_t> dim_H;
  /// "span" (phi-form spanning set) or "omitted".
  std::string dim_H_path = "omitted";
  /// Rank of the literal affine matrix, when small enough to build.
  std::optional<std::uint64_t> rank_Astar_literal;
  std::vector<Check> checks;
  std::vector<std::string> omitted;
  double seconds = 0;

  bool passed() const { return all_pass(checks); }
  bool complete() const { return omitted.empty(); }
};

/// Ranks of W, W*, and dim H, plus every inequality relating them that is
/// computable within `budget`. Never throws BudgetExceeded; anything over
/// budget is listed in `omitted`.
RankReport rank_report(const RingCtx& ctx, std::uint64_t budget = kDefaultEntryBudget);

}  // namespace hyperrank
