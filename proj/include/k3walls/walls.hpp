#pragma once

#include "k3walls/stability.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace k3walls {

struct VerticalWall {
  Rational beta;
  friend bool operator==(const VerticalWall&, const VerticalWall&) = default;
};

/// Semicircle centered at (center, 0) with squared radius radius2 > 0.
struct Semicircle {
  Rational center;
  Rational radius2;
  friend bool operator==(const Semicircle&, const Semicircle&) = default;
};

using WallShape = std::variant<VerticalWall, Semicircle>;

/// A point of a wall where the central charge of a root vanishes.
struct WallHole {
  Rational beta;
  Rational alpha2;
  MukaiVector delta;
};

/// Numerical wall W(w) for a fixed class v.
struct Wall {
  WallShape shape;
  MukaiVector witness;
  std::vector<WallHole> holes;

  bool is_vertical() const { return std::holds_alternative<VerticalWall>(shape); }
  const Semicircle& circle() const { return std::get<Semicircle>(shape); }
};

/// Q = <v,v> / (H^2 v.r^2)
Rational q_invariant(const K3Config& cfg, const MukaiVector& v);

/// W(w) for v. std::nullopt when the numerical wall is empty in the open
/// half-plane (radius^2 <= 0). Throws DomainError when v.r <= 0 or when w is
/// proportional to v.
std::optional<Wall> numerical_wall(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w);

/// The center lies strictly outside the band [v.c/v.r - sqrt(Q), v.c/v.r + sqrt(Q)].
bool side_constraint_check(const K3Config& cfg, const MukaiVector& v, const Semicircle& wall);

/// alpha^2 = R^2 - (beta0 - C)^2 when positive.
std::optional<Rational> ray_intersection(const Semicircle& wall, const Rational& beta0);

/// Whether (beta, alpha2) lies on the wall (alpha2 > 0).
bool lies_on(const WallShape& shape, const Rational& beta, const Rational& alpha2);

/// The vertical wall of v (v.r > 0) with witness v + (0,0,1).
Wall vertical_wall(const MukaiVector& v);

/// Holes of a wall: roots delta with 0 < delta.r <= rank_limit whose central
/// charge vanishes at a point of the wall.
std::vector<WallHole> wall_holes(const K3Config& cfg, const WallShape& shape,
                                 unsigned rank_limit = kDefaultHoleSearchLimit);

enum class Side { LeftOfVertical, RightOfVertical };

struct SearchWindow {
  Rational beta0;
  Side side = Side::LeftOfVertical;
  unsigned rank_bound = 50;
  bool require_subobject_square = true;
  bool require_quotient_square = false;
};

struct Destabilizer {
  MukaiVector w;
  Wall wall;
};

/// Per-search evidence that raising rank_bound would not add candidates.
struct SaturationEvidence {
  unsigned rank_bound = 0;
  /// Candidates found at each rank 1..rank_bound (before deduplication).
  std::vector<unsigned> per_rank;
  std::optional<unsigned> last_nonempty_rank;
  /// Start of the first run of 10 consecutive empty ranks, if one was seen.
  std::optional<unsigned> first_empty_run;
  /// (rank, c1) pairs whose ch2 window was only bounded by the quotient square.
  unsigned quotient_bounded_cells = 0;
};

struct SearchResult {
  std::vector<Destabilizer> candidates;
  SaturationEvidence saturation;
};

/// Integer classes w with 1 <= w.r <= rank_bound destabilizing v along the ray
/// beta0 on the given side. v is taken in its Coh^beta0 representative (v or
/// -v), and each wall is reported once.
SearchResult search_destabilizers(const K3Config& cfg, const MukaiVector& v,
                                  const SearchWindow& window);

/// t = v - w
MukaiVector decompose_class(const MukaiVector& v, const MukaiVector& w);

}  // namespace k3walls
