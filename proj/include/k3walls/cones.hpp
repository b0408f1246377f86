#pragma once

#include "k3walls/classify.hpp"
#include "k3walls/stability.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3walls {

/// Orthogonal basis of v-perp (identified with NS of the moduli space).
/// e1^2 > 0 > e2^2; e1 is the image of the vertical wall when v.r != 0, and
/// both are oriented so that Gieseker-chamber ample classes have positive
/// coordinates.
struct NSBasis {
  MukaiVector e1, e2;
  Integer e1_sq, e2_sq;
};

/// Primitive integral class in v-perp and its coordinates a e1 + b e2.
struct NSRay {
  MukaiVector ambient;
  Rational a, b;

  friend bool operator==(const NSRay& x, const NSRay& y) { return x.ambient == y.ambient; }
};

NSBasis orthogonal_basis(const K3Config& cfg, const MukaiVector& v);

/// Ray through an (integral or rational) class of v-perp, scaled positively
/// to a primitive integral vector.
NSRay make_ray(const K3Config& cfg, const NSBasis& basis, const std::array<Rational, 3>& u);

/// The same ray up to sign: first nonzero of (a, b) made positive.
NSRay normalize_line(const NSRay& ray);

/// Generator of v-perp ∩ w-perp, line-normalized.
NSRay wall_image(const K3Config& cfg, const NSBasis& basis, const MukaiVector& v, const MukaiVector& w);
NSRay wall_image(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w);

/// Unnormalized Im(-Omega / Z(v)) / alpha as an ambient rational vector.
std::array<Rational, 3> l_vector(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& v);

/// The ray l(sigma_{alpha,beta}) in NS. Throws DomainError at points that
/// are not stability conditions.
NSRay compute_l(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& v);
NSRay compute_l(const K3Config& cfg, const NSBasis& basis, const StabilityPoint& pt,
                const MukaiVector& v);

/// Point used to orient e2: beta = v.c/v.r - sign(v.r), alpha^2 = 2. Along
/// a vertical ray the e2-coordinate of l does not depend on alpha, so this
/// fixes the sign of the Gieseker side.
StabilityPoint gieseker_reference_point(const MukaiVector& v);

struct Reflection {
  std::array<Rational, 3> value;
  bool integral = true;
  MukaiVector as_integral() const;
};

/// u - 2 <u,d>/<d,d> d. Throws DomainError for isotropic d.
Reflection reflect(const K3Config& cfg, const MukaiVector& d, const MukaiVector& u);

/// Slope b/a of a ray a e1 + b e2 with a > 0; irrational slopes are kept as
/// sign * sqrt(square).
struct Slope {
  std::optional<Rational> value;
  int sign = 0;
  Rational square;

  static Slope rational(const Rational& x);
  static Slope signed_sqrt(int sign, const Rational& square);
};

/// -1, 0, 1
int compare(const Slope& x, const Slope& y);
std::string to_string(const Slope& s);

struct ConeEdge {
  Slope slope;
  std::optional<NSRay> ray;  // absent for irrational positive-cone boundaries
};

struct Chamber {
  std::string label;
  ConeEdge lower, upper;
  std::string model;
  bool nef = false;
};

/// Wall data consumed by cone assembly.
struct ClassifiedWall {
  MukaiVector witness;
  WallTypeRecord type;
  NSRay image;
  /// Name of the model reached by crossing this wall away from the Gieseker
  /// side; empty when unknown.
  std::string crossed_model;
};

struct ConeChart {
  NSBasis basis;
  std::array<ConeEdge, 2> pos;
  std::array<ConeEdge, 2> mov;
  std::array<ConeEdge, 2> nef;
  NSRay ample;
  /// Flopping-wall images inside Mov after reflection, sorted by slope.
  std::vector<NSRay> chamber_walls;
  std::vector<Chamber> chambers;
  /// Reflections applied: (source image, divisorial class, result).
  std::vector<std::array<MukaiVector, 3>> reflections;
};

/// Divisorial class of a wall: generator of H_W ∩ v-perp.
MukaiVector divisorial_class(const K3Config& cfg, const WallLattice& lattice, const MukaiVector& v);

/// Cones of v-perp cut by the given walls. `ample_point` must lie in the
/// Gieseker chamber; its l-image marks the nef chamber. Throws
/// InconsistencyError when a divisorial or flopping image leaves the closed
/// positive cone or the ample class lands on a wall.
ConeChart assemble_cones(const K3Config& cfg, const MukaiVector& v,
                         const std::vector<ClassifiedWall>& walls, const StabilityPoint& ample_point,
                         const std::string& gieseker_model = "M[v]");

Slope slope_of(const NSRay& ray);

}  // namespace k3walls
