#pragma once

#include "k3walls/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3walls {

/// Rank-2 saturated sublattice of the Mukai lattice containing v and a wall
/// class w (the hyperbolic lattice of the wall).
struct WallLattice {
  std::array<MukaiVector, 2> basis;  // Hermite normal form rows
  std::array<std::array<Integer, 2>, 2> gram;
  std::array<Integer, 2> v_coords;

  MukaiVector element(const Integer& x, const Integer& y) const {
    return x * basis[0] + y * basis[1];
  }
  Integer determinant() const { return gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]; }
  bool contains(const MukaiVector& u) const;
};

/// Row-style Hermite normal form of the lattice spanned by the given
/// integer vectors: pivots positive, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
std::vector<MukaiVector> hermite_normal_form(std::vector<MukaiVector> rows);

/// Basis (in Hermite normal form) of {x in Z^3 : n . x = 0} for the standard dot product.
std::array<MukaiVector, 2> integer_kernel(const MukaiVector& n);

/// Saturation of Z v + Z w. Throws DomainError when w is proportional to v.
WallLattice wall_lattice(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w);

/// All u in L with u^2 = n and <u, target> = c. `infinite` is set (and
/// `classes` holds the family's base point) when the solutions form an
/// infinite arithmetic progression along an isotropic direction.
struct NormPairingSolutions {
  std::vector<MukaiVector> classes;
  bool infinite = false;
  std::optional<MukaiVector> family_direction;
};

/// Solves u^2 = n, linear(u) = c over L where linear(x b0 + y b1) = x a0 + y a1.
NormPairingSolutions solve_on_line(const K3Config& cfg, const WallLattice& lattice,
                                   const std::array<Integer, 2>& linear, const Integer& n,
                                   const Integer& c);

NormPairingSolutions solve_norm_pairing(const K3Config& cfg, const WallLattice& lattice,
                                        const MukaiVector& v, const Integer& n, const Integer& c);

enum class WallKind { Divisorial, Flopping, FakeOrUnknown };
enum class DivisorialType { None, LiGiesekerUhlenbeck, BrillNoether, HilbertChow };

enum class WitnessRole {
  IsotropicPairingOne,   // u^2 = 0, <u,v> = 1
  IsotropicPairingTwo,   // u^2 = 0, <u,v> = 2
  SphericalOrthogonal,   // s^2 = -2, <s,v> = 0
  SphericalFlop,         // s^2 = -2, 0 < <s,v> <= v^2/2
  SphericalNegative,     // s^2 = -2, <s,v> < 0
};

struct Witness {
  MukaiVector u;
  WitnessRole role;
  Integer pairing;
};

struct WallTypeRecord {
  WallKind kind = WallKind::FakeOrUnknown;
  DivisorialType divisorial = DivisorialType::None;
  bool bouncing = false;
  /// A spherical class with negative pairing against v exists in the wall
  /// lattice. Whether it is effective is not decided here.
  bool totally_semistable_flag = false;
  std::vector<Witness> witnesses;
  WallLattice lattice;
};

/// Wall type from isotropic and spherical classes of the wall lattice,
/// tested in order: Hilbert-Chow, Li-Gieseker-Uhlenbeck, Brill-Noether,
/// flopping. Anything else is FakeOrUnknown.
WallTypeRecord classify_wall(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w);

std::string to_string(WallKind kind);
std::string to_string(DivisorialType type);
std::string to_string(WitnessRole role);

}  // namespace k3walls
