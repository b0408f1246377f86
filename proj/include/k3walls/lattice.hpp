#pragma once

#include "k3walls/arith.hpp"

#include <array>
#include <string>

namespace k3walls {

/// Numerical data of a K3 surface with Picard group generated by H.
struct K3Config {
  Integer h2;  // H^2, even and >= 2

  explicit K3Config(Integer h2_value);
  Integer genus() const { return h2 / 2 + 1; }
};

/// Class (rank, c1 as a multiple of H, ch2 + rank) in the algebraic Mukai
/// lattice of a Picard-rank-1 K3 surface.
struct MukaiVector {
  Integer r, c, s;

  MukaiVector() : r(0), c(0), s(0) {}
  MukaiVector(Integer rank, Integer c1, Integer s2)
      : r(std::move(rank)), c(std::move(c1)), s(std::move(s2)) {}

  friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
    return a.r == b.r && a.c == b.c && a.s == b.s;
  }
  friend bool operator<(const MukaiVector& a, const MukaiVector& b);

  MukaiVector operator-() const { return {-r, -c, -s}; }
  friend MukaiVector operator+(const MukaiVector& a, const MukaiVector& b) {
    return {a.r + b.r, a.c + b.c, a.s + b.s};
  }
  friend MukaiVector operator-(const MukaiVector& a, const MukaiVector& b) {
    return {a.r - b.r, a.c - b.c, a.s - b.s};
  }
  friend MukaiVector operator*(const Integer& k, const MukaiVector& a) {
    return {k * a.r, k * a.c, k * a.s};
  }

  bool is_zero() const { return r == 0 && c == 0 && s == 0; }
  Integer content() const;
  MukaiVector primitive() const;
};

/// "r,c,s"
std::string to_string(const MukaiVector& u);
/// Parses "a,b,c" (whitespace tolerated). Throws std::invalid_argument.
MukaiVector parse_mukai(const std::string& text);

/// (rank, c1, c2) with c1 a multiple of H and c2 an integer.
struct ChernVector {
  Integer rank, c1, c2;
};

/// Chern character (rank, H-coefficient, degree-4 integral).
struct ChernCharacter {
  Rational rank, h, pt;
};

/// <u,w> = H^2 u.c w.c - u.r w.s - u.s w.r
Integer mukai_pairing(const K3Config& cfg, const MukaiVector& u, const MukaiVector& w);
Integer square(const K3Config& cfg, const MukaiVector& u);

MukaiVector chern_to_mukai(const K3Config& cfg, const ChernVector& ch);

/// chi(E, F) = -<v(E), v(F)>
Integer euler_chi(const K3Config& cfg, const MukaiVector& u, const MukaiVector& w);

/// ch(u) = (r, c, s - r)
ChernCharacter chern_character(const MukaiVector& u);

/// Graded product in H^0 + Z.H + H^4 with H.H = H^2.
ChernCharacter graded_product(const K3Config& cfg, const ChernCharacter& a,
                              const ChernCharacter& b);

/// Degree-4 part of ch(E)^dual * ch(F) * td(S), td(S) = (1, 0, 2).
/// Computed by graded multiplication, independently of mukai_pairing.
Rational hrr_oracle(const K3Config& cfg, const ChernCharacter& chE, const ChernCharacter& chF);

bool is_spherical(const K3Config& cfg, const MukaiVector& u);
bool is_isotropic(const K3Config& cfg, const MukaiVector& u);
bool is_primitive(const MukaiVector& u);

/// Gram matrix of the pairing in the standard basis.
std::array<std::array<Integer, 3>, 3> ambient_gram(const K3Config& cfg);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Signature of a symmetric integer 3x3 matrix, read off the signs of the
/// characteristic polynomial's coefficients (Descartes' rule is exact for
/// real-rooted polynomials).
Signature signature(const std::array<std::array<Integer, 3>, 3>& m);

}  // namespace k3walls
