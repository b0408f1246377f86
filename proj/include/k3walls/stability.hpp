#pragma once

#include "k3walls/lattice.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace k3walls {

/// A point (beta, alpha^2) of the upper half-plane. alpha itself is usually
/// irrational, so only its square is stored.
struct StabilityPoint {
  Rational beta;
  Rational alpha2;

  StabilityPoint(Rational b, Rational a2);
};

/// Z(u) = re + i * alpha * im_over_alpha
struct ReducedCharge {
  Rational re;
  Rational im_over_alpha;

  friend bool operator==(const ReducedCharge&, const ReducedCharge&) = default;
};

ReducedCharge reduced_charge(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& u);

/// mu_beta(u) = u.c / u.r - beta; std::nullopt stands for +infinity (u.r = 0).
std::optional<Rational> slope_mu_beta(const MukaiVector& u, const Rational& beta);

/// Orders mu_Z(u) = -Re Z(u) / Im Z(u) against mu_Z(w). Both classes must
/// have positive imaginary part at pt.
std::strong_ordering slope_compare(const K3Config& cfg, const StabilityPoint& pt,
                                   const MukaiVector& u, const MukaiVector& w);

/// 0 when the class itself can sit in Coh^beta (positive mu_beta numerator),
/// 1 when its shift by one does.
int expected_shift(const MukaiVector& u, const Rational& beta);

/// A root delta (delta^2 = -2, rank > 0, mu_beta(delta) = 0) together with
/// the alpha^2 at which Re Z(delta) vanishes on the ray. For such roots the
/// threshold equals 2 / (H^2 delta.r^2) and is always positive.
struct HoleReport {
  MukaiVector delta;
  Rational alpha2_threshold;
};

inline constexpr unsigned kDefaultHoleSearchLimit = 64;

/// Roots on the ray {beta = p/q} with delta.r = q t for 1 <= t <= search_limit.
std::vector<HoleReport> find_holes_on_ray(const K3Config& cfg, const Rational& beta,
                                          unsigned search_limit = kDefaultHoleSearchLimit);

/// Whether sigma_{alpha,beta} is a stability condition: Re Z(delta) > 0 for
/// every root delta with rank > 0 and mu_beta(delta) = 0. The root search is
/// bounded exactly (thresholds decrease with rank), so no search limit applies.
bool is_valid_point(const K3Config& cfg, const StabilityPoint& pt);

}  // namespace k3walls
