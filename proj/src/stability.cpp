#include "k3walls/stability.hpp"

namespace k3walls {

StabilityPoint::StabilityPoint(Rational b, Rational a2) : beta(std::move(b)), alpha2(std::move(a2)) {
  if (sgn(alpha2) <= 0) throw DomainError("alpha^2 must be positive, got " + to_string(alpha2));
}

ReducedCharge reduced_charge(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& u) {
  const Rational h(cfg.h2);
  const Rational& b = pt.beta;
  Rational re = -Rational(u.s) + h * b * Rational(u.c) +
                h / 2 * (pt.alpha2 - b * b) * Rational(u.r);
  Rational im = h * (Rational(u.c) - b * Rational(u.r));
  return {re, im};
}

std::optional<Rational> slope_mu_beta(const MukaiVector& u, const Rational& beta) {
  if (u.r == 0) return std::nullopt;
  return make_rational(u.c, u.r) - beta;
}

std::strong_ordering slope_compare(const K3Config& cfg, const StabilityPoint& pt,
                                   const MukaiVector& u, const MukaiVector& w) {
  const ReducedCharge zu = reduced_charge(cfg, pt, u);
  const ReducedCharge zw = reduced_charge(cfg, pt, w);
  if (sgn(zu.im_over_alpha) <= 0 || sgn(zw.im_over_alpha) <= 0)
    throw DomainError("slope_compare needs Im Z > 0 for both classes");
  // -re_u / im_u  vs  -re_w / im_w, both denominators positive
  const Rational lhs = -zu.re * zw.im_over_alpha;
  const Rational rhs = -zw.re * zu.im_over_alpha;
  const int c = cmp(lhs, rhs);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int expected_shift(const MukaiVector& u, const Rational& beta) {
  return sgn(Rational(u.c) - beta * Rational(u.r)) > 0 ? 0 : 1;
}

namespace {

// Root of rank q*t on the ray beta = p/q, if delta.s is integral.
std::optional<HoleReport> root_at(const K3Config& cfg, const Integer& p, const Integer& q,
                                  const Integer& t) {
  const Integer numer = cfg.h2 * p * p * t * t + 2;
  const Integer denom = 2 * q * t;
  if (numer % denom != 0) return std::nullopt;
  MukaiVector delta{q * t, p * t, numer / denom};
  return HoleReport{delta, make_rational(Integer(2), cfg.h2 * delta.r * delta.r)};
}

}  // namespace

std::vector<HoleReport> find_holes_on_ray(const K3Config& cfg, const Rational& beta,
                                          unsigned search_limit) {
  std::vector<HoleReport> out;
  const Integer p = beta.get_num();
  const Integer q = beta.get_den();
  for (unsigned t = 1; t <= search_limit; ++t)
    if (auto hole = root_at(cfg, p, q, Integer(t))) out.push_back(*hole);
  return out;
}

bool is_valid_point(const K3Config& cfg, const StabilityPoint& pt) {
  const Rational h(cfg.h2);
  // The largest possible threshold is 2/H^2 (rank-one root at integral beta),
  // attained only there; strictly above it every point is valid.
  if (pt.alpha2 * h > 2) return true;
  const Integer p = pt.beta.get_num();
  const Integer q = pt.beta.get_den();
  // threshold 2/(h q^2 t^2) >= alpha2  <=>  t^2 <= 2/(h q^2 alpha2)
  const Rational bound = Rational(2) / (h * Rational(q * q) * pt.alpha2);
  const Integer t_max = sqrt(floor(bound));
  for (Integer t = 1; t <= t_max; ++t)
    if (root_at(cfg, p, q, t)) return false;
  return true;
}

}  // namespace k3walls
