#include "k3walls/lattice.hpp"

#include <sstream>
#include <vector>

namespace k3walls {

K3Config::K3Config(Integer h2_value) : h2(std::move(h2_value)) {
  if (h2 < 2 || h2 % 2 != 0)
    throw DomainError("H^2 must be an even integer >= 2, got " + h2.get_str());
}

bool operator<(const MukaiVector& a, const MukaiVector& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.c != b.c) return a.c < b.c;
  return a.s < b.s;
}

Integer MukaiVector::content() const { return gcd(gcd(r, c), s); }

MukaiVector MukaiVector::primitive() const {
  const Integer g = content();
  if (g == 0) return *this;
  return {r / g, c / g, s / g};
}

std::string to_string(const MukaiVector& u) {
  return u.r.get_str() + "," + u.c.get_str() + "," + u.s.get_str();
}

MukaiVector parse_mukai(const std::string& text) {
  std::vector<Integer> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational q = parse_rational(item);
    if (!is_integer(q)) throw std::invalid_argument("non-integer entry in '" + text + "'");
    parts.push_back(q.get_num());
  }
  if (parts.size() != 3 || (!text.empty() && text.back() == ','))
    throw std::invalid_argument("expected three integers 'a,b,c', got '" + text + "'");
  return {parts[0], parts[1], parts[2]};
}

Integer mukai_pairing(const K3Config& cfg, const MukaiVector& u, const MukaiVector& w) {
  return cfg.h2 * u.c * w.c - u.r * w.s - u.s * w.r;
}

Integer square(const K3Config& cfg, const MukaiVector& u) { return mukai_pairing(cfg, u, u); }

MukaiVector chern_to_mukai(const K3Config& cfg, const ChernVector& ch) {
  const Integer ch2 = ch.c1 * ch.c1 * cfg.h2 / 2 - ch.c2;
  return {ch.rank, ch.c1, ch2 + ch.rank};
}

Integer euler_chi(const K3Config& cfg, const MukaiVector& u, const MukaiVector& w) {
  return -mukai_pairing(cfg, u, w);
}

ChernCharacter chern_character(const MukaiVector& u) {
  return {Rational(u.r), Rational(u.c), Rational(u.s - u.r)};
}

ChernCharacter graded_product(const K3Config& cfg, const ChernCharacter& a,
                              const ChernCharacter& b) {
  return {a.rank * b.rank, a.rank * b.h + a.h * b.rank,
          a.rank * b.pt + a.pt * b.rank + a.h * b.h * Rational(cfg.h2)};
}

Rational hrr_oracle(const K3Config& cfg, const ChernCharacter& chE, const ChernCharacter& chF) {
  const ChernCharacter dual{chE.rank, -chE.h, chE.pt};
  const ChernCharacter todd{1, 0, 2};
  return graded_product(cfg, graded_product(cfg, dual, chF), todd).pt;
}

bool is_spherical(const K3Config& cfg, const MukaiVector& u) { return square(cfg, u) == -2; }
bool is_isotropic(const K3Config& cfg, const MukaiVector& u) { return square(cfg, u) == 0; }
bool is_primitive(const MukaiVector& u) { return u.content() == 1; }

std::array<std::array<Integer, 3>, 3> ambient_gram(const K3Config& cfg) {
  const MukaiVector basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::array<std::array<Integer, 3>, 3> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = mukai_pairing(cfg, basis[i], basis[j]);
  return g;
}

Signature signature(const std::array<std::array<Integer, 3>, 3>& m) {
  // det(tI - M) = t^3 - c2 t^2 + c1 t - c0
  const Integer trace = m[0][0] + m[1][1] + m[2][2];
  const Integer minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] -
                         m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
  const Integer det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const Integer coeffs[4] = {1, -trace, minors, -det};

  Signature sig;
  int lowest = 3;
  while (lowest > 0 && coeffs[lowest] == 0) --lowest;
  sig.zero = 3 - lowest;
  auto sign_changes = [&](bool alternate) {
    int changes = 0, prev = 0;
    for (int i = 0; i <= lowest; ++i) {
      int s = sgn(coeffs[i]);
      if (alternate && ((lowest - i) % 2 == 1)) s = -s;
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  };
  sig.positive = sign_changes(false);
  sig.negative = sign_changes(true);
  return sig;
}

}  // namespace k3walls
