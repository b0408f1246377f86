#include "k3walls/classify.hpp"

#include <algorithm>

namespace k3walls {

namespace {

using Row = std::array<Integer, 3>;

Row to_row(const MukaiVector& u) { return {u.r, u.c, u.s}; }
MukaiVector from_row(const Row& a) { return {a[0], a[1], a[2]}; }

MukaiVector cross(const MukaiVector& a, const MukaiVector& b) {
  return {a.c * b.s - a.s * b.c, a.s * b.r - a.r * b.s, a.r * b.c - a.c * b.r};
}

std::optional<std::array<Integer, 2>> coordinates(const std::array<MukaiVector, 2>& basis,
                                                   const MukaiVector& u) {
  const Row b0 = to_row(basis[0]), b1 = to_row(basis[1]), x = to_row(u);
  int p0 = 0;
  while (b0[p0] == 0) ++p0;
  int p1 = 0;
  while (b1[p1] == 0) ++p1;
  if (x[p0] % b0[p0] != 0) return std::nullopt;
  const Integer a = x[p0] / b0[p0];
  const Integer rest = x[p1] - a * b0[p1];
  if (rest % b1[p1] != 0) return std::nullopt;
  const Integer b = rest / b1[p1];
  if (!(a * basis[0] + b * basis[1] == u)) return std::nullopt;
  return std::array<Integer, 2>{a, b};
}

}  // namespace

bool WallLattice::contains(const MukaiVector& u) const { return coordinates(basis, u).has_value(); }

std::vector<MukaiVector> hermite_normal_form(std::vector<MukaiVector> input) {
  std::vector<Row> rows;
  for (const auto& u : input) rows.push_back(to_row(u));
  std::size_t pivot_row = 0;
  for (int col = 0; col < 3 && pivot_row < rows.size(); ++col) {
    // gcd-combine column entries into pivot_row
    for (std::size_t k = pivot_row + 1; k < rows.size(); ++k) {
      if (rows[k][col] == 0) continue;
      Integer x, y;
      const Integer g = ext_gcd(rows[pivot_row][col], rows[k][col], x, y);
      const Integer a = rows[pivot_row][col] / g, b = rows[k][col] / g;
      Row top, bottom;
      for (int j = 0; j < 3; ++j) {
        top[j] = x * rows[pivot_row][j] + y * rows[k][j];
        bottom[j] = -b * rows[pivot_row][j] + a * rows[k][j];
      }
      rows[pivot_row] = top;
      rows[k] = bottom;
    }
    if (rows[pivot_row][col] == 0) continue;
    if (rows[pivot_row][col] < 0)
      for (auto& e : rows[pivot_row]) e = -e;
    for (std::size_t k = 0; k < pivot_row; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][col].get_mpz_t(), rows[pivot_row][col].get_mpz_t());
      for (int j = 0; j < 3; ++j) rows[k][j] -= q * rows[pivot_row][j];
    }
    ++pivot_row;
  }
  std::vector<MukaiVector> out;
  for (std::size_t k = 0; k < pivot_row; ++k) out.push_back(from_row(rows[k]));
  return out;
}

std::array<MukaiVector, 2> integer_kernel(const MukaiVector& normal) {
  if (normal.is_zero()) throw DomainError("kernel of the zero functional has rank 3");
  Row a = to_row(normal.primitive());
  // Columns of a unimodular U with a U = (g, 0, 0).
  std::array<Row, 3> cols = {Row{1, 0, 0}, Row{0, 1, 0}, Row{0, 0, 1}};
  for (int j = 1; j < 3; ++j) {
    if (a[j] == 0) continue;
    Integer x, y;
    const Integer g = ext_gcd(a[0], a[j], x, y);
    const Integer p = a[0] / g, q = a[j] / g;
    Row c0, cj;
    for (int i = 0; i < 3; ++i) {
      c0[i] = x * cols[0][i] + y * cols[j][i];
      cj[i] = -q * cols[0][i] + p * cols[j][i];
    }
    cols[0] = c0;
    cols[j] = cj;
    a[0] = g;
    a[j] = 0;
  }
  auto hnf = hermite_normal_form({from_row(cols[1]), from_row(cols[2])});
  return {hnf.at(0), hnf.at(1)};
}

WallLattice wall_lattice(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w) {
  const MukaiVector normal = cross(v, w);
  if (normal.is_zero()) throw DomainError("w = " + to_string(w) + " is proportional to v");
  WallLattice lat;
  lat.basis = integer_kernel(normal);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) lat.gram[i][j] = mukai_pairing(cfg, lat.basis[i], lat.basis[j]);
  auto coords = coordinates(lat.basis, v);
  if (!coords) throw InconsistencyError("v is not in its own wall lattice");
  lat.v_coords = *coords;
  return lat;
}

NormPairingSolutions solve_on_line(const K3Config& cfg, const WallLattice& lat,
                                   const std::array<Integer, 2>& linear, const Integer& n,
                                   const Integer& c) {
  (void)cfg;
  NormPairingSolutions out;
  const Integer g = gcd(linear[0], linear[1]);
  if (g == 0) throw DomainError("linear condition vanishes on the lattice");
  if (c % g != 0) return out;

  Integer x, y;
  ext_gcd(linear[0], linear[1], x, y);
  const std::array<Integer, 2> p{x * (c / g), y * (c / g)};
  const std::array<Integer, 2> d{linear[1] / g, -linear[0] / g};

  const auto& G = lat.gram;
  auto form = [&](const std::array<Integer, 2>& a, const std::array<Integer, 2>& b) -> Integer {
    return G[0][0] * a[0] * b[0] + G[0][1] * (a[0] * b[1] + a[1] * b[0]) + G[1][1] * a[1] * b[1];
  };
  // Q(p + k d) - n = A k^2 + B k + C
  const Integer A = form(d, d);
  const Integer B = 2 * form(p, d);
  const Integer C = form(p, p) - n;

  std::vector<Integer> ks;
  if (A != 0) {
    const Integer disc = B * B - 4 * A * C;
    if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) return out;
    const Integer root = sqrt(disc);
    for (const Integer& num : {Integer(-B - root), Integer(-B + root)})
      if (num % (2 * A) == 0) ks.push_back(num / (2 * A));
  } else if (B != 0) {
    if (C % B == 0) ks.push_back(-C / B);
  } else if (C == 0) {
    out.infinite = true;
    out.family_direction = lat.element(d[0], d[1]);
    ks.push_back(0);
  }
  for (const auto& k : ks) out.classes.push_back(lat.element(p[0] + k * d[0], p[1] + k * d[1]));
  std::sort(out.classes.begin(), out.classes.end());
  out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());
  return out;
}

NormPairingSolutions solve_norm_pairing(const K3Config& cfg, const WallLattice& lat,
                                        const MukaiVector& v, const Integer& n, const Integer& c) {
  const std::array<Integer, 2> linear{mukai_pairing(cfg, lat.basis[0], v),
                                      mukai_pairing(cfg, lat.basis[1], v)};
  return solve_on_line(cfg, lat, linear, n, c);
}

WallTypeRecord classify_wall(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w) {
  WallTypeRecord rec;
  rec.lattice = wall_lattice(cfg, v, w);
  const Integer v2 = square(cfg, v);

  auto collect = [&](const Integer& n, const Integer& c, WitnessRole role) {
    const auto sol = solve_norm_pairing(cfg, rec.lattice, v, n, c);
    for (const auto& u : sol.classes) rec.witnesses.push_back({u, role, c});
    return !sol.classes.empty();
  };

  if (collect(0, 1, WitnessRole::IsotropicPairingOne)) {
    rec.kind = WallKind::Divisorial;
    rec.divisorial = DivisorialType::HilbertChow;
  } else if (collect(0, 2, WitnessRole::IsotropicPairingTwo)) {
    rec.kind = WallKind::Divisorial;
    rec.divisorial = DivisorialType::LiGiesekerUhlenbeck;
  } else if (collect(-2, 0, WitnessRole::SphericalOrthogonal)) {
    rec.kind = WallKind::Divisorial;
    rec.divisorial = DivisorialType::BrillNoether;
  } else {
    bool flop = false;
    for (Integer c = 1; 2 * c <= v2; ++c) flop = collect(-2, c, WitnessRole::SphericalFlop) || flop;
    if (flop) rec.kind = WallKind::Flopping;
  }
  rec.bouncing = rec.kind == WallKind::Divisorial;

  const Integer reach = std::max(Integer(1), Integer(v2 / 2));
  for (Integer c = -1; c >= -reach; --c)
    rec.totally_semistable_flag = collect(-2, c, WitnessRole::SphericalNegative) || rec.totally_semistable_flag;
  return rec;
}

std::string to_string(WallKind kind) {
  switch (kind) {
    case WallKind::Divisorial: return "divisorial";
    case WallKind::Flopping: return "flopping";
    case WallKind::FakeOrUnknown: return "fake-or-unknown";
  }
  return "?";
}

std::string to_string(DivisorialType type) {
  switch (type) {
    case DivisorialType::None: return "none";
    case DivisorialType::LiGiesekerUhlenbeck: return "li-gieseker-uhlenbeck";
    case DivisorialType::BrillNoether: return "brill-noether";
    case DivisorialType::HilbertChow: return "hilbert-chow";
  }
  return "?";
}

std::string to_string(WitnessRole role) {
  switch (role) {
    case WitnessRole::IsotropicPairingOne: return "isotropic-pairing-1";
    case WitnessRole::IsotropicPairingTwo: return "isotropic-pairing-2";
    case WitnessRole::SphericalOrthogonal: return "spherical-orthogonal";
    case WitnessRole::SphericalFlop: return "spherical-flop";
    case WitnessRole::SphericalNegative: return "spherical-negative";
  }
  return "?";
}

}  // namespace k3walls
