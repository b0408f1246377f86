#include "k3walls/cones.hpp"

#include <algorithm>

namespace k3walls {

namespace {

using RVec = std::array<Rational, 3>;

// Coefficients c with <x, u> = c . x.
MukaiVector functional(const K3Config& cfg, const MukaiVector& u) {
  return {-u.s, cfg.h2 * u.c, -u.r};
}

MukaiVector cross(const MukaiVector& a, const MukaiVector& b) {
  return {a.c * b.s - a.s * b.c, a.s * b.r - a.r * b.s, a.r * b.c - a.c * b.r};
}

// Primitive integer generator of u-perp ∩ w-perp.
MukaiVector common_orthogonal(const K3Config& cfg, const MukaiVector& u, const MukaiVector& w) {
  const MukaiVector n = cross(functional(cfg, u), functional(cfg, w));
  if (n.is_zero()) throw DomainError(to_string(w) + " is proportional to " + to_string(u));
  return n.primitive();
}

Rational pair(const K3Config& cfg, const RVec& x, const MukaiVector& u) {
  const Rational h(cfg.h2);
  return h * x[1] * Rational(u.c) - x[0] * Rational(u.s) - x[2] * Rational(u.r);
}

RVec to_rvec(const MukaiVector& u) { return {Rational(u.r), Rational(u.c), Rational(u.s)}; }

// Positive multiple of x that is a primitive integer vector.
MukaiVector primitive_multiple(const RVec& x) {
  Integer l = 1;
  for (const auto& e : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  MukaiVector u;
  Integer* out[3] = {&u.r, &u.c, &u.s};
  for (int i = 0; i < 3; ++i) *out[i] = x[i].get_num() * (l / x[i].get_den());
  if (u.is_zero()) throw DomainError("zero vector has no ray");
  return u.primitive();
}

NSRay ray_from_coords(const K3Config& cfg, const NSBasis& basis, const Rational& a, const Rational& b) {
  const RVec x{a * Rational(basis.e1.r) + b * Rational(basis.e2.r),
               a * Rational(basis.e1.c) + b * Rational(basis.e2.c),
               a * Rational(basis.e1.s) + b * Rational(basis.e2.s)};
  return make_ray(cfg, basis, x);
}

const char* letters = "abcdefghijklmnopqrstuvwxyz";

std::string chamber_label(std::size_t i) {
  std::string s;
  do {
    s.insert(s.begin(), letters[i % 26]);
    i /= 26;
  } while (i-- > 0);
  return "(" + s + ")";
}

}  // namespace

StabilityPoint gieseker_reference_point(const MukaiVector& v) {
  Rational beta = 0;
  if (v.r != 0) beta = make_rational(v.c, v.r) - Rational(sgn(v.r));
  return StabilityPoint(beta, Rational(2));
}

std::array<Rational, 3> l_vector(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& v) {
  const ReducedCharge z = reduced_charge(cfg, pt, v);
  const Rational& b = pt.beta;
  const Rational h(cfg.h2);
  return {z.im_over_alpha, b * z.im_over_alpha - z.re,
          h / 2 * ((b * b - pt.alpha2) * z.im_over_alpha - 2 * b * z.re)};
}

NSBasis orthogonal_basis(const K3Config& cfg, const MukaiVector& v) {
  if (sgn(square(cfg, v)) <= 0) throw DomainError("v-perp is not hyperbolic: v^2 <= 0 for v = " + to_string(v));
  NSBasis basis;
  if (v.r != 0) {
    basis.e1 = common_orthogonal(cfg, v, MukaiVector{0, 0, 1});
  } else {
    const auto k = integer_kernel(functional(cfg, v));
    bool found = false;
    for (Integer m = 1; m <= 64 && !found; ++m)
      for (Integer x = -m; x <= m && !found; ++x)
        for (const Integer& y : {Integer(m - abs(x)), Integer(abs(x) - m)}) {
          const MukaiVector u = x * k[0] + y * k[1];
          if (!u.is_zero() && sgn(square(cfg, u)) > 0) {
            basis.e1 = u.primitive();
            found = true;
            break;
          }
        }
    if (!found) throw InconsistencyError("no positive class found in v-perp");
  }
  basis.e2 = common_orthogonal(cfg, v, basis.e1);

  const RVec l = l_vector(cfg, gieseker_reference_point(v), v);
  if (sgn(pair(cfg, l, basis.e1)) < 0) basis.e1 = -basis.e1;
  if (sgn(pair(cfg, l, basis.e2)) > 0) basis.e2 = -basis.e2;
  basis.e1_sq = square(cfg, basis.e1);
  basis.e2_sq = square(cfg, basis.e2);
  if (sgn(basis.e1_sq) <= 0 || sgn(basis.e2_sq) >= 0)
    throw InconsistencyError("v-perp basis does not have signature (1,1)");
  return basis;
}

NSRay make_ray(const K3Config& cfg, const NSBasis& basis, const std::array<Rational, 3>& u) {
  NSRay ray;
  ray.ambient = primitive_multiple(u);
  ray.a = Rational(mukai_pairing(cfg, ray.ambient, basis.e1)) / Rational(basis.e1_sq);
  ray.b = Rational(mukai_pairing(cfg, ray.ambient, basis.e2)) / Rational(basis.e2_sq);
  const RVec back{ray.a * Rational(basis.e1.r) + ray.b * Rational(basis.e2.r),
                  ray.a * Rational(basis.e1.c) + ray.b * Rational(basis.e2.c),
                  ray.a * Rational(basis.e1.s) + ray.b * Rational(basis.e2.s)};
  if (!(back == to_rvec(ray.ambient))) throw DomainError(to_string(ray.ambient) + " is not orthogonal to v");
  return ray;
}

NSRay normalize_line(const NSRay& ray) {
  const int s = sgn(ray.a) != 0 ? sgn(ray.a) : sgn(ray.b);
  if (s >= 0) return ray;
  return {-ray.ambient, -ray.a, -ray.b};
}

NSRay wall_image(const K3Config& cfg, const NSBasis& basis, const MukaiVector& v, const MukaiVector& w) {
  const MukaiVector u = common_orthogonal(cfg, v, w);
  return normalize_line(make_ray(cfg, basis, to_rvec(u)));
}

NSRay wall_image(const K3Config& cfg, const MukaiVector& v, const MukaiVector& w) {
  return wall_image(cfg, orthogonal_basis(cfg, v), v, w);
}

NSRay compute_l(const K3Config& cfg, const NSBasis& basis, const StabilityPoint& pt,
                const MukaiVector& v) {
  if (!is_valid_point(cfg, pt))
    throw DomainError("(beta, alpha^2) = (" + to_string(pt.beta) + ", " + to_string(pt.alpha2) +
                      ") is not a stability condition");
  const ReducedCharge z = reduced_charge(cfg, pt, v);
  if (sgn(z.re) == 0 && sgn(z.im_over_alpha) == 0)
    throw DomainError("Z(v) vanishes at the given point");
  return make_ray(cfg, basis, l_vector(cfg, pt, v));
}

NSRay compute_l(const K3Config& cfg, const StabilityPoint& pt, const MukaiVector& v) {
  return compute_l(cfg, orthogonal_basis(cfg, v), pt, v);
}

MukaiVector Reflection::as_integral() const {
  if (!integral) throw DomainError("reflection is not integral");
  return {value[0].get_num(), value[1].get_num(), value[2].get_num()};
}

Reflection reflect(const K3Config& cfg, const MukaiVector& d, const MukaiVector& u) {
  const Integer d2 = square(cfg, d);
  if (d2 == 0) throw DomainError("cannot reflect in an isotropic class " + to_string(d));
  const Rational k = Rational(2 * mukai_pairing(cfg, u, d)) / Rational(d2);
  Reflection out;
  out.value = {Rational(u.r) - k * Rational(d.r), Rational(u.c) - k * Rational(d.c),
               Rational(u.s) - k * Rational(d.s)};
  out.integral = std::all_of(out.value.begin(), out.value.end(), [](const Rational& x) { return is_integer(x); });
  return out;
}

Slope Slope::rational(const Rational& x) {
  Slope s;
  s.value = x;
  s.sign = sgn(x);
  s.square = x * x;
  return s;
}

Slope Slope::signed_sqrt(int sign, const Rational& square) {
  if (auto root = exact_sqrt(square)) return rational(sign < 0 ? Rational(-*root) : *root);
  Slope s;
  s.sign = sign;
  s.square = square;
  return s;
}

int compare(const Slope& x, const Slope& y) {
  if (x.value && y.value) return cmp(*x.value, *y.value);
  if (x.value) return compare_with_signed_sqrt(*x.value, y.sign, y.square);
  if (y.value) return -compare_with_signed_sqrt(*y.value, x.sign, x.square);
  if (x.sign != y.sign) return x.sign < y.sign ? -1 : 1;
  const int c = cmp(x.square, y.square);
  return x.sign >= 0 ? c : -c;
}

std::string to_string(const Slope& s) {
  if (s.value) return to_string(*s.value);
  return std::string(s.sign < 0 ? "-" : "") + "sqrt(" + to_string(s.square) + ")";
}

Slope slope_of(const NSRay& ray) {
  if (sgn(ray.a) <= 0) throw DomainError("slope needs a positive e1-coordinate");
  return Slope::rational(ray.b / ray.a);
}

MukaiVector divisorial_class(const K3Config& cfg, const WallLattice& lattice, const MukaiVector& v) {
  const Integer x = mukai_pairing(cfg, lattice.basis[1], v);
  const Integer y = -mukai_pairing(cfg, lattice.basis[0], v);
  const MukaiVector d = lattice.element(x, y);
  if (d.is_zero()) throw InconsistencyError("wall lattice is orthogonal to v");
  return d.primitive();
}

ConeChart assemble_cones(const K3Config& cfg, const MukaiVector& v,
                         const std::vector<ClassifiedWall>& walls, const StabilityPoint& ample_point,
                         const std::string& gieseker_model) {
  ConeChart chart;
  chart.basis = orthogonal_basis(cfg, v);
  const NSBasis& basis = chart.basis;
  const Rational rho = Rational(basis.e1_sq) / Rational(-basis.e2_sq);

  auto pos_edge = [&](int sign) {
    ConeEdge edge{Slope::signed_sqrt(sign, rho), std::nullopt};
    if (edge.slope.value) edge.ray = ray_from_coords(cfg, basis, Rational(1), *edge.slope.value);
    return edge;
  };
  chart.pos = {pos_edge(-1), pos_edge(1)};

  auto in_closed_pos = [&](const NSRay& image) {
    if (sgn(image.a) <= 0) return false;
    const Slope s = slope_of(image);
    return compare(s, chart.pos[0].slope) >= 0 && compare(s, chart.pos[1].slope) <= 0;
  };

  chart.ample = compute_l(cfg, basis, ample_point, v);
  if (!in_closed_pos(chart.ample)) throw InconsistencyError("ample class is outside the positive cone");
  const Slope ample_slope = slope_of(chart.ample);

  // Movable cone: the divisorial images nearest to the ample class.
  chart.mov = chart.pos;
  std::array<std::optional<MukaiVector>, 2> mov_divisor;
  for (const auto& w : walls) {
    if (w.type.kind != WallKind::Divisorial) continue;
    if (!in_closed_pos(w.image))
      throw InconsistencyError("image of divisorial wall " + to_string(w.witness) + " lies outside the positive cone");
    const Slope s = slope_of(w.image);
    const int c = compare(s, ample_slope);
    if (c == 0) throw InconsistencyError("ample class lies on the image of wall " + to_string(w.witness));
    const int k = c < 0 ? 0 : 1;
    const int tighter = compare(s, chart.mov[k].slope);
    if ((k == 0 && tighter > 0) || (k == 1 && tighter < 0)) {
      chart.mov[k] = ConeEdge{s, w.image};
      mov_divisor[k] = divisorial_class(cfg, w.type.lattice, v);
    }
  }

  // Flopping images, reflected into Mov by the bounding divisorial classes.
  struct Cut {
    NSRay ray;
    Slope slope;
    std::string model;
  };
  std::vector<Cut> cuts;
  for (const auto& w : walls) {
    if (w.type.kind != WallKind::Flopping) continue;
    if (!in_closed_pos(w.image))
      throw InconsistencyError("image of flopping wall " + to_string(w.witness) + " lies outside the positive cone");
    NSRay image = w.image;
    for (int step = 0;; ++step) {
      const Slope s = slope_of(image);
      const int below = compare(s, chart.mov[0].slope);
      const int above = compare(s, chart.mov[1].slope);
      if (below > 0 && above < 0) {
        const std::string model = w.crossed_model.empty() ? "model across " + to_string(w.witness) : w.crossed_model;
        auto same = std::find_if(cuts.begin(), cuts.end(), [&](const Cut& c) { return c.ray == image; });
        if (same == cuts.end())
          cuts.push_back({image, s, model});
        else if (!w.crossed_model.empty() && same->model.rfind("model across ", 0) == 0)
          same->model = model;
        break;
      }
      if (below == 0 || above == 0) break;  // on the movable boundary
      const int k = below < 0 ? 0 : 1;
      if (!mov_divisor[k] || step >= 16)
        throw InconsistencyError("image of flopping wall " + to_string(w.witness) + " cannot be moved into the movable cone");
      const Reflection r = reflect(cfg, *mov_divisor[k], image.ambient);
      NSRay next = normalize_line(make_ray(cfg, basis, r.value));
      chart.reflections.push_back({image.ambient, *mov_divisor[k], next.ambient});
      image = next;
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return compare(x.slope, y.slope) < 0; });

  std::vector<ConeEdge> edges{chart.mov[0]};
  for (const auto& c : cuts) {
    chart.chamber_walls.push_back(c.ray);
    edges.push_back(ConeEdge{c.slope, c.ray});
  }
  edges.push_back(chart.mov[1]);

  std::optional<std::size_t> nef_index;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const int lo = compare(ample_slope, edges[i].slope);
    const int hi = compare(ample_slope, edges[i + 1].slope);
    if (lo == 0 || hi == 0) throw InconsistencyError("ample class lies on a chamber wall");
    if (lo > 0 && hi < 0) nef_index = i;
  }
  if (!nef_index) throw InconsistencyError("ample class is outside the movable cone");

  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Chamber ch{chamber_label(i), edges[i], edges[i + 1], gieseker_model, i == *nef_index};
    if (i > *nef_index) ch.model = cuts[i - 1].model;
    if (i < *nef_index) ch.model = cuts[i].model;
    chart.chambers.push_back(std::move(ch));
  }
  chart.nef = {edges[*nef_index], edges[*nef_index + 1]};
  return chart;
}

}  // namespace k3walls
