#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3walls/cones.hpp"
#include "k3walls/walls.hpp"
#include "support.hpp"

using namespace k3walls;

namespace {
const K3Config g9(16);
const MukaiVector v{2, 1, 3};

Rational R(long n, long d = 1) { return make_rational(n, d); }

std::vector<ClassifiedWall> genus9_walls(const NSBasis& basis) {
  std::vector<ClassifiedWall> out;
  for (const MukaiVector w : {MukaiVector{2, 1, 4}, MukaiVector{3, 1, 3}, MukaiVector{1, 1, 8}})
    out.push_back({w, classify_wall(g9, v, w), wall_image(g9, basis, v, w), ""});
  return out;
}

StabilityPoint random_valid_point(const K3Config& cfg) {
  for (;;) {
    const Rational beta = k3test::random_rational(40, 9);
    const Rational a2 = make_rational(Integer(k3test::uniform(1, 500)), Integer(k3test::uniform(1, 60)));
    const StabilityPoint pt(beta, a2);
    if (is_valid_point(cfg, pt)) return pt;
  }
}
}  // namespace

TEST_CASE("orthogonal basis of v-perp") {
  const NSBasis b = orthogonal_basis(g9, v);
  CHECK(b.e1 == MukaiVector{0, -1, -8});
  CHECK(b.e2 == MukaiVector{2, 1, 5});
  CHECK(b.e1_sq == 16);
  CHECK(b.e2_sq == -4);
  CHECK(mukai_pairing(g9, b.e1, v) == 0);
  CHECK(mukai_pairing(g9, b.e2, v) == 0);
  CHECK(mukai_pairing(g9, b.e1, b.e2) == 0);
  CHECK_THROWS_AS(orthogonal_basis(g9, {2, 1, 4}), DomainError);
  CHECK_THROWS_AS(orthogonal_basis(g9, {1, 0, 1}), DomainError);
}

TEST_CASE("orthogonal basis for a rank-zero class") {
  const K3Config k4(4);
  const NSBasis b = orthogonal_basis(k4, {0, 1, 0});
  CHECK(b.e1_sq > 0);
  CHECK(b.e2_sq < 0);
  CHECK(mukai_pairing(k4, b.e1, {0, 1, 0}) == 0);
  CHECK(mukai_pairing(k4, b.e2, {0, 1, 0}) == 0);
  CHECK(mukai_pairing(k4, b.e1, b.e2) == 0);
}

TEST_CASE("orthogonal bases for random positive classes") {
  for (long h2 : {2L, 6L, 16L}) {
    const K3Config cfg(h2);
    int built = 0;
    for (int i = 0; i < 400; ++i) {
      const MukaiVector u = k3test::random_vector(9);
      if (square(cfg, u) <= 0) continue;
      const NSBasis b = orthogonal_basis(cfg, u);
      CHECK(mukai_pairing(cfg, b.e1, u) == 0);
      CHECK(mukai_pairing(cfg, b.e2, u) == 0);
      CHECK(mukai_pairing(cfg, b.e1, b.e2) == 0);
      CHECK(b.e1_sq > 0);
      CHECK(b.e2_sq < 0);
      ++built;
    }
    CHECK(built > 50);
  }
}

TEST_CASE("wall images") {
  const NSBasis b = orthogonal_basis(g9, v);
  const NSRay vert = wall_image(g9, b, v, {2, 1, 4});
  CHECK(vert.ambient == MukaiVector{0, -1, -8});
  CHECK(vert.a == 1);
  CHECK(vert.b == 0);

  const NSRay left = wall_image(g9, b, v, {3, 1, 3});
  CHECK(left.ambient == MukaiVector{16, 3, 0});
  CHECK(left.a == 5);
  CHECK(left.b == 8);
  CHECK(mukai_pairing(g9, {16, 3, 0}, {3, 1, 3}) == 0);

  const NSRay right = wall_image(g9, b, v, {1, 1, 8});
  // the line R(16,13,80), normalized so its e1-coordinate is positive
  CHECK(right.ambient == MukaiVector{-16, -13, -80});
  CHECK(right.a == 5);
  CHECK(right.b == -8);
  CHECK(mukai_pairing(g9, {16, 13, 80}, {1, 1, 8}) == 0);

  CHECK(wall_image(g9, v, {3, 1, 3}) == left);
  CHECK_THROWS_AS(wall_image(g9, v, {4, 2, 6}), DomainError);
}

TEST_CASE("line normalization") {
  const NSRay r{{16, 13, 80}, -5, 8};
  const NSRay n = normalize_line(r);
  CHECK(n.ambient == MukaiVector{-16, -13, -80});
  CHECK(n.a == 5);
  const NSRay e2{{-2, -1, -5}, 0, -1};
  CHECK(normalize_line(e2).b == 1);
}

TEST_CASE("the map l") {
  const NSRay a = compute_l(g9, StabilityPoint(0, 1), v);
  CHECK(a.ambient == MukaiVector{16, -13, -128});
  CHECK(a.a == 21);
  CHECK(a.b == 8);
  const NSRay b = compute_l(g9, StabilityPoint(R(1, 4), 1), v);
  CHECK(b.ambient == MukaiVector{4, -7, -62});
  CHECK(b.a == 9);
  CHECK(b.b == 2);
  CHECK_THROWS_AS(compute_l(g9, StabilityPoint(R(1, 3), R(1, 72)), v), DomainError);
}

TEST_CASE("l is orthogonal to v and of non-negative square") {
  const NSBasis basis = orthogonal_basis(g9, v);
  for (int i = 0; i < 1500; ++i) {
    const StabilityPoint pt = random_valid_point(g9);
    const ReducedCharge z = reduced_charge(g9, pt, v);
    if (z.re == 0 && z.im_over_alpha == 0) continue;
    const NSRay l = compute_l(g9, basis, pt, v);
    CHECK(mukai_pairing(g9, l.ambient, v) == 0);
    CHECK(square(g9, l.ambient) > 0);
  }
}

TEST_CASE("l is constant along a numerical wall and equals its image") {
  const NSBasis basis = orthogonal_basis(g9, v);
  for (const MukaiVector w : {MukaiVector{3, 1, 3}, MukaiVector{1, 1, 8}, MukaiVector{1, 1, 9}}) {
    const Semicircle sc = numerical_wall(g9, v, w)->circle();
    const NSRay image = wall_image(g9, basis, v, w);
    int points = 0;
    for (long k = 1; k < 40; ++k) {
      const Rational beta = sc.center + make_rational(2 * k - 40, 40) * R(1, 8);
      const auto a2 = ray_intersection(sc, beta);
      if (!a2 || !is_valid_point(g9, StabilityPoint(beta, *a2))) continue;
      const NSRay l = compute_l(g9, basis, StabilityPoint(beta, *a2), v);
      CHECK(normalize_line(l) == image);
      ++points;
    }
    CHECK(points >= 2);
  }
}

TEST_CASE("reflections") {
  const Reflection r = reflect(g9, {2, 1, 5}, {16, 13, 80});
  CHECK(r.integral);
  CHECK(r.as_integral() == MukaiVector{-16, -3, 0});
  CHECK(reflect(g9, {2, 1, 5}, {2, 1, 5}).as_integral() == MukaiVector{-2, -1, -5});
  CHECK_THROWS_AS(reflect(g9, {2, 1, 4}, v), DomainError);
  // a class of square -4 reflects only some classes integrally
  const Reflection half = reflect(g9, {2, 1, 5}, {1, 0, 0});
  CHECK_FALSE(half.integral);
  CHECK_THROWS_AS(half.as_integral(), DomainError);
}

TEST_CASE("reflection identifies the images of the left and right walls") {
  const NSBasis b = orthogonal_basis(g9, v);
  const MukaiVector right = wall_image(g9, b, v, {1, 1, 8}).ambient;
  const MukaiVector left = wall_image(g9, b, v, {3, 1, 3}).ambient;
  CHECK(reflect(g9, {2, 1, 5}, right).as_integral() == left);
  CHECK(reflect(g9, {2, 1, 5}, -right).as_integral() == -left);
}

TEST_CASE("reflection is a pairing-preserving involution") {
  for (int i = 0; i < 2000; ++i) {
    const MukaiVector d = k3test::random_vector(8);
    if (square(g9, d) == 0) continue;
    const MukaiVector u = k3test::random_vector(50), w = k3test::random_vector(50);
    const Reflection ru = reflect(g9, d, u), rw = reflect(g9, d, w);
    // pair rational images through the bilinear form written out
    const auto pair = [](const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) -> Rational {
      return Rational(16) * a[1] * b[1] - a[0] * b[2] - a[2] * b[0];
    };
    CHECK(pair(ru.value, rw.value) == Rational(mukai_pairing(g9, u, w)));
    if (ru.integral) CHECK(reflect(g9, d, ru.as_integral()).as_integral() == u);
    CHECK(reflect(g9, d, d).as_integral() == -d);
  }
}

TEST_CASE("slopes with square roots") {
  const Slope two = Slope::signed_sqrt(1, 4);
  REQUIRE(two.value);
  CHECK(*two.value == 2);
  const Slope r3 = Slope::signed_sqrt(1, 3);
  CHECK_FALSE(r3.value);
  CHECK(compare(Slope::rational(R(17, 10)), r3) < 0);
  CHECK(compare(Slope::rational(R(7, 4)), r3) > 0);
  CHECK(compare(Slope::signed_sqrt(-1, 3), Slope::rational(R(-17, 10))) < 0);
  CHECK(compare(Slope::signed_sqrt(-1, 3), Slope::signed_sqrt(1, 2)) < 0);
  CHECK(compare(Slope::signed_sqrt(1, 3), Slope::signed_sqrt(1, 2)) > 0);
  CHECK(compare(Slope::signed_sqrt(-1, 3), Slope::signed_sqrt(-1, 2)) < 0);
  CHECK(to_string(r3) == "sqrt(3)");
}

TEST_CASE("cones of the genus-9 moduli space") {
  const NSBasis b = orthogonal_basis(g9, v);
  const ConeChart c = assemble_cones(g9, v, genus9_walls(b), StabilityPoint(0, 1), "M_S");
  REQUIRE(c.pos[0].ray);
  REQUIRE(c.pos[1].ray);
  CHECK(c.pos[0].ray->a == 1);
  CHECK(c.pos[0].ray->b == -2);
  CHECK(c.pos[1].ray->a == 1);
  CHECK(c.pos[1].ray->b == 2);
  CHECK(square(g9, c.pos[0].ray->ambient) == 0);
  CHECK(square(g9, c.pos[1].ray->ambient) == 0);

  REQUIRE(c.mov[0].ray);
  CHECK(c.mov[0].ray->ambient == b.e1);
  CHECK(*c.mov[1].slope.value == 2);

  REQUIRE(c.chamber_walls.size() == 1);
  CHECK(c.chamber_walls[0].a == 5);
  CHECK(c.chamber_walls[0].b == 8);

  CHECK(c.nef[0].ray->ambient == b.e1);
  CHECK(c.nef[1].ray->ambient == MukaiVector{16, 3, 0});
  REQUIRE(c.chambers.size() == 2);
  CHECK(c.chambers[0].nef);
  CHECK(c.chambers[0].model == "M_S");
  CHECK_FALSE(c.chambers[1].nef);
  CHECK(c.chambers[1].label == "(b)");

  // 8/21 lies strictly between 0 and 8/5
  CHECK(c.ample.a == 21);
  CHECK(c.ample.b == 8);
  CHECK(compare(slope_of(c.ample), c.nef[0].slope) > 0);
  CHECK(compare(slope_of(c.ample), c.nef[1].slope) < 0);

  REQUIRE(c.reflections.size() == 1);
  CHECK(c.reflections[0][2] == MukaiVector{16, 3, 0});
}

TEST_CASE("cone nesting checked with the pairing") {
  const NSBasis b = orthogonal_basis(g9, v);
  const ConeChart c = assemble_cones(g9, v, genus9_walls(b), StabilityPoint(0, 1));
  for (const auto& n : c.nef)
    for (const auto& p : c.pos) CHECK(mukai_pairing(g9, n.ray->ambient, p.ray->ambient) >= 0);
  for (const auto& m : c.mov)
    for (const auto& p : c.pos) CHECK(mukai_pairing(g9, m.ray->ambient, p.ray->ambient) >= 0);
  for (const auto& n : c.nef) CHECK(square(g9, n.ray->ambient) >= 0);
}

TEST_CASE("empty wall list gives one chamber filling the positive cone") {
  const ConeChart c = assemble_cones(g9, v, {}, StabilityPoint(0, 1));
  CHECK(compare(c.mov[0].slope, c.pos[0].slope) == 0);
  CHECK(compare(c.mov[1].slope, c.pos[1].slope) == 0);
  REQUIRE(c.chambers.size() == 1);
  CHECK(c.chambers[0].nef);
  CHECK(c.chamber_walls.empty());
}

TEST_CASE("inconsistent wall data is reported") {
  const NSBasis b = orthogonal_basis(g9, v);
  auto walls = genus9_walls(b);
  // pretend the flopping wall maps to e2, which lies outside the positive cone
  walls[1].image = NSRay{b.e2, 0, 1};
  CHECK_THROWS_AS(assemble_cones(g9, v, walls, StabilityPoint(0, 1)), InconsistencyError);

  auto on_wall = genus9_walls(b);
  // an ample point on the flopping wall's image
  CHECK_THROWS_AS(assemble_cones(g9, v, on_wall, StabilityPoint(R(1, 4), R(1, 32))), InconsistencyError);
}

TEST_CASE("divisorial class of the vertical wall") {
  const WallLattice lat = wall_lattice(g9, v, {2, 1, 4});
  const MukaiVector d = divisorial_class(g9, lat, v);
  CHECK((d == MukaiVector{2, 1, 5} || d == MukaiVector{-2, -1, -5}));
}
