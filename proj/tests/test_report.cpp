#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "k3walls/report.hpp"
#include "support.hpp"

#include <algorithm>

using namespace k3walls;

namespace {

std::string data(const std::string& name) { return k3test::read_text(std::string(K3WALLS_DATA_DIR) + "/" + name); }
std::string golden(const std::string& name) { return k3test::read_text(std::string(K3WALLS_GOLDEN_DIR) + "/" + name); }

RunReport genus9() {
  return run_pipeline(parse_config(data("genus9.conf")), parse_annotations(data("genus9.annotations")));
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped configuration") {
  const RunConfig c = parse_config(data("genus9.conf"));
  CHECK(c.h2 == 16);
  CHECK(c.v == MukaiVector{2, 1, 3});
  CHECK(c.rays == std::vector<Rational>{make_rational(1, 4), make_rational(3, 4)});
  CHECK(c.rank_bound == 50);
  CHECK(c.annotations == std::optional<std::string>("genus9.annotations"));
  CHECK(c.scale == 1024);
}

TEST_CASE("default rays are v.c/v.r -+ sqrt(Q)") {
  const RunConfig c = parse_config("h2 = 16\nv = 2,1,3\n");
  CHECK(c.rays == std::vector<Rational>{make_rational(1, 4), make_rational(3, 4)});
  CHECK(parse_config("h2=2\nv=1,0,-1\n").rays == std::vector<Rational>{-1, 1});
  CHECK(parse_config("h2=16\nv=1,0,1\n").rays.empty());
  CHECK(contains(error_of("h2=2\nv=1,0,0\n"), "sqrt(Q)"));
  CHECK(contains(error_of("h2=4\nv=2,1,1\n"), "sqrt(Q)"));
}

TEST_CASE("configuration errors") {
  CHECK(contains(error_of("h2=15\nv=2,1,3\n"), "line 1"));
  CHECK(contains(error_of("h2=15\nv=2,1,3\n"), "even"));
  CHECK(contains(error_of("h2=16\nv=4,2,6\n"), "primitive"));
  CHECK(contains(error_of("h2=16\nv=-2,-1,-3\n"), "positive rank"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\ncolor=red\n"), "line 3: unknown key 'color'"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\nrays=1/0\n"), "line 3"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\nrays=1/4,x\n"), "line 3"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\nrays=1/2\n"), "vertical wall"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\nrays=1/4,1/4\n"), "twice"));
  CHECK(contains(error_of("h2=16\nh2=16\nv=2,1,3\n"), "line 2: duplicate"));
  CHECK(contains(error_of("v=2,1,3\n"), "missing required key 'h2'"));
  CHECK(contains(error_of("h2=16\nv 2,1,3\n"), "line 2"));
  CHECK(contains(error_of("h2=16\nv=1,0,5\n"), "< -2"));
  CHECK(contains(error_of("h2=16\nv=2,1,3\nscale=0\n"), "scale"));
  CHECK(error_of("# comment only line\nh2=16   # surface\n\nv = 2, 1, 3\n").empty());
}

TEST_CASE("serialize round-trips") {
  for (const char* text : {"h2=16\nv=2,1,3\n", "h2=2\nv=1,0,-1\nrays=-3/2\nrank_bound=7\nout=/tmp/x\nscale=10\n",
                           "h2=16\nv=2,1,3\nannotations=a.txt\n", "h2=16\nv=1,0,1\n"}) {
    const RunConfig c = parse_config(text);
    CHECK(parse_config(serialize(c)) == c);
    CHECK(serialize(parse_config(serialize(c))) == serialize(c));
  }
}

TEST_CASE("overrides replace keys") {
  const std::string text = apply_overrides("h2=16\nv=2,1,3 # class\nrank_bound=50\n", {{"rank_bound", "5"}, {"h2", "2"}});
  const RunConfig c = parse_config(apply_overrides(text, {{"v", "1,0,-1"}}));
  CHECK(c.h2 == 2);
  CHECK(c.rank_bound == 5);
  CHECK(c.v == MukaiVector{1, 0, -1});
}

TEST_CASE("annotation parsing") {
  const AnnotationTable t = parse_annotations(data("genus9.annotations"));
  CHECK(t.gieseker_model == "M_S[2,1,3]");
  const WallAnnotation* left = t.find({3, 1, 3});
  REQUIRE(left);
  CHECK(left->name == "W_l");
  CHECK(left->actual == std::optional<bool>(true));
  CHECK(left->model == "M_S[5,2,6]");
  const WallAnnotation* fake = t.find({1, 1, 9});
  REQUIRE(fake);
  CHECK(fake->actual == std::optional<bool>(false));
  CHECK(t.find({7, 7, 7}) == nullptr);
  CHECK_THROWS_AS(parse_annotations("[wall 1,2]\n"), ConfigError);
  CHECK_THROWS_AS(parse_annotations("[wall 1,1,8]\nactual = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_annotations("name = x\n"), ConfigError);
}

TEST_CASE("pipeline on the genus-9 class") {
  const RunReport r = genus9();
  CHECK(r.v_square == 4);
  REQUIRE(r.walls.size() == 4);
  std::vector<MukaiVector> witnesses;
  for (const auto& w : r.walls) witnesses.push_back(w.wall.witness);
  CHECK(witnesses == std::vector<MukaiVector>{{3, 1, 3}, {2, 1, 4}, {1, 1, 8}, {1, 1, 9}});
  CHECK(r.walls[0].side == WallSide::Left);
  CHECK(r.walls[1].side == WallSide::Vertical);
  CHECK(r.walls[2].type.kind == WallKind::Flopping);
  CHECK(r.walls[3].type.kind == WallKind::FakeOrUnknown);
  CHECK_FALSE(r.walls[3].counts_for_cones());
  CHECK(r.walls[0].crossing->second == make_rational(1, 32));

  REQUIRE(r.rays.size() == 2);
  for (const auto& ray : r.rays) {
    CHECK(ray.saturation.rank_bound == 50);
    CHECK(ray.saturation.first_empty_run.has_value());
  }

  REQUIRE(r.cones);
  CHECK(r.cones->chambers.size() == 2);
  CHECK(r.cones->chambers[0].model == "M_S[2,1,3]");
  CHECK(r.cones->chambers[1].model == "M_S[5,2,6]");
  CHECK(r.cones->ample.a == 21);
  CHECK(r.cones->ample.b == 8);
}

TEST_CASE("report and figures match the stored outputs") {
  const RunReport r = genus9();
  CHECK(render_report(r) == golden("report.txt"));
  CHECK(render_halfplane_svg(r) == golden("halfplane.svg"));
  CHECK(render_ns_cone_svg(r) == golden("ns_cone.svg"));
}

TEST_CASE("outputs are deterministic") {
  const RunReport a = genus9(), b = genus9();
  CHECK(render_report(a) == render_report(b));
  CHECK(render_halfplane_svg(a) == render_halfplane_svg(b));
  CHECK(render_ns_cone_svg(a) == render_ns_cone_svg(b));
}

TEST_CASE("report text") {
  const std::string text = render_report(genus9());
  CHECK(contains(text, "[config]\n"));
  CHECK(contains(text, "center = 3/16\n"));
  CHECK(contains(text, "radius2 = 9/256\n"));
  CHECK(contains(text, "[ns]\n"));
  CHECK(contains(text, "[cones]\n"));
  CHECK(contains(text, "image of W(3,1,3) is R(16,3,0)"));
  CHECK_FALSE(contains(text, "\t"));
}

TEST_CASE("half-plane figure geometry") {
  const std::string svg = render_halfplane_svg(genus9());
  // W_l: center 3/16 and radius 3/16 at scale 1024
  CHECK(contains(svg, "cx=\"192\" cy=\"0\" r=\"192\""));
  CHECK(contains(svg, "x1=\"512\""));
  // W_r: center 13/16, radius 3/16
  CHECK(contains(svg, "cx=\"832\" cy=\"0\" r=\"192\""));
  // hole at beta = 1/3
  CHECK(contains(svg, "cx=\"341.333333\""));
  CHECK(contains(svg, "data-beta=\"1/4\""));
  CHECK(contains(svg, "data-beta=\"3/4\""));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(contains(svg, "<svg xmlns="));
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
}

TEST_CASE("cone figure") {
  const std::string svg = render_ns_cone_svg(genus9());
  for (const char* dir : {"data-dir=\"1,2\"", "data-dir=\"1,-2\"", "data-dir=\"1,0\"", "data-dir=\"5,8\"",
                          "data-dir=\"21,8\""})
    CHECK_MESSAGE(contains(svg, dir), dir);
}

TEST_CASE("class with negative square") {
  const RunReport r = run_pipeline(parse_config("h2=16\nv=1,0,1\n"));
  CHECK(r.walls.empty());
  CHECK_FALSE(r.cones);
  REQUIRE(r.notes.size() == 1);
  CHECK(contains(r.notes[0], "v^2 = -2"));
  CHECK(contains(render_ns_cone_svg(r), "no cone chart"));
  CHECK(contains(render_report(r), "v^2 = -2"));
}

TEST_CASE("rank bound zero keeps only the vertical wall") {
  const RunReport r = run_pipeline(parse_config("h2=16\nv=2,1,3\nrank_bound=0\n"));
  REQUIRE(r.walls.size() == 1);
  CHECK(r.walls[0].side == WallSide::Vertical);
  CHECK_FALSE(r.search_performed);
  CHECK(std::count(r.notes.begin(), r.notes.end(), "rank_bound = 0: no search performed") == 1);
  REQUIRE(r.cones);
  CHECK(r.cones->chambers.size() == 1);
  const std::string svg = render_ns_cone_svg(r);
  CHECK(contains(svg, "data-dir=\"1,2\""));
  CHECK_FALSE(contains(svg, "data-dir=\"5,8\""));
}

TEST_CASE("isotropic class") {
  const RunReport r = run_pipeline(parse_config("h2=16\nv=2,1,4\nrays=1/4\n"));
  CHECK(r.v_square == 0);
  CHECK_FALSE(r.cones);
  CHECK(std::any_of(r.notes.begin(), r.notes.end(), [](const std::string& n) { return contains(n, "v^2 = 0"); }));
}

TEST_CASE("other surfaces run end to end") {
  for (const char* text : {"h2=2\nv=1,0,-1\n", "h2=4\nv=1,0,-2\n", "h2=6\nv=2,1,-1\nrays=-1,2\nrank_bound=20\n",
                           "h2=16\nv=3,1,-1\nrays=-1,1\nrank_bound=20\n"}) {
    CAPTURE(text);
    const RunReport r = run_pipeline(parse_config(text));
    CHECK(!r.walls.empty());
    CHECK_FALSE(render_report(r).empty());
    CHECK(contains(render_halfplane_svg(r), "</svg>"));
    CHECK(contains(render_ns_cone_svg(r), "</svg>"));
  }
}
