#include <cmath>
#include <numbers>
#include <regex>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hypcells/error.hpp"
#include "hypcells/render.hpp"

using namespace hypcells;

namespace {

constexpr double kPi = std::numbers::pi;

std::set<std::string> fills(const std::string& svg) {
  std::set<std::string> out;
  const std::regex re("class=\"tile\"[^>]*fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out.insert((*it)[1]);
  }
  return out;
}

std::size_t count_tiles(const std::string& svg) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = svg.find("class=\"tile\"", pos)) != std::string::npos; ++pos) ++n;
  return n;
}

const ConjecturalPartition& part237() {
  static const ConjecturalPartition part(testing::w237(), *validate_k(testing::w237(), 6, 10));
  return part;
}

}  // namespace

TEST_CASE("polygon area matches Gauss-Bonnet") {
  const PolygonRealization tri = realize_polygon(testing::w237().presentation());
  CHECK(std::abs(tri.area() - kPi / 42) < 1e-8);
  CHECK(std::abs(tri.expected_area(testing::w237().presentation()) - kPi / 42) < 1e-15);
  const PolygonRealization quad = realize_polygon(testing::w2224().presentation());
  CHECK(std::abs(quad.area() - kPi / 4) < 1e-8);
  for (const auto* poly : {&tri, &quad}) {
    for (double r : poly->angle_residuals) CHECK(std::abs(r) < 1e-8);
    for (const Vec3& v : poly->vertices) CHECK(std::abs(lorentz(v, v) + 1) < 1e-9);
  }
}

TEST_CASE("reflections are involutive isometries") {
  for (const CoxeterGroup* g : {&testing::w237(), &testing::w2224()}) {
    const PolygonRealization poly = realize_polygon(g->presentation());
    for (const Isometry& r : poly.reflections) {
      CHECK(r.lorentz_residual() < 1e-9);
      CHECK((r * r).distance_to_identity() < 1e-9);
    }
    const Presentation& p = g->presentation();
    for (Generator s = 0; s < g->rank(); ++s) {
      for (Generator t = s + 1; t < g->rank(); ++t) {
        const CoxeterOrder m = p.order(s, t);
        if (!m.is_finite()) continue;
        Isometry prod;
        for (unsigned i = 0; i < m.value(); ++i) prod = prod * poly.reflections[s] * poly.reflections[t];
        CHECK(prod.distance_to_identity() < 1e-9);
      }
    }
  }
}

TEST_CASE("ideal vertices sit on the light cone") {
  const Presentation p = Presentation::from_angles("cusp", {CoxeterOrder(2), CoxeterOrder(3), CoxeterOrder::infinite()});
  const PolygonRealization poly = realize_polygon(p);
  CHECK(poly.ideal == std::vector<bool>{false, false, true});
  CHECK(std::abs(lorentz(poly.vertices[2], poly.vertices[2])) < 1e-9);
  CHECK(std::abs(poly.area() - kPi / 6) < 1e-8);
  const Presentation q = Presentation::from_angles(
      "open", {CoxeterOrder(2), CoxeterOrder::infinite(), CoxeterOrder(2), CoxeterOrder::infinite()});
  const PolygonRealization quad = realize_polygon(q);
  CHECK(std::abs(quad.area() - kPi) < 1e-8);
}

TEST_CASE("tiling") {
  const CoxeterGroup& g = testing::w237();
  const PolygonRealization poly = realize_polygon(g.presentation());
  const ElementBall ball(g, 8);
  const auto serial = tile(ball, poly, Execution::Serial);
  const auto parallel = tile(ball, poly, Execution::Parallel);
  REQUIRE(serial.size() == ball.size());
  for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i].m == parallel[i].m);
  CHECK(serial[0].distance_to_identity() == 0.0);
  for (Generator s = 0; s < g.rank(); ++s) {
    const auto i = ball.index_of(g.generator(s));
    for (int k = 0; k < 9; ++k) CHECK(std::abs(serial[i].m[k] - poly.reflections[s].m[k]) < 1e-12);
  }
  double worst = 0;
  for (const auto& iso : serial) worst = std::max(worst, iso.lorentz_residual());
  CHECK(worst < 1e-9);
  CHECK(min_centroid_distance(serial) > 1e-6);

  // Left action: the tile of s*w is the reflection of the tile of w.
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (Generator s = 0; s < g.rank(); ++s) {
      const auto j = ball.left(static_cast<ElementBall::Index>(i), s);
      if (j == ElementBall::kOutside) continue;
      const Isometry expect = poly.reflections[s] * serial[i];
      double d = 0;
      for (int k = 0; k < 9; ++k) d = std::max(d, std::abs(expect.m[k] - serial[j].m[k]) / (1 + std::abs(expect.m[k])));
      CHECK(d < 1e-6);
    }
  }
}

TEST_CASE("svg output") {
  const CoxeterGroup& g = testing::w237();
  const PolygonRealization poly = realize_polygon(g.presentation());

  Scene empty;
  const std::string blank = render_svg(empty);
  CHECK(count_tiles(blank) == 0);
  CHECK(blank.find("<circle") != std::string::npos);
  CHECK(blank.find("<path") == std::string::npos);

  const ElementBall ball(g, 8);
  const auto tiles = tile(ball, poly);
  const Scene scene = make_scene(ball, poly, tiles, twosided_keys(part237(), ball), RenderConfig{});
  const std::string svg = render_svg(scene);
  CHECK(count_tiles(svg) == ball.size());
  CHECK(fills(svg) == std::set<std::string>{"#ffffff", "#ffff00", "#0000ff", "#00a000", "#ff0000"});
  CHECK(svg.find("data-element=\"1\" fill=\"#ffffff\"") != std::string::npos);
  CHECK(svg.find("data-element=\"stststs\" fill=\"#ff0000\"") != std::string::npos);
  CHECK(svg.find("data-element=\"rs\" fill=\"#ffff00\"") != std::string::npos);
  CHECK(render_svg(make_scene(ball, poly, tile(ball, poly), twosided_keys(part237(), ball), RenderConfig{})) == svg);

  RenderConfig custom;
  custom.palette["C_3"] = "#123456";
  const std::string recolored = render_svg(make_scene(ball, poly, tiles, twosided_keys(part237(), ball), custom));
  CHECK(fills(recolored).count("#123456") == 1);
  CHECK(fills(recolored).count("#ff0000") == 0);
  CHECK_THROWS_AS(make_scene(ball, poly, {}, {}, RenderConfig{}), Error);
}

TEST_CASE("one-sided coloring") {
  const CoxeterGroup& g = testing::w237();
  const ElementBall ball(g, 8);
  const auto specs = one_sided_cells(part237(), 3, ElementBall(g, 10));
  const auto keys = onesided_keys(part237(), specs, 3, ball);
  std::set<std::string> distinct(keys.begin(), keys.end());
  CHECK(distinct.count("rest") == 1);
  CHECK(distinct.count("uncovered") == 0);
  CHECK(distinct.size() >= 2);
  for (const auto& k : distinct) CHECK(default_color(k) == default_color(k));
  CHECK(default_color("st/1") != default_color("st/r"));
}
