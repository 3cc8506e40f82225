#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hypcells/conjecture.hpp"
#include "hypcells/kl.hpp"

namespace hypcells {

// Points and normals in R^{2,1} with the form x0*y0 + x1*y1 - x2*y2.
using Vec3 = std::array<double, 3>;

double lorentz(const Vec3& a, const Vec3& b);

// Row-major 3x3 matrix preserving the form.
struct Isometry {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Isometry identity() { return {}; }
  static Isometry reflection(const Vec3& unit_normal);
  Vec3 apply(const Vec3& x) const;
  Isometry operator*(const Isometry& o) const;
  // max |M^T J M - J|
  double lorentz_residual() const;
  // Lorentz Gram-Schmidt on the columns, timelike column first.
  Isometry renormalized() const;
  double distance_to_identity() const;
};

struct PolygonRealization {
  // Vertex i sits between sides i and i+1. Finite vertices lie on the
  // hyperboloid; ideal ones on the light cone with x2 = 1.
  std::vector<Vec3> vertices;
  std::vector<bool> ideal;
  std::vector<Vec3> normals;          // outward unit normal of side i
  std::vector<Isometry> reflections;  // indexed by generator
  std::vector<double> angle_residuals;

  // Sum of fan triangles around the origin from side lengths when every
  // vertex is finite; otherwise from the measured angles.
  double area() const;
  double expected_area(const Presentation& p) const;
};

// Triangles: normals from the Gram matrix in closed form, then a boost moving
// the vertex centroid to the origin. Four or more sides: vertices on rays at
// central angles 2*pi*k/n, distances found by Newton iteration started at the
// regular polygon with the mean finite angle, step halving until the residual
// drops, at most 200 steps. SolverDiverged otherwise.
PolygonRealization realize_polygon(const Presentation& p);

// Isometry of the tile w*P for each ball element: parent tile times the
// reflection of the last letter, renormalized.
std::vector<Isometry> tile(const ElementBall& ball, const PolygonRealization& poly,
                           Execution mode = Execution::Parallel);

// Hyperbolic distance between tile centres (images of the origin).
double min_centroid_distance(const std::vector<Isometry>& tiles);

struct RenderConfig {
  unsigned size_px = 800;
  double cutoff = 0.9995;
  std::string coloring = "twosided";  // or "onesided:<level>"
  std::map<std::string, std::string> palette;  // color key -> "#rrggbb"
};

struct Scene {
  struct Tile {
    std::string name;
    std::string color_key;
    Isometry iso;
  };
  std::vector<Tile> tiles;  // emitted in this order
  std::vector<Vec3> polygon;
  RenderConfig config;
};

// Label names; C_id white, C_0 yellow, C_1 blue, C_2 green, C_3 red.
std::string default_color(const std::string& key);
std::string fill_color(const std::string& key, const std::map<std::string, std::string>& overrides);

// Color keys: two-sided label names, or one-sided translator keys for a level
// ("rest" outside the level, "uncovered" inside it but in no spec).
std::vector<std::string> twosided_keys(const ConjecturalPartition& part, const ElementBall& ball);
std::vector<std::string> onesided_keys(const ConjecturalPartition& part, const std::vector<OneSidedCellSpec>& specs,
                                       std::size_t level, const ElementBall& ball);

Scene make_scene(const ElementBall& ball, const PolygonRealization& poly, const std::vector<Isometry>& tiles,
                 const std::vector<std::string>& color_keys, const RenderConfig& config);

std::string render_svg(const Scene& scene);

}  // namespace hypcells
