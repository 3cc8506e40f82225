#include "hypcells/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <limits>
#include <set>

#include "hypcells/error.hpp"

namespace hypcells {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// J(a x b): Lorentz-orthogonal to both arguments.
Vec3 lorentz_cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], -(a[0] * b[1] - a[1] * b[0])};
}

Vec3 unit_spacelike(const Vec3& v) { return scale(v, 1.0 / std::sqrt(lorentz(v, v))); }

// Future-pointing representative: unit timelike, or lightlike with x2 = 1.
Vec3 upper(const Vec3& v, bool* lightlike = nullptr) {
  const double norm = -lorentz(v, v);
  const double tol = 1e-10 * std::max(1.0, v[2] * v[2]);
  const bool light = norm <= tol;
  if (lightlike) *lightlike = light;
  Vec3 out = light ? scale(v, 1.0 / v[2]) : scale(v, 1.0 / std::sqrt(norm));
  if (out[2] < 0) out = scale(out, -1.0);
  return out;
}

double interior_angle(const Vec3& n_in, const Vec3& n_out) {
  return std::acos(std::clamp(-lorentz(n_in, n_out), -1.0, 1.0));
}

double hyperbolic_distance(const Vec3& a, const Vec3& b) {
  const Vec3 d = sub(a, b);
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, lorentz(d, d))) / 2.0);
}

double target_angle(CoxeterOrder a) { return a.is_finite() ? kPi / a.value() : 0.0; }

// Boost taking the unit timelike point c to the origin (0, 0, 1).
Isometry boost_to_origin(const Vec3& c) {
  const double u0 = c[0], u1 = c[1], c2 = c[2];
  const double k = 1.0 / (1.0 + c2);
  Isometry b;
  b.m = {1 + u0 * u0 * k, u0 * u1 * k, -u0, u0 * u1 * k, 1 + u1 * u1 * k, -u1, -u0, -u1, c2};
  return b;
}

std::vector<Vec3> fan_vertices(const std::vector<double>& dist, const std::vector<bool>& ideal) {
  const std::size_t n = ideal.size();
  std::vector<Vec3> v(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    if (ideal[k]) {
      v[k] = {std::cos(theta), std::sin(theta), 1.0};
    } else {
      const double d = dist[j++];
      v[k] = {std::sinh(d) * std::cos(theta), std::sinh(d) * std::sin(theta), std::cosh(d)};
    }
  }
  return v;
}

// Side i joins vertex i-1 to vertex i; the origin is inside.
std::vector<Vec3> side_normals(const std::vector<Vec3>& v) {
  const std::size_t n = v.size();
  std::vector<Vec3> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 nrm = unit_spacelike(lorentz_cross(v[(i + n - 1) % n], v[i]));
    if (nrm[2] < 0) nrm = scale(nrm, -1.0);
    normals[i] = nrm;
  }
  return normals;
}

std::vector<double> fan_residuals(const Presentation& p, const std::vector<double>& dist,
                                  const std::vector<bool>& ideal) {
  const auto v = fan_vertices(dist, ideal);
  const auto normals = side_normals(v);
  const std::size_t n = v.size();
  std::vector<double> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (ideal[k]) continue;
    out.push_back(interior_angle(normals[k], normals[(k + 1) % n]) - target_angle(p.angles()[k]));
  }
  return out;
}

double max_abs(const std::vector<double>& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// Dense Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (std::abs(a[piv * n + col]) < 1e-300) throw Error(ErrorCode::SolverDiverged, "singular Jacobian");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

std::vector<Vec3> realize_fan(const Presentation& p, std::vector<bool>& ideal) {
  const std::size_t n = p.rank();
  double mean = 0;
  std::size_t finite = 0;
  for (std::size_t k = 0; k < n; ++k) {
    ideal[k] = !p.angles()[k].is_finite();
    if (!ideal[k]) {
      mean += target_angle(p.angles()[k]);
      ++finite;
    }
  }
  if (finite == 0) return fan_vertices({}, ideal);
  mean /= static_cast<double>(finite);
  const double cosh_r = 1.0 / (std::tan(kPi / static_cast<double>(n)) * std::tan(mean / 2.0));
  std::vector<double> dist(finite, cosh_r > 1.0 ? std::acosh(cosh_r) : 1.0);

  std::vector<double> f = fan_residuals(p, dist, ideal);
  for (int iter = 0; iter < 200 && max_abs(f) > 1e-13; ++iter) {
    std::vector<double> jac(finite * finite);
    for (std::size_t c = 0; c < finite; ++c) {
      const double h = 1e-7 * std::max(1.0, dist[c]);
      auto hi = dist, lo = dist;
      hi[c] += h;
      lo[c] -= h;
      const auto fh = fan_residuals(p, hi, ideal);
      const auto fl = fan_residuals(p, lo, ideal);
      for (std::size_t r = 0; r < finite; ++r) jac[r * finite + c] = (fh[r] - fl[r]) / (2 * h);
    }
    std::vector<double> neg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) neg[i] = -f[i];
    const auto step = solve(jac, neg);
    double lambda = 1.0;
    for (;;) {
      std::vector<double> trial(finite);
      for (std::size_t i = 0; i < finite; ++i) trial[i] = std::max(1e-6, dist[i] + lambda * step[i]);
      const auto ft = fan_residuals(p, trial, ideal);
      if (max_abs(ft) < max_abs(f)) {
        dist = trial;
        f = ft;
        break;
      }
      lambda /= 2;
      if (lambda < 1e-10) throw Error(ErrorCode::SolverDiverged, "damped Newton stalled for " + p.name());
    }
  }
  if (max_abs(f) > 1e-11) throw Error(ErrorCode::SolverDiverged, "angle residual too large for " + p.name());
  return fan_vertices(dist, ideal);
}

std::vector<Vec3> realize_triangle(const Presentation& p, std::vector<bool>& ideal) {
  const auto& angles = p.angles();
  std::size_t k = 0;
  while (k < 3 && !angles[k].is_finite()) ++k;
  if (k == 3) {
    // Three ideal vertices: the symmetric fan is already exact.
    return fan_vertices({}, ideal = {true, true, true});
  }
  const double g = -std::cos(target_angle(angles[k]));
  const double s = std::sqrt(1 - g * g);
  const double x = -std::cos(target_angle(angles[(k + 2) % 3]));
  const double y = (-std::cos(target_angle(angles[(k + 1) % 3])) - g * x) / s;
  const double zz = x * x + y * y - 1;
  if (zz <= 0) throw Error(ErrorCode::SolverDiverged, "Gram matrix is not hyperbolic for " + p.name());
  std::array<Vec3, 3> rotated = {Vec3{1, 0, 0}, Vec3{g, s, 0}, Vec3{x, y, std::sqrt(zz)}};
  std::vector<Vec3> normals(3);
  for (std::size_t i = 0; i < 3; ++i) normals[(k + i) % 3] = rotated[i];

  std::vector<Vec3> v(3);
  for (std::size_t i = 0; i < 3; ++i) {
    bool light = false;
    v[i] = upper(lorentz_cross(normals[i], normals[(i + 1) % 3]), &light);
    ideal[i] = light;
  }
  const auto proj = [](const Vec3& a) { return std::array<double, 2>{a[0] / (1 + a[2]), a[1] / (1 + a[2])}; };
  double signed_area = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto a = proj(v[i]), b = proj(v[(i + 1) % 3]);
    signed_area += a[0] * b[1] - a[1] * b[0];
  }
  if (signed_area < 0) {
    for (auto& pt : v) pt[1] = -pt[1];
  }
  Vec3 sum{0, 0, 0};
  for (const auto& pt : v) sum = add(sum, pt);
  const Isometry b = boost_to_origin(upper(sum));
  for (std::size_t i = 0; i < 3; ++i) {
    v[i] = b.apply(v[i]);
    if (ideal[i]) v[i] = scale(v[i], 1.0 / v[i][2]);
  }
  return v;
}

std::string hex_color(double r, double g, double b) {
  char buf[8];
  const auto c = [](double x) { return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
  return buf;
}

std::string hash_color(const std::string& key) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  const double hue = static_cast<double>(h % 360) / 60.0;
  const double sat = 0.55 + 0.3 * static_cast<double>((h >> 16) % 100) / 100.0;
  const double light = 0.45 + 0.2 * static_cast<double>((h >> 32) % 100) / 100.0;
  const double chroma = (1 - std::abs(2 * light - 1)) * sat;
  const double x = chroma * (1 - std::abs(std::fmod(hue, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hue)) {
    case 0: r = chroma, g = x; break;
    case 1: r = x, g = chroma; break;
    case 2: g = chroma, b = x; break;
    case 3: g = x, b = chroma; break;
    case 4: r = x, b = chroma; break;
    default: r = chroma, b = x; break;
  }
  const double m = light - chroma / 2;
  return hex_color(r + m, g + m, b + m);
}

void append(std::string& out, const char* fmt, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  out += buf;
}

std::array<double, 2> to_disk(const Vec3& x, double cutoff) {
  const double t = std::sqrt(std::max(0.0, -lorentz(x, x)));
  double px = x[0] / (x[2] + t), py = x[1] / (x[2] + t);
  const double r = std::hypot(px, py);
  if (r > cutoff) {
    px *= cutoff / r;
    py *= cutoff / r;
  }
  return {px, -py};  // SVG y axis points down
}

// Geodesic from a to b in SVG coordinates: an arc of the circle orthogonal to
// the boundary, or a segment through the centre.
void geodesic_to(std::string& out, const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double det = a[0] * b[1] - a[1] * b[0];
  const double ra = (a[0] * a[0] + a[1] * a[1] + 1) / 2, rb = (b[0] * b[0] + b[1] * b[1] + 1) / 2;
  if (std::abs(det) > 1e-9) {
    const double cx = (ra * b[1] - rb * a[1]) / det;
    const double cy = (a[0] * rb - b[0] * ra) / det;
    const double radius = std::sqrt(std::max(0.0, cx * cx + cy * cy - 1));
    if (radius < 1e4) {
      const double cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx);
      char buf[96];
      std::snprintf(buf, sizeof buf, "A%.6f %.6f 0 0 %d ", radius, radius, cross > 0 ? 1 : 0);
      out += buf;
      append(out, "%.6f %.6f ", b[0], b[1]);
      return;
    }
  }
  append(out, "L%.6f %.6f ", b[0], b[1]);
}

}  // namespace

double lorentz(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

Isometry Isometry::reflection(const Vec3& n) {
  static constexpr double kJ[3] = {1, 1, -1};
  Isometry r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r.m[i * 3 + j] = (i == j ? 1.0 : 0.0) - 2 * n[i] * n[j] * kJ[j];
  }
  return r;
}

Vec3 Isometry::apply(const Vec3& x) const {
  return {m[0] * x[0] + m[1] * x[1] + m[2] * x[2], m[3] * x[0] + m[4] * x[1] + m[5] * x[2],
          m[6] * x[0] + m[7] * x[1] + m[8] * x[2]};
}

Isometry Isometry::operator*(const Isometry& o) const {
  Isometry r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.m[i * 3 + j] = m[i * 3] * o.m[j] + m[i * 3 + 1] * o.m[3 + j] + m[i * 3 + 2] * o.m[6 + j];
    }
  }
  return r;
}

double Isometry::lorentz_residual() const {
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Vec3 ci{m[i], m[3 + i], m[6 + i]}, cj{m[j], m[3 + j], m[6 + j]};
      const double target = i != j ? 0.0 : (i == 2 ? -1.0 : 1.0);
      worst = std::max(worst, std::abs(lorentz(ci, cj) - target));
    }
  }
  return worst;
}

Isometry Isometry::renormalized() const {
  Vec3 c0{m[0], m[3], m[6]}, c1{m[1], m[4], m[7]}, c2{m[2], m[5], m[8]};
  c2 = scale(c2, 1.0 / std::sqrt(-lorentz(c2, c2)));
  c0 = unit_spacelike(add(c0, scale(c2, lorentz(c0, c2))));
  c1 = unit_spacelike(sub(add(c1, scale(c2, lorentz(c1, c2))), scale(c0, lorentz(c1, c0))));
  Isometry r;
  r.m = {c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]};
  return r;
}

double Isometry::distance_to_identity() const {
  double worst = 0;
  for (int i = 0; i < 9; ++i) worst = std::max(worst, std::abs(m[i] - (i % 4 == 0 ? 1.0 : 0.0)));
  return worst;
}

double PolygonRealization::area() const {
  const std::size_t n = vertices.size();
  if (std::none_of(ideal.begin(), ideal.end(), [](bool b) { return b; })) {
    const Vec3 o{0, 0, 1};
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& a = vertices[i];
      const Vec3& b = vertices[(i + 1) % n];
      const double x = hyperbolic_distance(o, a), y = hyperbolic_distance(o, b), z = hyperbolic_distance(a, b);
      const double s = (x + y + z) / 2;
      const double t = std::tanh(s / 2) * std::tanh((s - x) / 2) * std::tanh((s - y) / 2) * std::tanh((s - z) / 2);
      total += 4 * std::atan(std::sqrt(std::max(0.0, t)));
    }
    return total;
  }
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += interior_angle(normals[i], normals[(i + 1) % n]);
  return static_cast<double>(n - 2) * kPi - sum;
}

double PolygonRealization::expected_area(const Presentation& p) const {
  double sum = 0;
  for (const CoxeterOrder a : p.angles()) sum += target_angle(a);
  return static_cast<double>(p.rank() - 2) * kPi - sum;
}

PolygonRealization realize_polygon(const Presentation& p) {
  const std::size_t n = p.rank();
  PolygonRealization out;
  out.ideal.assign(n, false);
  out.vertices = n == 3 ? realize_triangle(p, out.ideal) : realize_fan(p, out.ideal);
  out.normals = side_normals(out.vertices);
  out.reflections.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.reflections[p.sides()[i]] = Isometry::reflection(out.normals[i]);
  for (std::size_t k = 0; k < n; ++k) {
    out.angle_residuals.push_back(interior_angle(out.normals[k], out.normals[(k + 1) % n]) -
                                  target_angle(p.angles()[k]));
  }
  if (max_abs(out.angle_residuals) > 1e-8) {
    throw Error(ErrorCode::SolverDiverged, "realized angles miss their targets for " + p.name());
  }
  return out;
}

std::vector<Isometry> tile(const ElementBall& ball, const PolygonRealization& poly, Execution mode) {
  const std::size_t n = ball.size();
  std::vector<Isometry> out(n);
  std::vector<ElementBall::Index> parent(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    const Word& w = ball[static_cast<ElementBall::Index>(i)].word;
    parent[i] = *ball.find(Word(w.begin(), w.end() - 1));
  }
  const auto fill = [&](std::size_t i) {
    const Word& w = ball[static_cast<ElementBall::Index>(i)].word;
    out[i] = (out[parent[i]] * poly.reflections[w.back()]).renormalized();
  };
  for (std::size_t len = 1; len <= ball.radius(); ++len) {
    const auto lo = static_cast<std::ptrdiff_t>(ball.begin_of_length(len));
    const auto hi = static_cast<std::ptrdiff_t>(ball.end_of_length(len));
    if (mode == Execution::Parallel) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = lo; i < hi; ++i) fill(static_cast<std::size_t>(i));
    } else {
      for (std::ptrdiff_t i = lo; i < hi; ++i) fill(static_cast<std::size_t>(i));
    }
  }
  return out;
}

double min_centroid_distance(const std::vector<Isometry>& tiles) {
  std::vector<Vec3> c(tiles.size());
  for (std::size_t i = 0; i < tiles.size(); ++i) c[i] = tiles[i].apply({0, 0, 1});
  double best = std::numeric_limits<double>::infinity();
  const auto n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for reduction(min : best) schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) best = std::min(best, hyperbolic_distance(c[i], c[j]));
  }
  return best;
}

std::string default_color(const std::string& key) {
  static const std::map<std::string, std::string> fixed = {
      {"C_id", "#ffffff"}, {"C_0", "#ffff00"}, {"C_1", "#0000ff"},   {"C_2", "#00a000"},
      {"C_3", "#ff0000"},  {"rest", "#ffffff"}, {"uncovered", "#808080"},
  };
  const auto it = fixed.find(key);
  return it != fixed.end() ? it->second : hash_color(key);
}

std::string fill_color(const std::string& key, const std::map<std::string, std::string>& overrides) {
  const auto it = overrides.find(key);
  return it != overrides.end() ? it->second : default_color(key);
}

std::vector<std::string> twosided_keys(const ConjecturalPartition& part, const ElementBall& ball) {
  std::vector<std::string> out;
  for (const CellLabel& l : part.classify(ball)) out.push_back(l.name());
  return out;
}

std::vector<std::string> onesided_keys(const ConjecturalPartition& part, const std::vector<OneSidedCellSpec>& specs,
                                       std::size_t level, const ElementBall& ball) {
  const Presentation& p = part.group().presentation();
  const auto labels = part.classify(ball);
  std::vector<std::string> out(ball.size(), "rest");
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (labels[i] != CellLabel::at(level)) continue;
    out[i] = "uncovered";
    const auto sym = symbols(ball[static_cast<ElementBall::Index>(i)].word);
    for (const auto& spec : specs) {
      if (spec.level == level && spec.right_cell.accepts(sym)) {
        const std::string w = p.format_word(spec.translator.word);
        out[i] = p.format_set(spec.pair) + "/" + (w.empty() ? "1" : w);
        break;
      }
    }
  }
  return out;
}

Scene make_scene(const ElementBall& ball, const PolygonRealization& poly, const std::vector<Isometry>& tiles,
                 const std::vector<std::string>& color_keys, const RenderConfig& config) {
  if (tiles.size() != ball.size() || color_keys.size() != ball.size()) {
    throw Error(ErrorCode::BadConfig, "tiles and colors must cover the ball");
  }
  Scene s;
  s.polygon = poly.vertices;
  s.config = config;
  const Presentation& p = ball.group().presentation();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const std::string name = p.format_word(ball[static_cast<ElementBall::Index>(i)].word);
    s.tiles.push_back({name.empty() ? "1" : name, color_keys[i], tiles[i]});
  }
  return s;
}

std::string render_svg(const Scene& scene) {
  std::string out;
  char head[256];
  std::snprintf(head, sizeof head,
                "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%u\" height=\"%u\" "
                "viewBox=\"-1.01 -1.01 2.02 2.02\">\n",
                scene.config.size_px, scene.config.size_px);
  out += head;
  if (!scene.tiles.empty()) {
    out += "<g stroke=\"#000000\" stroke-width=\"0.0012\" stroke-linejoin=\"round\">\n";
    for (const auto& t : scene.tiles) {
      std::vector<std::array<double, 2>> pts;
      for (const Vec3& v : scene.polygon) pts.push_back(to_disk(t.iso.apply(v), scene.config.cutoff));
      out += "<path class=\"tile\" data-element=\"" + t.name + "\" fill=\"" +
             fill_color(t.color_key, scene.config.palette) + "\" d=\"";
      append(out, "M%.6f %.6f ", pts[0][0], pts[0][1]);
      for (std::size_t i = 0; i < pts.size(); ++i) geodesic_to(out, pts[i], pts[(i + 1) % pts.size()]);
      out += "Z\"/>\n";
    }
    out += "</g>\n";
  }
  out += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.004\"/>\n</svg>\n";
  return out;
}

}  // namespace hypcells
