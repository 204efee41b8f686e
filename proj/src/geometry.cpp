#include "birs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "birs/error.hpp"

namespace birs {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(Point2 o, Point2 a, Point2 b) {
  double v = cross(o, a, b);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool within_box(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_box(c, a, b)) return true;
  if (o2 == 0 && within_box(d, a, b)) return true;
  if (o3 == 0 && within_box(a, c, d)) return true;
  if (o4 == 0 && within_box(b, c, d)) return true;
  return false;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  double dx = b.x - a.x;
  double dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta + std::numbers::pi, two_pi);
  if (t < 0) t += two_pi;
  t -= std::numbers::pi;
  // fmod can land exactly on +pi after the shift for inputs just below -pi.
  if (t >= std::numbers::pi) t -= two_pi;
  return t;
}

Point2 Pose2D::apply(Point2 p) const {
  double c = std::cos(theta);
  double s = std::sin(theta);
  return {x + c * p.x - s * p.y, y + s * p.x + c * p.y};
}

Pose2D Pose2D::compose(const Pose2D& child) const {
  Point2 t = apply({child.x, child.y});
  return {t.x, t.y, normalize_angle(theta + child.theta)};
}

Pose2D Pose2D::inverse() const {
  double c = std::cos(theta);
  double s = std::sin(theta);
  return {-(c * x + s * y), -(-s * x + c * y), normalize_angle(-theta)};
}

void BBox::expand(Point2 p) {
  if (!valid) {
    xmin = xmax = p.x;
    ymin = ymax = p.y;
    valid = true;
    return;
  }
  xmin = std::min(xmin, p.x);
  ymin = std::min(ymin, p.y);
  xmax = std::max(xmax, p.x);
  ymax = std::max(ymax, p.y);
}

void BBox::expand(const BBox& other) {
  if (!other.valid) return;
  expand(Point2{other.xmin, other.ymin});
  expand(Point2{other.xmax, other.ymax});
}

BBox BBox::padded(double margin) const {
  if (!valid) return *this;
  return {xmin - margin, ymin - margin, xmax + margin, ymax + margin, true};
}

bool BBox::contains(Point2 p) const {
  return valid && xmin <= p.x && p.x <= xmax && ymin <= p.y && p.y <= ymax;
}

double signed_area(std::span<const Point2> ring) {
  double acc = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

bool ring_contains(std::span<const Point2> ring, Point2 p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = ring[i];
    const Point2& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xc = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

bool on_ring_boundary(std::span<const Point2> ring, Point2 p, double tol) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, ring[i], ring[(i + 1) % n]) <= tol) return true;
  }
  return false;
}

bool ring_self_intersects(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 4) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = ring[i];
    Point2 b = ring[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap
      if (segments_touch(a, b, ring[j], ring[(j + 1) % n])) return true;
    }
  }
  return false;
}

Polygon2D Polygon2D::from_vertices(std::vector<Point2> vertices) {
  std::vector<Point2> out;
  out.reserve(vertices.size());
  for (const Point2& p : vertices) {
    if (!out.empty() && distance(out.back(), p) <= 1e-9) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && distance(out.front(), out.back()) <= 1e-9) out.pop_back();
  if (out.size() < 3) throw Error("InvalidPolygon", "fewer than three distinct vertices");
  double a = signed_area(out);
  if (!(std::abs(a) > 0.0)) throw Error("InvalidPolygon", "zero area");
  if (a < 0) std::reverse(out.begin(), out.end());
  if (ring_self_intersects(out)) throw Error("InvalidPolygon", "self-intersecting ring");
  return Polygon2D(std::move(out));
}

double Polygon2D::area() const { return signed_area(vertices_); }

Point2 Polygon2D::centroid() const {
  // Shift to the first vertex to keep the products small for far-off rings.
  const Point2 o = vertices_.front();
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 p{vertices_[i].x - o.x, vertices_[i].y - o.y};
    Point2 q{vertices_[(i + 1) % n].x - o.x, vertices_[(i + 1) % n].y - o.y};
    double w = p.x * q.y - q.x * p.y;
    a2 += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2)};
}

BBox Polygon2D::bbox() const {
  BBox b;
  for (const Point2& p : vertices_) b.expand(p);
  return b;
}

bool Polygon2D::is_convex() const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) < 0) return false;
  }
  return true;
}

Polygon2D Polygon2D::transformed(const Pose2D& pose) const {
  std::vector<Point2> v;
  v.reserve(vertices_.size());
  for (const Point2& p : vertices_) v.push_back(pose.apply(p));
  return from_vertices(std::move(v));
}

}  // namespace birs
