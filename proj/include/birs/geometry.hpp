#pragma once

#include <compare>
#include <span>
#include <vector>

namespace birs {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend auto operator<=>(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

// Wraps an angle into [-pi, pi).
double normalize_angle(double theta);

// Planar rigid transform. Maps local coordinates into the parent frame.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Point2 apply(Point2 p) const;
  // this * child: child expressed in this frame, returned in the parent frame.
  Pose2D compose(const Pose2D& child) const;
  Pose2D inverse() const;

  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
  bool valid = false;

  void expand(Point2 p);
  void expand(const BBox& other);
  BBox padded(double margin) const;
  bool contains(Point2 p) const;
};

// Signed shoelace area; positive for counter-clockwise rings.
double signed_area(std::span<const Point2> ring);

// Even-odd crossing test. Points exactly on an edge may land on either side;
// use on_ring_boundary() when that matters.
bool ring_contains(std::span<const Point2> ring, Point2 p);

bool on_ring_boundary(std::span<const Point2> ring, Point2 p, double tol);

// True when some pair of non-adjacent edges touches or crosses.
bool ring_self_intersects(std::span<const Point2> ring);

// Simple polygon, counter-clockwise, at least three distinct vertices and
// strictly positive area. Construction normalizes and validates.
class Polygon2D {
 public:
  Polygon2D() = default;

  // Drops consecutive duplicates (within 1e-9 m) and reorients to CCW.
  // Throws Error("InvalidPolygon") for fewer than three vertices, zero area
  // or self-intersection.
  static Polygon2D from_vertices(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  double area() const;
  Point2 centroid() const;
  BBox bbox() const;
  bool contains(Point2 p) const { return ring_contains(vertices_, p); }
  bool on_boundary(Point2 p, double tol = 1e-9) const { return on_ring_boundary(vertices_, p, tol); }
  bool is_convex() const;

  Polygon2D transformed(const Pose2D& pose) const;

  friend bool operator==(const Polygon2D&, const Polygon2D&) = default;

 private:
  explicit Polygon2D(std::vector<Point2> v) : vertices_(std::move(v)) {}

  std::vector<Point2> vertices_;
};

}  // namespace birs
