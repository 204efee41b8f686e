#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/grid.hpp"

namespace birs::grid {

namespace {

void check_resolution(double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error("InvalidResolution", fmt::format("resolution must be positive, got {}", resolution));
  }
}

double round9(double v) { return std::round(v * 1e9) / 1e9; }

int cells_across(double span, double resolution) {
  double n = std::ceil(span / resolution - 1e-9);
  if (n > 2e9) throw Error("GridTooLarge", fmt::format("{} cells across", n));
  return std::max(1, static_cast<int>(n));
}

}  // namespace

std::string_view to_string(Cell c) {
  switch (c) {
    case Cell::Free: return "FREE";
    case Cell::Occupied: return "OCCUPIED";
    case Cell::Unknown: return "UNKNOWN";
  }
  return "?";
}

GridSpec spec_for_bounds(const BBox& bounds, double resolution) {
  check_resolution(resolution);
  if (!bounds.valid || !(bounds.xmax > bounds.xmin) || !(bounds.ymax > bounds.ymin)) {
    throw Error("BadBounds", "grid bounds must have positive width and height");
  }
  GridSpec s;
  s.resolution = resolution;
  s.origin = {bounds.xmin, bounds.ymin, 0.0};
  s.width = cells_across(bounds.xmax - bounds.xmin, resolution);
  s.height = cells_across(bounds.ymax - bounds.ymin, resolution);
  return s;
}

GridSpec default_spec(const gis::SiteModel& site, double resolution) {
  check_resolution(resolution);
  BBox b = site.bbox();
  if (!b.valid) b.expand(Point2{0.0, 0.0});
  b = b.padded(1.0);
  GridSpec s;
  s.resolution = resolution;
  s.origin = {round9(std::floor(b.xmin / resolution) * resolution), round9(std::floor(b.ymin / resolution) * resolution),
              0.0};
  s.width = cells_across(b.xmax - s.origin.x, resolution);
  s.height = cells_across(b.ymax - s.origin.y, resolution);
  return s;
}

OccupancyGrid OccupancyGrid::filled(const GridSpec& spec, Cell value) {
  return {spec, std::vector<Cell>(spec.cells(), value)};
}

std::size_t OccupancyGrid::count(Cell value) const { return std::count(cells.begin(), cells.end(), value); }

std::vector<bool> polygon_mask(const GridSpec& spec, const Polygon2D& polygon) {
  std::vector<bool> mask(spec.cells(), false);
  const auto ring = polygon.vertices();
  const std::size_t n = ring.size();
  if (n < 3) return mask;
  const BBox bb = polygon.bbox();
  const double res = spec.resolution;

  auto row = [&](double v) { return static_cast<int>(std::clamp(v, -2.0, double(spec.height) + 1.0)); };
  int r0 = std::max(0, row(std::floor((bb.ymin - spec.origin.y) / res - 0.5)) - 1);
  int r1 = std::min(spec.height - 1, row(std::ceil((bb.ymax - spec.origin.y) / res - 0.5)) + 1);
  std::vector<double> xs;
  for (int r = r0; r <= r1; ++r) {
    // Same expressions as ring_contains() on the cell center, so the fill
    // and the point test cannot disagree.
    const double y = spec.cell_center(0, r).y;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Point2& a = ring[i];
      const Point2& b = ring[j];
      if ((a.y > y) != (b.y > y)) xs.push_back((b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x);
    }
    std::sort(xs.begin(), xs.end());
    // Inside iff an odd number of crossings lie at or left of the center,
    // i.e. center in [xs[2k], xs[2k+1]).
    auto first_at_or_after = [&](double x) {
      int c = static_cast<int>(std::clamp(std::floor((x - spec.origin.x) / res - 0.5), -1.0, double(spec.width)));
      while (c > 0 && spec.cell_center(c - 1, r).x >= x) --c;
      while (c < spec.width && (c < 0 || spec.cell_center(c, r).x < x)) ++c;
      return std::clamp(c, 0, spec.width);
    };
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      int c0 = first_at_or_after(xs[k]);
      int c1 = first_at_or_after(xs[k + 1]);
      for (int c = c0; c < c1; ++c) mask[static_cast<std::size_t>(r) * spec.width + c] = true;
    }
  }
  return mask;
}

OccupancyGrid rasterize(const gis::SiteModel& site, const GridSpec& spec, const RasterOptions& options) {
  check_resolution(spec.resolution);
  if (spec.width <= 0 || spec.height <= 0) throw Error("BadBounds", "grid has no cells");
  if (spec.origin.theta != 0.0) throw Error("RegistrationError", "rasterization needs an axis-aligned lattice");
  if (static_cast<double>(spec.width) * spec.height > static_cast<double>(options.max_cells)) {
    throw Error("GridTooLarge",
                fmt::format("{}x{} cells exceeds the limit of {}", spec.width, spec.height, options.max_cells));
  }

  enum : std::uint8_t { kSpace = 1, kLandmark = 2, kDoor = 4, kObstacle = 8 };
  std::vector<std::uint8_t> layers(spec.cells(), 0);
  auto paint = [&](const Polygon2D& poly, std::uint8_t bit) {
    auto m = polygon_mask(spec, poly);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) layers[i] |= bit;
    }
  };
  for (const auto& s : site.building.spaces) paint(s.polygon, kSpace);
  for (const auto& l : site.building.landmarks) {
    if (options.exclude.contains(l.global_id)) continue;
    paint(l.footprint, l.ifc_class == building::LandmarkClass::Door ? kDoor : kLandmark);
  }
  for (const auto& o : site.obstacles) paint(o.polygon, kObstacle);

  OccupancyGrid g = OccupancyGrid::filled(spec, Cell::Unknown);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto v = layers[i];
    if (v & kObstacle) {
      g.cells[i] = Cell::Occupied;
    } else if (v & kDoor) {
      g.cells[i] = Cell::Free;
    } else if (v & kLandmark) {
      g.cells[i] = Cell::Occupied;
    } else if (v & kSpace) {
      g.cells[i] = Cell::Free;
    }
  }
  return g;
}

OccupancyGrid rasterize(const gis::SiteModel& site, double resolution, std::optional<BBox> bounds,
                        const RasterOptions& options) {
  GridSpec spec = bounds ? spec_for_bounds(*bounds, resolution) : default_spec(site, resolution);
  return rasterize(site, spec, options);
}

}  // namespace birs::grid
