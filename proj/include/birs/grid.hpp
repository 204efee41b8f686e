#pragma once

// Ternary occupancy grids: rasterization, map-server file pair, and
// registered diffs with clustering.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "birs/geometry.hpp"
#include "birs/gis.hpp"

namespace birs::grid {

enum class Cell : std::uint8_t { Free, Occupied, Unknown };

std::string_view to_string(Cell c);

inline constexpr double kDefaultResolution = 0.05;
inline constexpr std::uint64_t kDefaultMaxCells = 100'000'000;

// Cell lattice: cell (c, r) covers [ox + c*res, ox + (c+1)*res) x
// [oy + r*res, oy + (r+1)*res); r = 0 is the bottom row.
struct GridSpec {
  int width = 0;
  int height = 0;
  double resolution = kDefaultResolution;
  Pose2D origin;

  Point2 cell_center(int c, int r) const {
    return {origin.x + (c + 0.5) * resolution, origin.y + (r + 0.5) * resolution};
  }
  std::size_t cells() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Lattice covering `bounds` with origin at its lower-left corner.
GridSpec spec_for_bounds(const BBox& bounds, double resolution);
// Site bounding box padded by 1 m, origin snapped to a multiple of the
// resolution.
GridSpec default_spec(const gis::SiteModel& site, double resolution);

struct OccupancyGrid {
  GridSpec spec;
  std::vector<Cell> cells;  // row-major from the bottom-left

  static OccupancyGrid filled(const GridSpec& spec, Cell value);

  int width() const { return spec.width; }
  int height() const { return spec.height; }
  double resolution() const { return spec.resolution; }
  const Pose2D& origin() const { return spec.origin; }

  Cell at(int c, int r) const { return cells[static_cast<std::size_t>(r) * spec.width + c]; }
  Cell& at(int c, int r) { return cells[static_cast<std::size_t>(r) * spec.width + c]; }
  std::size_t count(Cell value) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;
};

// Cells whose center lies inside the polygon (even-odd rule), as a mask over
// `spec`. Scanline fill; agrees exactly with Polygon2D::contains on each
// cell center.
std::vector<bool> polygon_mask(const GridSpec& spec, const Polygon2D& polygon);

struct RasterOptions {
  std::uint64_t max_cells = kDefaultMaxCells;
  // Landmark GlobalIds left out, e.g. elements not yet due.
  std::set<std::string> exclude;
};

// Per cell center: obstacle -> OCCUPIED, door footprint -> FREE, other
// landmark -> OCCUPIED, space -> FREE, else UNKNOWN. Throws GridTooLarge,
// InvalidResolution.
OccupancyGrid rasterize(const gis::SiteModel& site, const GridSpec& spec, const RasterOptions& options = {});
OccupancyGrid rasterize(const gis::SiteModel& site, double resolution, std::optional<BBox> bounds = std::nullopt,
                        const RasterOptions& options = {});

// --- map-server file pair ----------------------------------------------------

struct MapMeta {
  std::string image;
  double resolution = 0.0;
  Pose2D origin;
  int negate = 0;
  double occupied_thresh = 0.65;
  double free_thresh = 0.196;
};

std::uint8_t pixel_of(Cell c);
Cell cell_of(std::uint8_t pixel, const MapMeta& meta);

// Binary P5 image, top row = highest r.
std::string encode_pgm(const OccupancyGrid& grid);
std::string format_meta(const OccupancyGrid& grid, std::string_view image_ref);
// Throws MissingMetaKey, BadMeta.
MapMeta parse_meta(std::string_view yaml);
// Throws BadMagic, DimensionMismatch.
OccupancyGrid decode_pgm(std::string_view bytes, const MapMeta& meta);

// The meta file's `image` entry is written relative to the meta file's
// directory. Throws IoError.
void export_map(const OccupancyGrid& grid, const std::string& image_path, const std::string& meta_path);
OccupancyGrid import_map(const std::string& image_path, const std::string& meta_path);
// Reads the image named inside the meta file.
OccupancyGrid load_map(const std::string& meta_path);
// 8-bit grayscale PNG with the same pixel values as the PGM.
void export_png(const OccupancyGrid& grid, const std::string& path);

// --- diffs -------------------------------------------------------------------

enum class DiffKind : std::uint8_t { None, Extra, Missing };

std::string_view to_string(DiffKind k);

struct DiffLattice {
  GridSpec spec;  // overlap of the two inputs
  std::vector<DiffKind> cells;

  DiffKind at(int c, int r) const { return cells[static_cast<std::size_t>(r) * spec.width + c]; }
  std::size_t count(DiffKind k) const;
};

// EXTRA: built OCCUPIED, planned FREE. MISSING: planned OCCUPIED, built
// FREE. Throws ResolutionMismatch, RegistrationError.
DiffLattice diff_grids(const OccupancyGrid& planned, const OccupancyGrid& built);

struct CellIndex {
  int c = 0;
  int r = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct DiffCluster {
  int id = 0;
  DiffKind kind = DiffKind::Extra;
  std::vector<CellIndex> cells;  // sorted by (r, c)
  double area = 0.0;
  Point2 centroid;
  BBox bbox;  // world extent of the cells
};

inline constexpr double kDefaultMinClusterArea = 0.05;

// 4-connected components per kind, smaller than min_area dropped. Ordered by
// area descending, then (min r, min c); ids are 1-based in that order.
std::vector<DiffCluster> cluster_diff(const DiffLattice& diff, double min_area = kDefaultMinClusterArea);

std::string write_diff_report(const DiffLattice& diff, const std::vector<DiffCluster>& clusters);

}  // namespace birs::grid
