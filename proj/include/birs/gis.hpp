#pragma once

// Site-context polygons (existing buildings, water, vegetation) brought into
// the building's local plan frame.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birs/building.hpp"
#include "birs/geometry.hpp"

namespace birs::gis {

enum class Category { ExistingBuilding, WaterSurface, Vegetation };

std::string_view to_string(Category c);
// Throws UnknownCategory.
Category category_from_string(std::string_view s);

struct GeoFeature {
  std::string id;
  Category category = Category::Vegetation;
  std::vector<Point2> vertices;  // source CRS units, file order
  std::string source_crs;
};

// Parses the BIRS-SITE line format:
//
//   BIRS-SITE 1
//   FEATURE <id> <category> <crs>
//   V <x> <y>
//   ...
//   END
//
// Blank lines and '#' comments are ignored. Throws SyntaxError,
// UnknownCategory, TooFewVertices.
std::vector<GeoFeature> parse_site_features(std::string_view document);
std::vector<GeoFeature> read_site_file(const std::string& path);
std::string write_site_features(const std::vector<GeoFeature>& features);

// v -> scale * R(rotation) * v + translation.
struct SimilarityTransform2D {
  double scale = 1.0;
  double rotation = 0.0;
  Point2 translation;

  // Throws InvalidTransform for a non-positive or non-finite scale.
  static SimilarityTransform2D make(double scale, double rotation, Point2 translation);

  Point2 apply(Point2 p) const;
  SimilarityTransform2D inverse() const;
};

// Throws DegenerateAfterTransform when the result has area <= 1e-12 m^2 or
// is otherwise not a simple polygon.
Polygon2D to_local(const GeoFeature& feature, const SimilarityTransform2D& t);

struct Obstacle {
  std::string id;
  Category category = Category::Vegetation;
  Polygon2D polygon;
};

struct SiteModel {
  building::BuildingModel building;
  std::vector<Obstacle> obstacles;

  BBox bbox() const;
};

SiteModel merge_obstacles(building::BuildingModel model, std::vector<Obstacle> obstacles);

// Transforms every feature and merges them.
SiteModel make_site(building::BuildingModel model, const std::vector<GeoFeature>& features,
                    const SimilarityTransform2D& t);

}  // namespace birs::gis
