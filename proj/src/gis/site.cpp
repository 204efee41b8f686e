#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/gis.hpp"
#include "birs/textfmt.hpp"

namespace birs::gis {

namespace {

constexpr std::pair<Category, std::string_view> kCategories[] = {
    {Category::ExistingBuilding, "ExistingBuilding"},
    {Category::WaterSurface, "WaterSurface"},
    {Category::Vegetation, "Vegetation"},
};

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double number(std::string_view s, int lineno) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error("SyntaxError", fmt::format("line {}: '{}' is not a number", lineno, s));
  }
  return v;
}

}  // namespace

std::string_view to_string(Category c) {
  for (const auto& [k, name] : kCategories) {
    if (k == c) return name;
  }
  return "?";
}

Category category_from_string(std::string_view s) {
  for (const auto& [k, name] : kCategories) {
    if (name == s) return k;
  }
  throw Error("UnknownCategory", fmt::format("'{}' is not ExistingBuilding, WaterSurface or Vegetation", s));
}

std::vector<GeoFeature> parse_site_features(std::string_view document) {
  std::vector<GeoFeature> out;
  std::optional<GeoFeature> open;
  bool saw_magic = false;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    auto line = document.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto f = fields(line);
    if (f.empty()) continue;

    if (!saw_magic) {
      if (f.size() != 2 || f[0] != "BIRS-SITE" || f[1] != "1") {
        throw Error("SyntaxError", fmt::format("line {}: expected 'BIRS-SITE 1'", lineno));
      }
      saw_magic = true;
      continue;
    }
    if (f[0] == "FEATURE") {
      if (open) throw Error("SyntaxError", fmt::format("line {}: FEATURE inside feature '{}'", lineno, open->id));
      if (f.size() != 4) throw Error("SyntaxError", fmt::format("line {}: expected 'FEATURE <id> <category> <crs>'", lineno));
      open = GeoFeature{std::string(f[1]), category_from_string(f[2]), {}, std::string(f[3])};
    } else if (f[0] == "V") {
      if (!open) throw Error("SyntaxError", fmt::format("line {}: vertex outside a feature", lineno));
      if (f.size() != 3) throw Error("SyntaxError", fmt::format("line {}: expected 'V <x> <y>'", lineno));
      open->vertices.push_back({number(f[1], lineno), number(f[2], lineno)});
    } else if (f[0] == "END") {
      if (!open) throw Error("SyntaxError", fmt::format("line {}: END without FEATURE", lineno));
      if (f.size() != 1) throw Error("SyntaxError", fmt::format("line {}: trailing text after END", lineno));
      if (open->vertices.size() < 3) {
        throw Error("TooFewVertices", fmt::format("feature '{}' has {} vertices", open->id, open->vertices.size()));
      }
      out.push_back(std::move(*open));
      open.reset();
    } else {
      throw Error("SyntaxError", fmt::format("line {}: unknown record '{}'", lineno, f[0]));
    }
  }
  if (!saw_magic) throw Error("SyntaxError", "missing 'BIRS-SITE 1' header");
  if (open) throw Error("SyntaxError", fmt::format("feature '{}' is missing END", open->id));
  return out;
}

std::vector<GeoFeature> read_site_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_site_features(ss.str());
}

std::string write_site_features(const std::vector<GeoFeature>& features) {
  std::string out = "BIRS-SITE 1\n";
  for (const auto& f : features) {
    out += fmt::format("FEATURE {} {} {}\n", f.id, to_string(f.category), f.source_crs);
    for (const auto& v : f.vertices) out += fmt::format("V {} {}\n", text::decimal(v.x), text::decimal(v.y));
    out += "END\n";
  }
  return out;
}

SimilarityTransform2D SimilarityTransform2D::make(double scale, double rotation, Point2 translation) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error("InvalidTransform", fmt::format("scale must be positive, got {}", scale));
  }
  if (!std::isfinite(rotation) || !std::isfinite(translation.x) || !std::isfinite(translation.y)) {
    throw Error("InvalidTransform", "rotation and translation must be finite");
  }
  return {scale, rotation, translation};
}

Point2 SimilarityTransform2D::apply(Point2 p) const {
  double c = std::cos(rotation), s = std::sin(rotation);
  return {scale * (c * p.x - s * p.y) + translation.x, scale * (s * p.x + c * p.y) + translation.y};
}

SimilarityTransform2D SimilarityTransform2D::inverse() const {
  // p = R^-1 (q - t) / s = (1/s) R(-r) q - (1/s) R(-r) t
  double c = std::cos(-rotation), s = std::sin(-rotation);
  Point2 t{-(c * translation.x - s * translation.y) / scale, -(s * translation.x + c * translation.y) / scale};
  return {1.0 / scale, -rotation, t};
}

Polygon2D to_local(const GeoFeature& feature, const SimilarityTransform2D& t) {
  std::vector<Point2> pts;
  pts.reserve(feature.vertices.size());
  for (const auto& v : feature.vertices) pts.push_back(t.apply(v));
  if (pts.size() >= 3 && std::abs(signed_area(pts)) <= 1e-12) {
    throw Error("DegenerateAfterTransform", fmt::format("feature '{}' collapses to zero area", feature.id));
  }
  try {
    return Polygon2D::from_vertices(std::move(pts));
  } catch (const Error& e) {
    throw Error("DegenerateAfterTransform", fmt::format("feature '{}': {}", feature.id, e.what()));
  }
}

BBox SiteModel::bbox() const {
  BBox b = building.bbox();
  for (const auto& o : obstacles) b.expand(o.polygon.bbox());
  return b;
}

SiteModel merge_obstacles(building::BuildingModel model, std::vector<Obstacle> obstacles) {
  return {std::move(model), std::move(obstacles)};
}

SiteModel make_site(building::BuildingModel model, const std::vector<GeoFeature>& features,
                    const SimilarityTransform2D& t) {
  std::vector<Obstacle> obstacles;
  obstacles.reserve(features.size());
  for (const auto& f : features) obstacles.push_back({f.id, f.category, to_local(f, t)});
  return merge_obstacles(std::move(model), std::move(obstacles));
}

}  // namespace birs::gis
