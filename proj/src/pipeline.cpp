#include "birs/pipeline.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "birs/error.hpp"
#include "birs/textfmt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace birs {

namespace {

const char* const kConfigKeys[] = {
    "ifc",        "site_features", "schedule",  "visibility_table", "function_tags",    "grid_meta",
    "built_meta", "planned_meta",  "resolution", "cut_height",      "geo_transform",    "grid_bounds",
    "listen",     "min_cluster_area", "as_of",  "office_tag",
};

double number_at(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw Error("BadConfig", fmt::format("'{}' must be a number", key));
  return v.get<double>();
}

std::string string_at(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw Error("BadConfig", fmt::format("'{}' must be a string", key));
  return v.get<std::string>();
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoError", fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("IoError", fmt::format("short write to {}", path.string()));
}

Config parse_config(std::string_view text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("BadConfig", e.what());
  }
  if (!doc.is_object()) throw Error("BadConfig", "configuration must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), key) == std::end(kConfigKeys)) {
      throw Error("BadConfig", fmt::format("unknown key '{}'", key));
    }
  }

  Config c;
  c.base_dir = base_dir;
  auto path_of = [&](const char* key, std::optional<fs::path>& dst) {
    if (!doc.contains(key)) return;
    fs::path p = string_at(doc, key);
    dst = p.is_absolute() ? p : (base_dir / p).lexically_normal();
  };
  path_of("ifc", c.ifc);
  path_of("site_features", c.site_features);
  path_of("schedule", c.schedule);
  path_of("visibility_table", c.visibility_table);
  path_of("function_tags", c.function_tags);
  path_of("grid_meta", c.grid_meta);
  path_of("built_meta", c.built_meta);
  path_of("planned_meta", c.planned_meta);

  if (doc.contains("resolution")) c.resolution = number_at(doc, "resolution");
  if (!(c.resolution > 0.0)) throw Error("BadConfig", "'resolution' must be positive");
  if (doc.contains("cut_height")) c.cut_height = number_at(doc, "cut_height");
  if (doc.contains("min_cluster_area")) c.min_cluster_area = number_at(doc, "min_cluster_area");
  if (c.min_cluster_area < 0.0) throw Error("BadConfig", "'min_cluster_area' must be >= 0");
  if (doc.contains("listen")) c.listen = string_at(doc, "listen");
  if (doc.contains("office_tag")) c.office_tag = string_at(doc, "office_tag");
  if (doc.contains("as_of")) c.as_of = progress::parse_date(string_at(doc, "as_of"));

  if (doc.contains("geo_transform")) {
    const auto& g = doc["geo_transform"];
    if (!g.is_object()) throw Error("BadConfig", "'geo_transform' must be an object");
    double scale = g.contains("scale") ? number_at(g, "scale") : 1.0;
    double rotation = g.contains("rotation") ? number_at(g, "rotation") : 0.0;
    Point2 t;
    if (g.contains("translation")) {
      const auto& tr = g["translation"];
      if (!tr.is_array() || tr.size() != 2 || !tr[0].is_number() || !tr[1].is_number()) {
        throw Error("BadConfig", "'geo_transform.translation' must be [x, y]");
      }
      t = {tr[0].get<double>(), tr[1].get<double>()};
    }
    c.geo_transform = gis::SimilarityTransform2D::make(scale, rotation, t);
  }
  if (doc.contains("grid_bounds")) {
    const auto& b = doc["grid_bounds"];
    if (!b.is_array() || b.size() != 4) throw Error("BadConfig", "'grid_bounds' must be [xmin, ymin, xmax, ymax]");
    BBox box;
    for (const auto& v : b) {
      if (!v.is_number()) throw Error("BadConfig", "'grid_bounds' entries must be numbers");
    }
    box.expand(Point2{b[0].get<double>(), b[1].get<double>()});
    box.expand(Point2{b[2].get<double>(), b[3].get<double>()});
    c.grid_bounds = box;
  }
  return c;
}

Config load_config(const fs::path& path) {
  return parse_config(read_text_file(path), fs::absolute(path).parent_path());
}

void validate_paths(const Config& c) {
  const std::pair<const char*, const std::optional<fs::path>*> inputs[] = {
      {"ifc", &c.ifc},
      {"site_features", &c.site_features},
      {"schedule", &c.schedule},
      {"visibility_table", &c.visibility_table},
      {"function_tags", &c.function_tags},
      {"grid_meta", &c.grid_meta},
      {"built_meta", &c.built_meta},
      {"planned_meta", &c.planned_meta},
  };
  for (const auto& [key, p] : inputs) {
    if (*p && !fs::is_regular_file(**p)) {
      throw Error("IoError", fmt::format("{} file {} does not exist", key, (*p)->string()));
    }
  }
}

Artifacts load_artifacts(const Config& config) {
  validate_paths(config);
  Artifacts a;
  a.config = config;
  if (!config.ifc) throw Error("BadConfig", "no 'ifc' input configured");
  a.graph = step::read_spf_file(config.ifc->string());

  building::ExtractOptions opts;
  opts.cut_offset = config.cut_height;
  if (config.visibility_table) opts.visibility = building::VisibilityTable::parse(read_text_file(*config.visibility_table));
  if (config.function_tags) opts.tagger.load_overrides(read_text_file(*config.function_tags));
  a.extraction = building::extract_model(a.graph, opts);

  std::vector<gis::GeoFeature> features;
  if (config.site_features) features = gis::read_site_file(config.site_features->string());
  a.site = gis::make_site(a.extraction.model, features, config.geo_transform);

  a.store = ontology::classify_site(a.site);
  a.topo = topo::build_topological_map(a.site.building);
  if (config.schedule) a.schedule = progress::read_schedule_file(config.schedule->string());
  if (config.grid_meta) a.grid = grid::load_map(config.grid_meta->string());
  if (config.built_meta) a.built = grid::load_map(config.built_meta->string());
  return a;
}

ProgressRun run_progress(const Artifacts& a, const progress::Date& as_of) {
  if (!a.built) throw Error("MissingAsBuilt", "no as-built grid is loaded (built_meta)");
  progress::Schedule empty;
  const progress::Schedule& schedule = a.schedule ? *a.schedule : empty;

  ProgressRun run;
  if (a.config.planned_meta) {
    run.planned = grid::load_map(a.config.planned_meta->string());
  } else {
    grid::RasterOptions ro;
    ro.exclude = progress::not_yet_due(a.model(), schedule, as_of);
    run.planned = grid::rasterize(a.site, a.built->spec, ro);
  }
  run.diff = grid::diff_grids(run.planned, *a.built);
  run.clusters = grid::cluster_diff(run.diff, a.config.min_cluster_area);
  progress::ProgressOptions po;
  po.office_tag = a.config.office_tag;
  run.findings = progress::classify_clusters(run.diff.spec, run.clusters, a.model(), a.topo, schedule, as_of, po);
  return run;
}

std::string write_model_summary(const building::Extraction& ex) {
  const auto& m = ex.model;
  auto pt = [](Point2 p) { return fmt::format("{},{}", text::fixed(p.x, 4), text::fixed(p.y, 4)); };
  std::string out = fmt::format("MODEL {} unit_scale={}\n", text::quoted(m.project_name), text::decimal(m.unit_scale));
  for (const auto& s : m.storeys) {
    out += fmt::format("STOREY {} elevation={} {}\n", s.global_id, text::fixed(s.elevation, 4), text::quoted(s.name));
  }
  for (const auto& s : m.spaces) {
    std::string tags;
    for (const auto& t : s.function_tags) tags += (tags.empty() ? "" : ",") + t;
    out += fmt::format("SPACE {} storey={} centroid={} area={} tags={} {}\n", s.global_id,
                       s.storey.empty() ? "-" : s.storey, pt(s.centroid), text::fixed(s.polygon.area(), 4),
                       tags.empty() ? "-" : tags, text::quoted(s.long_name));
  }
  for (const auto& l : m.landmarks) {
    out += fmt::format("LANDMARK {} {} storey={} centroid={} material={} sensor_visible={}\n", l.global_id,
                       building::ifc_name(l.ifc_class), l.storey.empty() ? "-" : l.storey, pt(l.footprint.centroid()),
                       text::quoted(l.material.name), l.material.sensor_visible ? "true" : "false");
  }
  for (const auto& d : m.doors) {
    out += fmt::format("DOOR {} center={} width={} height={} host={}\n", d.global_id, pt(d.center),
                       text::fixed(d.width, 4), text::fixed(d.height, 4), d.host_wall ? *d.host_wall : "-");
  }
  for (const auto& b : m.boundaries) {
    out += fmt::format("BOUNDARY {} space={} element={} kind={}\n", b.global_id, b.space, b.element ? *b.element : "-",
                       b.kind == building::BoundaryKind::Virtual ? "VIRTUAL" : "PHYSICAL");
  }
  for (const auto& i : ex.issues) {
    out += fmt::format("ISSUE {} #{} {} {}\n", i.code, i.entity, i.global_id.empty() ? "-" : i.global_id,
                       text::quoted(i.message));
  }
  return out;
}

}  // namespace birs
