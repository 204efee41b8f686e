#pragma once

// Configuration and the artifact bundle shared by the CLI and the service.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "birs/building.hpp"
#include "birs/gis.hpp"
#include "birs/grid.hpp"
#include "birs/ontology.hpp"
#include "birs/progress.hpp"
#include "birs/step.hpp"
#include "birs/topo.hpp"

namespace birs {

struct Config {
  std::filesystem::path base_dir = ".";
  // Inputs. Relative paths in a config file resolve against its directory.
  std::optional<std::filesystem::path> ifc;
  std::optional<std::filesystem::path> site_features;
  std::optional<std::filesystem::path> schedule;
  std::optional<std::filesystem::path> visibility_table;
  std::optional<std::filesystem::path> function_tags;
  // Map files: the served planned grid, the as-built grid, and an optional
  // planned grid that replaces the rasterized one in progress reports.
  std::optional<std::filesystem::path> grid_meta;
  std::optional<std::filesystem::path> built_meta;
  std::optional<std::filesystem::path> planned_meta;

  double resolution = grid::kDefaultResolution;
  double cut_height = 1.0;  // plan cut above each storey's elevation
  gis::SimilarityTransform2D geo_transform;
  std::optional<BBox> grid_bounds;
  std::string listen = "127.0.0.1:7878";
  double min_cluster_area = grid::kDefaultMinClusterArea;
  std::optional<progress::Date> as_of;
  std::string office_tag = "contractor_office";
};

// JSON document; unknown keys are rejected. Throws BadConfig, IoError.
Config parse_config(std::string_view json, const std::filesystem::path& base_dir);
Config load_config(const std::filesystem::path& path);

// Every configured input path must exist. Throws IoError naming the first
// missing one.
void validate_paths(const Config& config);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

struct Artifacts {
  Config config;
  step::EntityGraph graph;
  building::Extraction extraction;
  gis::SiteModel site;
  ontology::TripleStore store;
  topo::TopoMap topo;
  std::optional<progress::Schedule> schedule;
  std::optional<grid::OccupancyGrid> grid;  // from grid_meta
  std::optional<grid::OccupancyGrid> built;  // from built_meta

  const building::BuildingModel& model() const { return site.building; }
};

// Parse, extract, merge site obstacles, classify, build the room graph and
// load whichever map files are configured. Throws the first module error.
Artifacts load_artifacts(const Config& config);

struct ProgressRun {
  grid::OccupancyGrid planned;
  grid::DiffLattice diff;
  std::vector<grid::DiffCluster> clusters;
  std::vector<progress::Finding> findings;
};

// Planned grid: `planned_meta` when configured, else the model rasterized
// on the built grid's lattice without elements that are not yet due.
// Throws MissingAsBuilt, MissingSchedule.
ProgressRun run_progress(const Artifacts& a, const progress::Date& as_of);

// Text dump of the extracted model: storeys, spaces, landmarks, doors,
// boundaries and extraction issues, one record per line.
std::string write_model_summary(const building::Extraction& ex);

}  // namespace birs
