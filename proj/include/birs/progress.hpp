#pragma once

// As-planned vs. as-built findings from grid-diff clusters.

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "birs/building.hpp"
#include "birs/grid.hpp"
#include "birs/topo.hpp"

namespace birs::progress {

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD. Throws BadDate.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

struct Schedule {
  std::map<std::string, Date, std::less<>> entries;  // element GlobalId -> planned install date

  std::optional<Date> date_of(std::string_view global_id) const;
  std::size_t size() const { return entries.size(); }
};

// Lines of `global_id,YYYY-MM-DD`; blank lines and '#' comments skipped.
// Throws BadDate, DuplicateElement, SyntaxError.
Schedule load_schedule(std::string_view document);
Schedule read_schedule_file(const std::string& path);

// Landmarks whose planned install date is after `as_of`.
std::set<std::string> not_yet_due(const building::BuildingModel& model, const Schedule& schedule, const Date& as_of);

enum class Verdict { AheadOfSchedule, Anomaly, MissingPlanned };

std::string_view to_string(Verdict v);

struct OfficeRoute {
  std::string space_id;
  topo::Route route;
};

struct Finding {
  grid::DiffCluster cluster;
  Verdict verdict = Verdict::Anomaly;
  std::optional<std::string> element;
  double matched_overlap = 0.0;
  std::string storey;  // storey name of the room holding the cluster centroid
  std::optional<OfficeRoute> nearest_office;
};

struct ProgressOptions {
  double match_threshold = 0.5;
  std::string office_tag = "contractor_office";
};

// |cluster cells inside footprint| / |cluster cells|, with the footprint
// sampled at cell centers of `spec`.
double overlap_fraction(const grid::GridSpec& spec, const grid::DiffCluster& cluster, const Polygon2D& footprint);

// EXTRA clusters are matched against scheduled elements, MISSING clusters
// against every planned landmark (unscheduled ones count as already due).
std::vector<Finding> classify_clusters(const grid::GridSpec& spec, const std::vector<grid::DiffCluster>& clusters,
                                       const building::BuildingModel& model, const topo::TopoMap& topo,
                                       const Schedule& schedule, const Date& as_of,
                                       const ProgressOptions& options = {});

// Tagged room with the cheapest route from the room holding `from`. Ties go
// to the smaller space id. Throws PointOutsideBuilding, NoTaggedSpace,
// NoRoute.
OfficeRoute nearest_office(const topo::TopoMap& topo, const building::BuildingModel& model, Point2 from,
                           std::string_view tag = "contractor_office");

std::string write_findings(const topo::TopoMap& topo, const std::vector<Finding>& findings);

}  // namespace birs::progress
