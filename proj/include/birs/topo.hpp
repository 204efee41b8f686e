#pragma once

// Room graph: spaces are nodes, doors and virtual openings are edges.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birs/building.hpp"
#include "birs/geometry.hpp"

namespace birs::topo {

inline constexpr std::string_view kVirtualVia = "VIRTUAL";

struct TopoNode {
  std::string space_id;
  std::string long_name;
  Point2 centroid;
  std::string storey;
  std::vector<std::string> function_tags;
  // Some boundary landmark is invisible to the range sensor, so the plan
  // layout is more trustworthy than the live grid in this room.
  bool grid_trust = false;
};

struct TopoEdge {
  std::string a, b;  // a < b
  std::string via;   // door GlobalId or kVirtualVia
  std::optional<Point2> door_center;
  std::optional<double> width;
  std::optional<double> height;
  double cost = 0.0;

  bool is_door() const { return via != kVirtualVia; }
  const std::string& other(const std::string& n) const { return n == a ? b : a; }
};

struct TopoMap {
  std::vector<TopoNode> nodes;  // sorted by space id
  std::vector<TopoEdge> edges;  // sorted by (a, b, via)
  // Validation findings, e.g. duplicate room names within a storey.
  std::vector<std::string> issues;

  const TopoNode* find(std::string_view space_id) const;
  // Space id for a GlobalId or an unambiguous long name. Throws
  // UnknownSpace or AmbiguousName.
  std::string resolve(std::string_view name_or_id) const;
  // Indices into `edges` incident to the node.
  std::vector<std::size_t> incident(std::string_view space_id) const;
};

TopoMap build_topological_map(const building::BuildingModel& model);

// Even-odd containment; points on a room outline go to the smallest
// GlobalId among the rooms touching them.
std::optional<std::string> room_of_point(const building::BuildingModel& model, Point2 p);

struct Route {
  std::vector<std::string> nodes;
  std::vector<std::size_t> edges;  // indices into TopoMap::edges
  double total_cost = 0.0;
};

// Uniform-cost search over edge cost. Equal-cost routes resolve to the
// lexicographically smallest node-id sequence. Throws UnknownSpace, NoRoute.
Route plan_path(const TopoMap& map, std::string_view start, std::string_view goal);

struct Waypoint {
  enum class Kind { Room, Door };

  Kind kind = Kind::Room;
  Point2 point;
  std::string id;    // space id or door id
  std::string name;  // room long name; empty for doors
  std::optional<double> width;
  std::optional<double> height;
  // For doors: the advisory of the room being entered.
  bool grid_trust = false;
};

// centroid(start), door(e1), centroid(n2), ..., centroid(goal). Virtual
// openings add no waypoint of their own.
std::vector<Waypoint> waypoints(const TopoMap& map, const Route& route);

// Line document:
//   BIRS-TOPO 1
//   NODE <id> <x> <y> <storey|-> <grid_trust 0|1> <tags|-> "<long name>"
//   EDGE <a> <b> <via> <cost> <door x|-> <door y|-> <width|-> <height|->
std::string write_topo_map(const TopoMap& map);
std::string write_route(const TopoMap& map, const Route& route);

}  // namespace birs::topo
