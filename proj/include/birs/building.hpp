#pragma once

// Plan-view building model resolved from an IFC entity graph.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birs/geometry.hpp"
#include "birs/step.hpp"

namespace birs::building {

using step::EntityGraph;
using step::EntityId;

enum class LandmarkClass { Wall, CurtainWall, Column, Door, Railing, Stair };

inline constexpr LandmarkClass kAllLandmarkClasses[] = {
    LandmarkClass::Wall, LandmarkClass::CurtainWall, LandmarkClass::Column,
    LandmarkClass::Door, LandmarkClass::Railing,     LandmarkClass::Stair,
};

// "IfcWall", "IfcCurtainWall", ...
std::string_view ifc_name(LandmarkClass c);
std::optional<LandmarkClass> landmark_class_from_ifc_name(std::string_view name);
// Maps STEP type keywords (IFCWALL, IFCWALLSTANDARDCASE, ...) to a class.
std::optional<LandmarkClass> landmark_class_for_type(std::string_view step_type);

struct PlanPlacement {
  Pose2D pose;
  double elevation = 0.0;
};

// Composes the IFCLOCALPLACEMENT chain down to the root. Lengths are
// multiplied by `unit_scale`. Throws PlacementCycle, DanglingReference,
// NonPlanarAxis.
PlanPlacement compose_placement(const EntityGraph& graph, EntityId placement_id, double unit_scale = 1.0);

// Plan cut through the product's extruded body at absolute height
// `cut_height` (meters). nullopt when no body solid spans the cut. Throws
// UnsupportedRepresentation, DegenerateProfile and placement errors.
std::optional<Polygon2D> footprint(const EntityGraph& graph, EntityId product_id, double cut_height,
                                   double unit_scale = 1.0);

struct MaterialInfo {
  std::string name;
  bool sensor_visible = true;

  friend bool operator==(const MaterialInfo&, const MaterialInfo&) = default;
};

// Ordered material-name glob patterns -> sensor visibility. First match
// wins; names matching no rule are visible.
class VisibilityTable {
 public:
  struct Rule {
    std::string pattern;
    bool visible;
  };

  // Ships with `Glass* = false`.
  static VisibilityTable defaults();
  // Lines of `pattern = true|false`; '#' starts a comment. Throws
  // BadVisibilityRule.
  static VisibilityTable parse(std::string_view document);

  bool visible(std::string_view material_name) const;
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

// Follows IFCRELASSOCIATESMATERIAL. Absent association yields
// {"UNKNOWN", true}.
MaterialInfo material_of(const EntityGraph& graph, EntityId product_id, const VisibilityTable& table);

// Function labels for spaces: keyword rules on the long name plus explicit
// per-space overrides.
class FunctionTagger {
 public:
  struct KeywordRule {
    std::string keyword;  // matched case-insensitively as a substring
    std::vector<std::string> tags;
  };

  static FunctionTagger defaults();
  // Adds rules from a document of lines
  //   keyword "<substring>" = tag, tag
  //   space "<long name or GlobalId>" = tag, tag
  // Overrides replace the keyword-derived tags for that space.
  // Throws BadFunctionTagRule.
  void load_overrides(std::string_view document);

  std::vector<std::string> tags_for(std::string_view global_id, std::string_view long_name) const;

 private:
  std::vector<KeywordRule> keywords_;
  std::map<std::string, std::vector<std::string>, std::less<>> overrides_;
};

struct Storey {
  std::string global_id;
  std::string name;
  double elevation = 0.0;
};

struct Landmark {
  std::string global_id;
  EntityId entity = 0;
  LandmarkClass ifc_class = LandmarkClass::Wall;
  std::string name;
  Polygon2D footprint;
  Pose2D pose;
  double elevation = 0.0;
  MaterialInfo material;
  std::string storey;  // storey GlobalId, empty when uncontained
};

struct SpaceRec {
  std::string global_id;
  EntityId entity = 0;
  std::string name;
  std::string long_name;
  Polygon2D polygon;
  Point2 centroid;
  std::string storey;
  std::vector<std::string> function_tags;
};

struct DoorRec {
  std::string global_id;
  double width = 0.0;
  double height = 0.0;
  Point2 center;
  std::optional<std::string> host_wall;
};

enum class BoundaryKind { Physical, Virtual };

struct BoundaryRel {
  std::string global_id;
  std::string space;                   // space GlobalId
  std::optional<std::string> element;  // related element GlobalId
  BoundaryKind kind = BoundaryKind::Physical;
  // Identity shared by the two sides of one virtual opening: the
  // connection-geometry entity, else the IfcVirtualElement entity.
  std::optional<EntityId> pairing_key;
};

// One record per IFCRELSPACEBOUNDARY. Throws DanglingReference for
// unresolved space or element references.
std::vector<BoundaryRel> space_boundaries(const EntityGraph& graph);

struct BuildingModel {
  std::string project_name;
  double unit_scale = 1.0;  // source length unit in meters
  std::vector<Storey> storeys;
  std::vector<SpaceRec> spaces;
  std::vector<Landmark> landmarks;
  std::vector<DoorRec> doors;
  std::vector<BoundaryRel> boundaries;

  const SpaceRec* find_space(std::string_view global_id) const;
  const Landmark* find_landmark(std::string_view global_id) const;
  const DoorRec* find_door(std::string_view global_id) const;
  const Storey* find_storey(std::string_view global_id) const;
  // Every space whose long name (or name) equals `name`.
  std::vector<const SpaceRec*> spaces_named(std::string_view name) const;
  // Boundary landmarks of a space, in boundary order.
  std::vector<const Landmark*> boundary_landmarks(std::string_view space_id) const;
  BBox bbox() const;
};

struct Issue {
  std::string code;
  EntityId entity = 0;
  std::string global_id;
  std::string message;
};

struct ExtractOptions {
  // Plan cut, measured above each element's storey elevation.
  double cut_offset = 1.0;
  VisibilityTable visibility = VisibilityTable::defaults();
  FunctionTagger tagger = FunctionTagger::defaults();
};

struct Extraction {
  BuildingModel model;
  std::vector<Issue> issues;
};

// Partial extraction: per-element failures land in `issues` and the rest of
// the model is still produced.
Extraction extract_model(const EntityGraph& graph, const ExtractOptions& options = {});

// Length unit of the model in meters (IFCSIUNIT / IFCCONVERSIONBASEDUNIT),
// 1.0 when none is declared.
double length_unit_scale(const EntityGraph& graph);

}  // namespace birs::building
