#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "birs/building.hpp"
#include "birs/error.hpp"

namespace birs::building {

PlanPlacement axis_placement_3d(const EntityGraph& g, EntityId id, double unit_scale);

std::string_view ifc_name(LandmarkClass c) {
  switch (c) {
    case LandmarkClass::Wall: return "IfcWall";
    case LandmarkClass::CurtainWall: return "IfcCurtainWall";
    case LandmarkClass::Column: return "IfcColumn";
    case LandmarkClass::Door: return "IfcDoor";
    case LandmarkClass::Railing: return "IfcRailing";
    case LandmarkClass::Stair: return "IfcStair";
  }
  return "?";
}

std::optional<LandmarkClass> landmark_class_from_ifc_name(std::string_view name) {
  for (auto c : kAllLandmarkClasses) {
    if (ifc_name(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<LandmarkClass> landmark_class_for_type(std::string_view t) {
  if (t == "IFCWALL" || t == "IFCWALLSTANDARDCASE" || t == "IFCWALLELEMENTEDCASE") return LandmarkClass::Wall;
  if (t == "IFCCURTAINWALL") return LandmarkClass::CurtainWall;
  if (t == "IFCCOLUMN" || t == "IFCCOLUMNSTANDARDCASE") return LandmarkClass::Column;
  if (t == "IFCDOOR" || t == "IFCDOORSTANDARDCASE") return LandmarkClass::Door;
  if (t == "IFCRAILING") return LandmarkClass::Railing;
  if (t == "IFCSTAIR") return LandmarkClass::Stair;
  return std::nullopt;
}

namespace {

double si_prefix(std::string_view p) {
  if (p == "EXA") return 1e18;
  if (p == "PETA") return 1e15;
  if (p == "TERA") return 1e12;
  if (p == "GIGA") return 1e9;
  if (p == "MEGA") return 1e6;
  if (p == "KILO") return 1e3;
  if (p == "HECTO") return 1e2;
  if (p == "DECA") return 1e1;
  if (p == "DECI") return 1e-1;
  if (p == "CENTI") return 1e-2;
  if (p == "MILLI") return 1e-3;
  if (p == "MICRO") return 1e-6;
  if (p == "NANO") return 1e-9;
  return 1.0;
}

std::optional<double> unit_scale_of(const EntityGraph& g, EntityId id, int depth = 0) {
  const auto* u = g.find(id);
  if (!u || depth > 4) return std::nullopt;
  if (u->type == "IFCSIUNIT") {
    // (Dimensions, UnitType, Prefix, Name)
    if (u->arg(1).as_enum() != "LENGTHUNIT") return std::nullopt;
    double scale = 1.0;
    if (!u->arg(2).is_unset()) scale = si_prefix(u->arg(2).as_enum());
    return scale;
  }
  if (u->type == "IFCCONVERSIONBASEDUNIT") {
    // (Dimensions, UnitType, Name, ConversionFactor)
    if (u->arg(1).as_enum() != "LENGTHUNIT") return std::nullopt;
    const auto& m = g.resolve(u->arg(3).as_ref());
    double value = m.arg(0).as_real();
    double base = 1.0;
    if (auto comp = m.arg(1).ref_or_null()) {
      const auto* cu = g.find(*comp);
      if (cu && cu->type == "IFCSIUNIT" && !cu->arg(2).is_unset()) base = si_prefix(cu->arg(2).as_enum());
    }
    return value * base;
  }
  return std::nullopt;
}

std::string text_or_empty(const step::Entity& e, std::size_t i) {
  if (i >= e.args.size()) return {};
  const auto& s = e.args[i].storage();
  if (const auto* t = std::get_if<std::string>(&s)) return *t;
  if (const auto* t = std::get_if<step::Typed>(&s); t && t->args.size() == 1) {
    if (const auto* inner = std::get_if<std::string>(&t->args[0].storage())) return *inner;
  }
  return {};
}

std::optional<double> real_or_null(const step::Entity& e, std::size_t i) {
  if (i >= e.args.size() || !e.args[i].is_number()) {
    if (i < e.args.size() && std::holds_alternative<step::Typed>(e.args[i].storage())) return e.args[i].as_real();
    return std::nullopt;
  }
  return e.args[i].as_real();
}

const std::string& global_id_of(const step::Entity& e) { return e.arg(0).as_text(); }

}  // namespace

double length_unit_scale(const EntityGraph& graph) {
  std::vector<EntityId> assignments;
  for (EntityId p : graph.entities_of_type("IFCPROJECT")) {
    const auto& proj = graph.resolve(p);
    if (proj.args.size() > 8) {
      if (auto r = proj.args[8].ref_or_null()) assignments.push_back(*r);
    }
  }
  for (EntityId a : graph.entities_of_type("IFCUNITASSIGNMENT")) assignments.push_back(a);
  for (EntityId a : assignments) {
    const auto* ua = graph.find(a);
    if (!ua || ua->type != "IFCUNITASSIGNMENT") continue;
    for (const auto& u : ua->arg(0).as_list()) {
      if (auto id = u.ref_or_null()) {
        if (auto s = unit_scale_of(graph, *id)) return *s;
      }
    }
  }
  return 1.0;
}

std::vector<BoundaryRel> space_boundaries(const EntityGraph& graph) {
  std::vector<BoundaryRel> out;
  for (EntityId id : graph.entities_of_type("IFCRELSPACEBOUNDARY")) {
    // (GlobalId, OwnerHistory, Name, Description, RelatingSpace,
    //  RelatedBuildingElement, ConnectionGeometry, PhysicalOrVirtualBoundary, ...)
    const auto& rel = graph.resolve(id);
    BoundaryRel b;
    b.global_id = global_id_of(rel);
    const auto& space = graph.resolve(rel.arg(4).as_ref());
    b.space = global_id_of(space);

    std::optional<EntityId> virtual_element;
    if (auto el = rel.arg(5).ref_or_null()) {
      const auto& element = graph.resolve(*el);
      if (element.type == "IFCVIRTUALELEMENT") {
        virtual_element = *el;
      } else {
        b.element = global_id_of(element);
      }
    }
    std::optional<EntityId> geometry = rel.args.size() > 6 ? rel.args[6].ref_or_null() : std::nullopt;

    std::string flag = rel.args.size() > 7 && !rel.args[7].is_unset() ? rel.args[7].as_enum() : "NOTDEFINED";
    b.kind = (!b.element || flag == "VIRTUAL") ? BoundaryKind::Virtual : BoundaryKind::Physical;
    if (b.kind == BoundaryKind::Virtual) b.pairing_key = virtual_element ? virtual_element : geometry;
    out.push_back(std::move(b));
  }
  return out;
}

const SpaceRec* BuildingModel::find_space(std::string_view id) const {
  auto it = std::find_if(spaces.begin(), spaces.end(), [&](const SpaceRec& s) { return s.global_id == id; });
  return it == spaces.end() ? nullptr : &*it;
}

const Landmark* BuildingModel::find_landmark(std::string_view id) const {
  auto it = std::find_if(landmarks.begin(), landmarks.end(), [&](const Landmark& l) { return l.global_id == id; });
  return it == landmarks.end() ? nullptr : &*it;
}

const DoorRec* BuildingModel::find_door(std::string_view id) const {
  auto it = std::find_if(doors.begin(), doors.end(), [&](const DoorRec& d) { return d.global_id == id; });
  return it == doors.end() ? nullptr : &*it;
}

const Storey* BuildingModel::find_storey(std::string_view id) const {
  auto it = std::find_if(storeys.begin(), storeys.end(), [&](const Storey& s) { return s.global_id == id; });
  return it == storeys.end() ? nullptr : &*it;
}

std::vector<const SpaceRec*> BuildingModel::spaces_named(std::string_view name) const {
  std::vector<const SpaceRec*> out;
  for (const auto& s : spaces) {
    if (s.long_name == name || s.name == name) out.push_back(&s);
  }
  return out;
}

std::vector<const Landmark*> BuildingModel::boundary_landmarks(std::string_view space_id) const {
  std::vector<const Landmark*> out;
  for (const auto& b : boundaries) {
    if (b.space != space_id || !b.element) continue;
    if (const Landmark* l = find_landmark(*b.element)) {
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
  }
  return out;
}

BBox BuildingModel::bbox() const {
  BBox b;
  for (const auto& s : spaces) b.expand(s.polygon.bbox());
  for (const auto& l : landmarks) b.expand(l.footprint.bbox());
  return b;
}

Extraction extract_model(const EntityGraph& graph, const ExtractOptions& options) {
  Extraction ex;
  BuildingModel& m = ex.model;
  m.unit_scale = length_unit_scale(graph);
  const double scale = m.unit_scale;

  auto issue = [&](std::string code, const step::Entity& e, std::string message) {
    std::string gid = e.args.empty() ? std::string() : text_or_empty(e, 0);
    ex.issues.push_back({std::move(code), e.id, std::move(gid), std::move(message)});
  };

  for (EntityId p : graph.entities_of_type("IFCPROJECT")) {
    const auto& proj = graph.resolve(p);
    m.project_name = text_or_empty(proj, 2);
    if (m.project_name.empty()) m.project_name = text_or_empty(proj, 5);
    break;
  }

  // Spatial containment: child entity -> containing structure entity.
  std::map<EntityId, EntityId> parent;
  for (EntityId id : graph.entities_of_type("IFCRELCONTAINEDINSPATIALSTRUCTURE")) {
    const auto& rel = graph.resolve(id);
    auto structure = rel.arg(5).ref_or_null();
    if (!structure) continue;
    for (const auto& v : rel.arg(4).as_list()) {
      if (auto c = v.ref_or_null()) parent[*c] = *structure;
    }
  }
  for (EntityId id : graph.entities_of_type("IFCRELAGGREGATES")) {
    const auto& rel = graph.resolve(id);
    auto whole = rel.arg(4).ref_or_null();
    if (!whole) continue;
    for (const auto& v : rel.arg(5).as_list()) {
      if (auto c = v.ref_or_null()) parent[*c] = *whole;
    }
  }

  std::map<EntityId, const Storey*> storey_by_entity;
  m.storeys.reserve(graph.entities_of_type("IFCBUILDINGSTOREY").size());
  for (EntityId id : graph.entities_of_type("IFCBUILDINGSTOREY")) {
    const auto& e = graph.resolve(id);
    Storey s;
    s.global_id = global_id_of(e);
    s.name = text_or_empty(e, 2);
    if (s.name.empty()) s.name = text_or_empty(e, 7);
    try {
      if (auto pl = e.arg(5).ref_or_null()) {
        s.elevation = compose_placement(graph, *pl, scale).elevation;
      } else if (auto elev = real_or_null(e, 9)) {
        s.elevation = *elev * scale;
      }
    } catch (const Error& err) {
      issue(err.code(), e, err.what());
    }
    m.storeys.push_back(std::move(s));
    storey_by_entity[id] = &m.storeys.back();
  }

  auto storey_of = [&](EntityId id) -> const Storey* {
    EntityId cur = id;
    for (int hops = 0; hops < 16; ++hops) {
      auto it = parent.find(cur);
      if (it == parent.end()) return nullptr;
      cur = it->second;
      if (auto s = storey_by_entity.find(cur); s != storey_by_entity.end()) return s->second;
    }
    return nullptr;
  };

  auto cut_for = [&](const Storey* s) { return (s ? s->elevation : 0.0) + options.cut_offset; };

  for (EntityId id : graph.entities_of_type("IFCSPACE")) {
    const auto& e = graph.resolve(id);
    const Storey* storey = storey_of(id);
    SpaceRec s;
    s.global_id = global_id_of(e);
    s.entity = id;
    s.name = text_or_empty(e, 2);
    s.long_name = text_or_empty(e, 7);
    if (s.long_name.empty()) s.long_name = s.name;
    s.storey = storey ? storey->global_id : std::string();
    try {
      auto poly = footprint(graph, id, cut_for(storey), scale);
      if (!poly) {
        issue("NotAtCutHeight", e, fmt::format("space '{}' does not span the plan cut", s.long_name));
        continue;
      }
      s.polygon = std::move(*poly);
    } catch (const Error& err) {
      issue(err.code(), e, err.what());
      continue;
    }
    s.centroid = s.polygon.centroid();
    s.function_tags = options.tagger.tags_for(s.global_id, s.long_name);
    m.spaces.push_back(std::move(s));
  }

  // Door host walls: door -> opening (fills), opening -> wall (voids).
  std::map<EntityId, EntityId> opening_of_door, wall_of_opening;
  for (EntityId id : graph.entities_of_type("IFCRELFILLSELEMENT")) {
    const auto& rel = graph.resolve(id);
    if (auto o = rel.arg(4).ref_or_null(); o) {
      if (auto d = rel.arg(5).ref_or_null()) opening_of_door[*d] = *o;
    }
  }
  for (EntityId id : graph.entities_of_type("IFCRELVOIDSELEMENT")) {
    const auto& rel = graph.resolve(id);
    if (auto w = rel.arg(4).ref_or_null(); w) {
      if (auto o = rel.arg(5).ref_or_null()) wall_of_opening[*o] = *w;
    }
  }

  for (const auto& [id, e] : graph.entities()) {
    auto cls = landmark_class_for_type(e.type);
    if (!cls) continue;
    const Storey* storey = storey_of(id);
    const double cut = cut_for(storey);

    std::optional<Polygon2D> poly;
    std::optional<PlanPlacement> placement;
    try {
      placement = e.arg(5).ref_or_null() ? compose_placement(graph, *e.arg(5).ref_or_null(), scale) : PlanPlacement{};
      poly = footprint(graph, id, cut, scale);
      if (!poly) issue("NotAtCutHeight", e, fmt::format("{} does not span the plan cut", ifc_name(*cls)));
    } catch (const Error& err) {
      issue(err.code(), e, err.what());
    }

    if (poly) {
      Landmark l;
      l.global_id = global_id_of(e);
      l.entity = id;
      l.ifc_class = *cls;
      l.name = text_or_empty(e, 2);
      l.footprint = *poly;
      l.pose = placement->pose;
      l.elevation = placement->elevation;
      l.material = material_of(graph, id, options.visibility);
      l.storey = storey ? storey->global_id : std::string();
      m.landmarks.push_back(std::move(l));
    }

    if (*cls == LandmarkClass::Door) {
      // (..., Tag, OverallHeight, OverallWidth, ...)
      auto h = real_or_null(e, 8);
      auto w = real_or_null(e, 9);
      if (!h || !w || *h <= 0 || *w <= 0) {
        issue("MissingDoorDimensions", e, "door has no positive OverallHeight/OverallWidth");
        continue;
      }
      if (!poly && !placement) continue;  // no usable door center
      DoorRec d;
      d.global_id = global_id_of(e);
      d.height = *h * scale;
      d.width = *w * scale;
      d.center = poly ? poly->centroid() : Point2{placement->pose.x, placement->pose.y};
      if (auto o = opening_of_door.find(id); o != opening_of_door.end()) {
        if (auto w2 = wall_of_opening.find(o->second); w2 != wall_of_opening.end()) {
          if (const auto* wall = graph.find(w2->second)) d.host_wall = global_id_of(*wall);
        }
      }
      m.doors.push_back(std::move(d));
    }
  }

  std::vector<BoundaryRel> rels;
  try {
    rels = space_boundaries(graph);
  } catch (const Error& err) {
    ex.issues.push_back({err.code(), 0, {}, err.what()});
  }
  std::set<std::string> explained;
  for (const auto& i : ex.issues) explained.insert(i.global_id);
  for (auto& b : rels) {
    if (!m.find_space(b.space)) {
      ex.issues.push_back({"BoundaryDropped", 0, b.global_id,
                           fmt::format("boundary space {} was not extracted", b.space)});
      continue;
    }
    if (b.element && !m.find_landmark(*b.element) && !m.find_door(*b.element)) {
      if (!explained.contains(*b.element)) {
        ex.issues.push_back({"NotALandmark", 0, *b.element,
                             fmt::format("boundary element {} is not a navigation landmark", *b.element)});
        explained.insert(*b.element);
      }
      continue;
    }
    m.boundaries.push_back(std::move(b));
  }
  return ex;
}

}  // namespace birs::building
