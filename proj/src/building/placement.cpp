#include <cmath>
#include <set>

#include <fmt/format.h>

#include "birs/building.hpp"
#include "birs/error.hpp"

namespace birs::building {

namespace {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

Vec3 read_point3(const EntityGraph& g, EntityId id) {
  const auto& e = g.resolve(id);
  const auto& coords = e.arg(0).as_list();
  Vec3 v;
  if (!coords.empty()) v.x = coords[0].as_real();
  if (coords.size() > 1) v.y = coords[1].as_real();
  if (coords.size() > 2) v.z = coords[2].as_real();
  return v;
}

Vec3 read_direction(const EntityGraph& g, EntityId id) { return read_point3(g, id); }

double norm(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

void check_vertical(const Vec3& axis, EntityId owner) {
  double n = norm(axis);
  if (n == 0.0) throw Error("NonPlanarAxis", fmt::format("#{} has a zero-length axis", owner));
  double dx = axis.x / n, dy = axis.y / n, dz = axis.z / n - 1.0;
  if (std::sqrt(dx * dx + dy * dy + dz * dz) > 1e-6) {
    throw Error("NonPlanarAxis", fmt::format("#{} axis ({}, {}, {}) is not +z", owner, axis.x, axis.y, axis.z));
  }
}

}  // namespace

// IFCAXIS2PLACEMENT3D(Location, Axis, RefDirection) projected to plan.
PlanPlacement axis_placement_3d(const EntityGraph& g, EntityId id, double unit_scale) {
  const auto& e = g.resolve(id);
  if (e.type != "IFCAXIS2PLACEMENT3D") {
    throw Error("UnsupportedRepresentation", fmt::format("#{} is {}, expected IFCAXIS2PLACEMENT3D", id, e.type));
  }
  Vec3 loc = read_point3(g, e.arg(0).as_ref());
  if (auto axis = e.args.size() > 1 ? e.args[1].ref_or_null() : std::nullopt) {
    check_vertical(read_direction(g, *axis), id);
  }
  double theta = 0.0;
  if (auto ref = e.args.size() > 2 ? e.args[2].ref_or_null() : std::nullopt) {
    Vec3 d = read_direction(g, *ref);
    if (d.x == 0.0 && d.y == 0.0) throw Error("NonPlanarAxis", fmt::format("#{} reference direction is vertical", id));
    theta = std::atan2(d.y, d.x);
  }
  return {{loc.x * unit_scale, loc.y * unit_scale, normalize_angle(theta)}, loc.z * unit_scale};
}

// IFCAXIS2PLACEMENT2D(Location, RefDirection).
Pose2D axis_placement_2d(const EntityGraph& g, EntityId id, double unit_scale) {
  const auto& e = g.resolve(id);
  if (e.type != "IFCAXIS2PLACEMENT2D") {
    throw Error("UnsupportedRepresentation", fmt::format("#{} is {}, expected IFCAXIS2PLACEMENT2D", id, e.type));
  }
  Vec3 loc = read_point3(g, e.arg(0).as_ref());
  double theta = 0.0;
  if (auto ref = e.args.size() > 1 ? e.args[1].ref_or_null() : std::nullopt) {
    Vec3 d = read_direction(g, *ref);
    theta = std::atan2(d.y, d.x);
  }
  return {loc.x * unit_scale, loc.y * unit_scale, normalize_angle(theta)};
}

PlanPlacement compose_placement(const EntityGraph& graph, EntityId placement_id, double unit_scale) {
  // Walk to the root first, then compose top-down.
  std::vector<EntityId> chain;
  std::set<EntityId> seen;
  std::optional<EntityId> cur = placement_id;
  while (cur) {
    if (!seen.insert(*cur).second) {
      std::string ids;
      for (EntityId c : chain) ids += fmt::format("#{} ", c);
      throw Error("PlacementCycle", fmt::format("placement chain revisits #{}: {}", *cur, ids));
    }
    const auto& e = graph.resolve(*cur);
    if (e.type != "IFCLOCALPLACEMENT") {
      throw Error("UnsupportedRepresentation", fmt::format("#{} is {}, expected IFCLOCALPLACEMENT", *cur, e.type));
    }
    chain.push_back(*cur);
    cur = e.arg(0).ref_or_null();
  }

  PlanPlacement world;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto& e = graph.resolve(*it);
    PlanPlacement local = axis_placement_3d(graph, e.arg(1).as_ref(), unit_scale);
    world.pose = world.pose.compose(local.pose);
    world.elevation += local.elevation;
  }
  return world;
}

namespace {

std::vector<Point2> profile_ring(const EntityGraph& g, const step::Entity& profile, double unit_scale) {
  if (profile.type == "IFCRECTANGLEPROFILEDEF") {
    // (ProfileType, ProfileName, Position, XDim, YDim); centered on Position.
    double hx = profile.arg(3).as_real() * unit_scale / 2.0;
    double hy = profile.arg(4).as_real() * unit_scale / 2.0;
    Pose2D pos;
    if (auto p = profile.arg(2).ref_or_null()) pos = axis_placement_2d(g, *p, unit_scale);
    return {pos.apply({-hx, -hy}), pos.apply({hx, -hy}), pos.apply({hx, hy}), pos.apply({-hx, hy})};
  }
  if (profile.type == "IFCARBITRARYCLOSEDPROFILEDEF") {
    const auto& curve = g.resolve(profile.arg(2).as_ref());
    if (curve.type != "IFCPOLYLINE") {
      throw Error("UnsupportedRepresentation", fmt::format("#{} outer curve is {}", profile.id, curve.type));
    }
    std::vector<Point2> ring;
    for (const auto& pt : curve.arg(0).as_list()) {
      const auto& p = g.resolve(pt.as_ref());
      const auto& c = p.arg(0).as_list();
      ring.push_back({c.at(0).as_real() * unit_scale, c.at(1).as_real() * unit_scale});
    }
    return ring;
  }
  throw Error("UnsupportedRepresentation", fmt::format("profile #{} is {}", profile.id, profile.type));
}

}  // namespace

std::optional<Polygon2D> footprint(const EntityGraph& graph, EntityId product_id, double cut_height,
                                   double unit_scale) {
  const auto& product = graph.resolve(product_id);
  auto placement_ref = product.arg(5).ref_or_null();
  auto shape_ref = product.arg(6).ref_or_null();
  if (!shape_ref) throw Error("UnsupportedRepresentation", fmt::format("#{} has no representation", product_id));

  PlanPlacement placement;
  if (placement_ref) placement = compose_placement(graph, *placement_ref, unit_scale);

  const auto& shape = graph.resolve(*shape_ref);
  std::vector<const step::Entity*> solids;
  std::string other_item;
  for (const auto& rep_ref : shape.arg(2).as_list()) {
    const auto& rep = graph.resolve(rep_ref.as_ref());
    for (const auto& item_ref : rep.arg(3).as_list()) {
      const auto& item = graph.resolve(item_ref.as_ref());
      if (item.type == "IFCEXTRUDEDAREASOLID") {
        solids.push_back(&item);
      } else if (item.type != "IFCPOLYLINE" && other_item.empty()) {
        // Axis / footprint curves are annotations, not bodies.
        other_item = item.type;
      }
    }
  }
  if (solids.empty()) {
    throw Error("UnsupportedRepresentation",
                fmt::format("#{} body is {}", product_id, other_item.empty() ? "empty" : other_item));
  }

  for (const auto* solid : solids) {
    // (SweptArea, Position, ExtrudedDirection, Depth)
    PlanPlacement pos;
    if (auto p = solid->arg(1).ref_or_null()) pos = axis_placement_3d(graph, *p, unit_scale);
    const auto& dir_entity = graph.resolve(solid->arg(2).as_ref());
    const auto& d = dir_entity.arg(0).as_list();
    double dx = d.size() > 0 ? d[0].as_real() : 0, dy = d.size() > 1 ? d[1].as_real() : 0,
           dz = d.size() > 2 ? d[2].as_real() : 0;
    double n = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (n == 0.0 || std::hypot(dx / n, dy / n, dz / n - 1.0) > 1e-6) {
      throw Error("UnsupportedRepresentation", fmt::format("#{} extrusion is not vertical", solid->id));
    }
    double depth = solid->arg(3).as_real() * unit_scale;
    double z0 = placement.elevation + pos.elevation;
    double z1 = z0 + depth;
    if (cut_height < std::min(z0, z1) || cut_height > std::max(z0, z1)) continue;

    const auto& profile = graph.resolve(solid->arg(0).as_ref());
    std::vector<Point2> ring = profile_ring(graph, profile, unit_scale);
    if (ring.size() < 3 || !(std::abs(signed_area(ring)) > 0.0)) {
      throw Error("DegenerateProfile", fmt::format("profile #{} has zero area", profile.id));
    }
    Pose2D to_world = placement.pose.compose(pos.pose);
    for (auto& p : ring) p = to_world.apply(p);
    try {
      return Polygon2D::from_vertices(std::move(ring));
    } catch (const Error& e) {
      throw Error("DegenerateProfile", fmt::format("profile #{}: {}", profile.id, e.what()));
    }
  }
  return std::nullopt;
}

}  // namespace birs::building
