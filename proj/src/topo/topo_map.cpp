#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/textfmt.hpp"
#include "birs/topo.hpp"

namespace birs::topo {

using building::BoundaryKind;
using building::BuildingModel;

const TopoNode* TopoMap::find(std::string_view space_id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), space_id,
                             [](const TopoNode& n, std::string_view id) { return n.space_id < id; });
  return it != nodes.end() && it->space_id == space_id ? &*it : nullptr;
}

std::string TopoMap::resolve(std::string_view name_or_id) const {
  if (find(name_or_id)) return std::string(name_or_id);
  std::vector<const TopoNode*> hits;
  for (const auto& n : nodes) {
    if (n.long_name == name_or_id) hits.push_back(&n);
  }
  if (hits.empty()) throw Error("UnknownSpace", fmt::format("no room named '{}'", name_or_id));
  if (hits.size() > 1) {
    throw Error("AmbiguousName", fmt::format("'{}' names {} rooms; use a GlobalId", name_or_id, hits.size()));
  }
  return hits.front()->space_id;
}

std::vector<std::size_t> TopoMap::incident(std::string_view space_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].a == space_id || edges[i].b == space_id) out.push_back(i);
  }
  return out;
}

TopoMap build_topological_map(const BuildingModel& model) {
  TopoMap map;
  for (const auto& s : model.spaces) {
    TopoNode n;
    n.space_id = s.global_id;
    n.long_name = s.long_name;
    n.centroid = s.centroid;
    n.storey = s.storey;
    n.function_tags = s.function_tags;
    for (const auto* l : model.boundary_landmarks(s.global_id)) {
      if (!l->material.sensor_visible) n.grid_trust = true;
    }
    map.nodes.push_back(std::move(n));
  }
  std::sort(map.nodes.begin(), map.nodes.end(),
            [](const TopoNode& a, const TopoNode& b) { return a.space_id < b.space_id; });

  std::map<std::pair<std::string, std::string>, int> names;
  for (const auto& n : map.nodes) ++names[{n.storey, n.long_name}];
  for (const auto& [key, count] : names) {
    if (count > 1) {
      map.issues.push_back(fmt::format("DuplicateRoomName: '{}' appears {} times on storey {}", key.second, count,
                                       key.first.empty() ? "-" : key.first));
    }
  }

  std::map<std::string, std::set<std::string>> by_door;
  std::map<step::EntityId, std::set<std::string>> by_opening;
  for (const auto& b : model.boundaries) {
    if (!map.find(b.space)) continue;
    if (b.kind == BoundaryKind::Physical && b.element && model.find_door(*b.element)) {
      by_door[*b.element].insert(b.space);
    } else if (b.kind == BoundaryKind::Virtual && b.pairing_key) {
      by_opening[*b.pairing_key].insert(b.space);
    }
  }

  std::map<std::tuple<std::string, std::string, std::string>, TopoEdge> edges;
  auto pairs = [](const std::set<std::string>& spaces, auto&& fn) {
    for (auto i = spaces.begin(); i != spaces.end(); ++i) {
      for (auto j = std::next(i); j != spaces.end(); ++j) fn(*i, *j);
    }
  };
  for (const auto& [door_id, spaces] : by_door) {
    const auto* door = model.find_door(door_id);
    pairs(spaces, [&](const std::string& a, const std::string& b) {
      TopoEdge e{a, b, door_id, door->center, door->width, door->height, 0.0};
      e.cost = distance(map.find(a)->centroid, door->center) + distance(door->center, map.find(b)->centroid);
      if (e.cost > 0.0) edges.emplace(std::tuple{a, b, door_id}, std::move(e));
    });
  }
  for (const auto& [key, spaces] : by_opening) {
    pairs(spaces, [&](const std::string& a, const std::string& b) {
      TopoEdge e{a, b, std::string(kVirtualVia), std::nullopt, std::nullopt, std::nullopt, 0.0};
      e.cost = distance(map.find(a)->centroid, map.find(b)->centroid);
      if (e.cost > 0.0) edges.emplace(std::tuple{a, b, std::string(kVirtualVia)}, std::move(e));
    });
  }
  for (auto& [key, e] : edges) map.edges.push_back(std::move(e));
  return map;
}

std::optional<std::string> room_of_point(const BuildingModel& model, Point2 p) {
  std::optional<std::string> inside, touching;
  for (const auto& s : model.spaces) {
    if (s.polygon.on_boundary(p)) {
      if (!touching || s.global_id < *touching) touching = s.global_id;
    } else if (s.polygon.contains(p)) {
      if (!inside || s.global_id < *inside) inside = s.global_id;
    }
  }
  if (touching && inside) return std::min(*touching, *inside);
  return touching ? touching : inside;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? text::fixed(*v, 4) : "-"; }

std::string join(const std::vector<std::string>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

}  // namespace

std::string write_topo_map(const TopoMap& map) {
  std::string out = "BIRS-TOPO 1\n";
  for (const auto& n : map.nodes) {
    out += fmt::format("NODE {} {} {} {} {} {} {}\n", n.space_id, text::fixed(n.centroid.x, 4),
                       text::fixed(n.centroid.y, 4), n.storey.empty() ? "-" : n.storey, n.grid_trust ? 1 : 0,
                       join(n.function_tags), text::quoted(n.long_name));
  }
  for (const auto& e : map.edges) {
    out += fmt::format("EDGE {} {} {} {} {} {} {} {}\n", e.a, e.b, e.via, text::fixed(e.cost, 4),
                       e.door_center ? text::fixed(e.door_center->x, 4) : "-",
                       e.door_center ? text::fixed(e.door_center->y, 4) : "-", opt(e.width), opt(e.height));
  }
  return out;
}

}  // namespace birs::topo
