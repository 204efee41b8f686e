#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/textfmt.hpp"
#include "birs/topo.hpp"

namespace birs::topo {

namespace {

// Costs are sums of square roots; treat near-equal sums as ties so the
// node-sequence rule decides instead of rounding noise.
bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<std::string> nodes;
  std::vector<std::size_t> edges;
  bool done = false;
};

bool better(double cost, const std::vector<std::string>& nodes, const Label& l) {
  if (!std::isfinite(l.cost)) return true;
  if (same_cost(cost, l.cost)) return nodes < l.nodes;
  return cost < l.cost;
}

}  // namespace

Route plan_path(const TopoMap& map, std::string_view start, std::string_view goal) {
  if (!map.find(start)) throw Error("UnknownSpace", fmt::format("no space {}", start));
  if (!map.find(goal)) throw Error("UnknownSpace", fmt::format("no space {}", goal));

  std::map<std::string, Label, std::less<>> labels;
  for (const auto& n : map.nodes) labels[n.space_id];
  Label& s = labels.find(start)->second;
  s.cost = 0.0;
  s.nodes = {std::string(start)};

  // Node count is small (rooms on a floor); a linear scan beats a heap here.
  while (true) {
    Label* cur = nullptr;
    for (auto& [id, l] : labels) {
      if (l.done || !std::isfinite(l.cost)) continue;
      if (!cur || better(l.cost, l.nodes, *cur)) cur = &l;
    }
    if (!cur) break;
    cur->done = true;
    const std::string here = cur->nodes.back();
    if (here == goal) break;
    for (std::size_t ei : map.incident(here)) {
      const auto& e = map.edges[ei];
      const std::string& next = e.other(here);
      Label& nl = labels.find(next)->second;
      if (nl.done) continue;
      double c = cur->cost + e.cost;
      std::vector<std::string> path = cur->nodes;
      path.push_back(next);
      // Parallel edges with equal cost keep the first one (smallest via id).
      if (better(c, path, nl)) {
        nl.cost = c;
        nl.nodes = std::move(path);
        nl.edges = cur->edges;
        nl.edges.push_back(ei);
      }
    }
  }

  const Label& g = labels.find(goal)->second;
  if (!std::isfinite(g.cost)) throw Error("NoRoute", fmt::format("no route from {} to {}", start, goal));
  return {g.nodes, g.edges, g.cost};
}

std::vector<Waypoint> waypoints(const TopoMap& map, const Route& route) {
  std::vector<Waypoint> out;
  auto room = [&](const std::string& id) {
    const auto* n = map.find(id);
    Waypoint w;
    w.kind = Waypoint::Kind::Room;
    w.point = n->centroid;
    w.id = n->space_id;
    w.name = n->long_name;
    w.grid_trust = n->grid_trust;
    return w;
  };
  if (route.nodes.empty()) return out;
  out.push_back(room(route.nodes.front()));
  for (std::size_t i = 0; i < route.edges.size(); ++i) {
    const auto& e = map.edges[route.edges[i]];
    const std::string& next = route.nodes[i + 1];
    if (e.is_door()) {
      Waypoint d;
      d.kind = Waypoint::Kind::Door;
      d.point = *e.door_center;
      d.id = e.via;
      d.width = e.width;
      d.height = e.height;
      d.grid_trust = map.find(next)->grid_trust;
      out.push_back(std::move(d));
    }
    out.push_back(room(next));
  }
  return out;
}

std::string write_route(const TopoMap& map, const Route& route) {
  std::string out = fmt::format("ROUTE {} {}\n", route.nodes.size(), text::fixed(route.total_cost, 4));
  for (const auto& w : waypoints(map, route)) {
    if (w.kind == Waypoint::Kind::Room) {
      out += fmt::format("ROOM {} {} {} grid_trust={} {}\n", w.id, text::fixed(w.point.x, 4),
                         text::fixed(w.point.y, 4), w.grid_trust ? "true" : "false", text::quoted(w.name));
    } else {
      out += fmt::format("DOOR {} {} {} width={} height={} grid_trust={}\n", w.id, text::fixed(w.point.x, 4),
                         text::fixed(w.point.y, 4), text::fixed(*w.width, 4), text::fixed(*w.height, 4),
                         w.grid_trust ? "true" : "false");
    }
  }
  return out;
}

}  // namespace birs::topo
