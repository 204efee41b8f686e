#include <algorithm>
#include <filesystem>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/service.hpp"

namespace birs::service {

namespace fs = std::filesystem;

namespace {

Json point(Point2 p) { return Json::array({p.x, p.y}); }

Json opt_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const Json& field(const Json& p, const char* key) {
  if (!p.is_object() || !p.contains(key)) throw ServiceError("bad_payload", fmt::format("missing '{}'", key));
  return p.at(key);
}

std::string text_field(const Json& p, const char* key) {
  const auto& v = field(p, key);
  if (!v.is_string()) throw ServiceError("bad_payload", fmt::format("'{}' must be a string", key));
  return v.get<std::string>();
}

double number_field(const Json& p, const char* key) {
  const auto& v = field(p, key);
  if (!v.is_number()) throw ServiceError("bad_payload", fmt::format("'{}' must be a number", key));
  return v.get<double>();
}

std::string resolve_room(const topo::TopoMap& topo, const std::string& name) {
  try {
    return topo.resolve(name);
  } catch (const Error& e) {
    throw ServiceError("unknown_room", e.what());
  }
}

std::string storey_name(const building::BuildingModel& m, const std::string& storey_id) {
  if (storey_id.empty()) return {};
  const auto* s = m.find_storey(storey_id);
  return s ? s->name : storey_id;
}

Json route_json(const topo::TopoMap& topo, const topo::Route& route) {
  Json nodes = Json::array();
  for (const auto& id : route.nodes) {
    const auto* n = topo.find(id);
    nodes.push_back({{"global_id", id}, {"name", n ? n->long_name : ""}});
  }
  Json wps = Json::array();
  for (const auto& w : topo::waypoints(topo, route)) {
    Json j = {{"kind", w.kind == topo::Waypoint::Kind::Door ? "door" : "room"},
              {"global_id", w.id},
              {"point", point(w.point)},
              {"grid_trust", w.grid_trust}};
    if (w.kind == topo::Waypoint::Kind::Room) {
      j["name"] = w.name;
    } else {
      j["width"] = opt_number(w.width);
      j["height"] = opt_number(w.height);
    }
    wps.push_back(std::move(j));
  }
  return {{"nodes", std::move(nodes)}, {"waypoints", std::move(wps)}, {"total_cost", route.total_cost}};
}

}  // namespace

std::uint64_t TopicCache::publish(const std::string& topic, Json payload) {
  std::lock_guard lock(mu_);
  auto& e = topics_[topic];
  e.seq += 1;
  e.payload = std::move(payload);
  return e.seq;
}

std::optional<TopicCache::Entry> TopicCache::latest(const std::string& topic) const {
  std::lock_guard lock(mu_);
  auto it = topics_.find(topic);
  if (it == topics_.end()) return std::nullopt;
  return it->second;
}

RequestHandler::RequestHandler(std::shared_ptr<const Artifacts> artifacts) : a_(std::move(artifacts)) {}

Json RequestHandler::handle(const std::string& op, const Json& payload) const {
  if (op == "room_info") return room_info(payload);
  if (op == "path") return path(payload);
  if (op == "locate") return locate(payload);
  if (op == "material") return material(payload);
  if (op == "grid_meta") return grid_meta(payload);
  if (op == "progress_report") return progress_report(payload);
  throw ServiceError("unknown_op", fmt::format("unknown op '{}'", op));
}

Json RequestHandler::room_info(const Json& p) const {
  const auto& m = a_->model();
  auto id = resolve_room(a_->topo, text_field(p, "name"));
  const auto* node = a_->topo.find(id);
  const auto* space = m.find_space(id);

  Json boundary = Json::array();
  for (const auto* l : m.boundary_landmarks(id)) {
    boundary.push_back({{"global_id", l->global_id},
                        {"ifc_class", building::ifc_name(l->ifc_class)},
                        {"material", l->material.name},
                        {"sensor_visible", l->material.sensor_visible}});
  }
  return {{"global_id", id},
          {"name", node->long_name},
          {"centroid", point(node->centroid)},
          {"storey", storey_name(m, node->storey)},
          {"storey_id", node->storey},
          {"function_tags", node->function_tags},
          {"grid_trust", node->grid_trust},
          {"area", space ? space->polygon.area() : 0.0},
          {"boundary", std::move(boundary)}};
}

Json RequestHandler::path(const Json& p) const {
  auto from = resolve_room(a_->topo, text_field(p, "from"));
  auto to = resolve_room(a_->topo, text_field(p, "to"));
  try {
    return route_json(a_->topo, topo::plan_path(a_->topo, from, to));
  } catch (const Error& e) {
    if (e.code() == "NoRoute") throw ServiceError("no_route", e.what());
    throw ServiceError("unknown_room", e.what());
  }
}

Json RequestHandler::locate(const Json& p) const {
  Point2 pt{number_field(p, "x"), number_field(p, "y")};
  auto room = topo::room_of_point(a_->model(), pt);
  if (!room) return {{"global_id", nullptr}, {"name", nullptr}};
  const auto* n = a_->topo.find(*room);
  return {{"global_id", *room}, {"name", n ? Json(n->long_name) : Json(nullptr)}};
}

Json RequestHandler::material(const Json& p) const {
  auto gid = text_field(p, "element_global_id");
  const auto* l = a_->model().find_landmark(gid);
  if (!l) throw ServiceError("unknown_element", fmt::format("no landmark with GlobalId {}", gid));
  return {{"global_id", gid}, {"name", l->material.name}, {"sensor_visible", l->material.sensor_visible}};
}

Json RequestHandler::grid_meta(const Json&) const {
  if (!a_->grid || !a_->config.grid_meta) throw ServiceError("no_grid", "no grid map is loaded");
  const auto& spec = a_->grid->spec;
  const fs::path meta_path = *a_->config.grid_meta;
  std::string image;
  try {
    image = grid::parse_meta(read_text_file(meta_path)).image;
  } catch (const Error& e) {
    throw ServiceError("no_grid", e.what());
  }
  fs::path img = image;
  if (img.is_relative()) img = (meta_path.parent_path() / img).lexically_normal();
  return {{"resolution", spec.resolution},
          {"origin", Json::array({spec.origin.x, spec.origin.y, spec.origin.theta})},
          {"width", spec.width},
          {"height", spec.height},
          {"image", img.string()},
          {"meta", meta_path.string()}};
}

Json RequestHandler::progress_report(const Json& p) const {
  if (!a_->built) throw ServiceError("no_asbuilt_loaded", "no as-built grid is loaded");
  progress::Date as_of;
  try {
    as_of = progress::parse_date(text_field(p, "as_of"));
  } catch (const Error& e) {
    throw ServiceError("bad_payload", e.what());
  }
  ProgressRun run;
  try {
    run = run_progress(*a_, as_of);
  } catch (const Error& e) {
    throw ServiceError("progress_failed", e.what());
  }

  Json findings = Json::array();
  for (const auto& f : run.findings) {
    const auto& c = f.cluster;
    Json j = {{"cluster", c.id},
              {"kind", grid::to_string(c.kind)},
              {"verdict", progress::to_string(f.verdict)},
              {"element", f.element ? Json(*f.element) : Json(nullptr)},
              {"overlap", f.matched_overlap},
              {"area", c.area},
              {"cells", c.cells.size()},
              {"centroid", point(c.centroid)},
              {"storey", f.storey},
              {"nearest_office", nullptr}};
    if (f.nearest_office) {
      const auto* n = a_->topo.find(f.nearest_office->space_id);
      Json office = route_json(a_->topo, f.nearest_office->route);
      office["global_id"] = f.nearest_office->space_id;
      office["name"] = n ? n->long_name : "";
      j["nearest_office"] = std::move(office);
    }
    findings.push_back(std::move(j));
  }
  return {{"as_of", progress::format_date(as_of)}, {"clusters", run.clusters.size()}, {"findings", std::move(findings)}};
}

Json RequestHandler::topo_payload() const {
  const auto& t = a_->topo;
  Json nodes = Json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({{"global_id", n.space_id},
                     {"name", n.long_name},
                     {"centroid", point(n.centroid)},
                     {"storey", n.storey},
                     {"function_tags", n.function_tags},
                     {"grid_trust", n.grid_trust}});
  }
  Json edges = Json::array();
  for (const auto& e : t.edges) {
    edges.push_back({{"a", e.a},
                     {"b", e.b},
                     {"via", e.via},
                     {"cost", e.cost},
                     {"door_center", e.door_center ? point(*e.door_center) : Json(nullptr)},
                     {"width", opt_number(e.width)},
                     {"height", opt_number(e.height)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json RequestHandler::grid_topic_payload() const {
  try {
    Json j = grid_meta(Json::object());
    j["available"] = true;
    return j;
  } catch (const ServiceError&) {
    return {{"available", false}};
  }
}

}  // namespace birs::service
