// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include <boost/asio.hpp>
#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/pipeline.hpp"
#include "birs/service.hpp"
#include "json.hpp"
#include "random_models.hpp"

namespace fs = std::filesystem;
using namespace birs;
using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

const fs::path kFixtures = BIRS_FIXTURES;

struct Check {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Json& expected() {
  static const Json j = Json::parse(read_bytes(kFixtures / "expected.json"));
  return j;
}

std::string guid(const std::string& key) { return expected()["guids"][key].get<std::string>(); }

const Artifacts& load(const std::string& config) {
  static std::map<std::string, Artifacts> cache;
  auto it = cache.find(config);
  if (it == cache.end()) it = cache.emplace(config, load_artifacts(load_config(kFixtures / config))).first;
  return it->second;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// --- 1 ---------------------------------------------------------------------------

void taxonomy(Check& c) {
  using ontology::Iri;
  auto t0 = Clock::now();
  // Robot-navigation taxonomy: SUMO upper level, CORA/CORAX, MDR maps and the
  // BIRS median level.
  const std::vector<std::pair<const char*, const char*>> core = {
      {"sumo:Physical", "sumo:Entity"},
      {"sumo:Abstract", "sumo:Entity"},
      {"sumo:Object", "sumo:Physical"},
      {"sumo:Process", "sumo:Physical"},
      {"sumo:Quantity", "sumo:Abstract"},
      {"sumo:Attribute", "sumo:Abstract"},
      {"sumo:SetOrClass", "sumo:Abstract"},
      {"sumo:Relation", "sumo:Abstract"},
      {"sumo:Proposition", "sumo:Abstract"},
      {"cora:ContentBearingObject", "sumo:Object"},
      {"corax:Design", "sumo:Proposition"},
      {"corax:PhysicalEnvironment", "sumo:Object"},
      {"cora:Region", "corax:PhysicalEnvironment"},
      {"mdr:Map", "cora:ContentBearingObject"},
      {"mdr:MetricMap", "mdr:Map"},
      {"mdr:TopologicalMap", "mdr:Map"},
      {"mdr:ContinuousMetricMap", "mdr:MetricMap"},
      {"mdr:DiscreteMetricMap", "mdr:MetricMap"},
      {"mdr:OccupancyGridMap", "mdr:DiscreteMetricMap"},
      {"birs:SpatialStructureElement", "corax:PhysicalEnvironment"},
      {"birs:Topography", "corax:PhysicalEnvironment"},
      {"birs:Landmark", "cora:Region"},
      {"birs:Space", "cora:Region"},
      {"birs:Uncertainty", "cora:Region"},
      {"ifc:IfcBuildingElement", "birs:Landmark"},
  };
  const std::vector<std::pair<const char*, const char*>> leaves = {
      {"ifc:IfcWall", "ifc:IfcBuildingElement"},     {"ifc:IfcCurtainWall", "ifc:IfcBuildingElement"},
      {"ifc:IfcColumn", "ifc:IfcBuildingElement"},   {"ifc:IfcDoor", "ifc:IfcBuildingElement"},
      {"ifc:IfcRailing", "ifc:IfcBuildingElement"},  {"ifc:IfcStair", "ifc:IfcBuildingElement"},
      {"birs:ExistingBuilding", "birs:Topography"},  {"birs:WaterSurface", "birs:Topography"},
      {"birs:Vegetation", "birs:Topography"},
  };
  std::set<std::pair<Iri, Iri>> want_core, want_all;
  for (auto [a, b] : core) want_core.insert({Iri::parse(a), Iri::parse(b)});
  want_all = want_core;
  for (auto [a, b] : leaves) want_all.insert({Iri::parse(a), Iri::parse(b)});

  auto store = ontology::builtin_taxonomy();
  std::set<std::pair<Iri, Iri>> got_all;
  for (const auto& t : store.match(std::nullopt, ontology::vocab::sub_class_of(), std::nullopt)) {
    got_all.insert({t.subject, std::get<Iri>(t.object)});
  }
  auto core_list = ontology::core_subclass_edges();
  std::set<std::pair<Iri, Iri>> got_core(core_list.begin(), core_list.end());
  c.require(got_all == want_all, fmt::format("builtin subclass edges differ ({} vs {})", got_all.size(), want_all.size()));
  c.require(got_core == want_core, "core edges differ");
  c.require(core_list.size() >= 23 && core_list.size() <= 27, fmt::format("{} core edges", core_list.size()));
  c.require(store.is_subclass_of(Iri::parse("ifc:IfcWall"), Iri::parse("birs:Landmark")), "IfcWall <= Landmark");
  c.require(store.is_subclass_of(Iri::parse("mdr:OccupancyGridMap"), Iri::parse("mdr:Map")), "OccupancyGridMap <= Map");

  // Acyclic: DFS colouring over the asserted edges.
  std::map<Iri, std::vector<Iri>> parents;
  for (const auto& [a, b] : got_all) parents[a].push_back(b);
  std::map<Iri, int> colour;
  bool cycle = false;
  std::function<void(const Iri&)> visit = [&](const Iri& n) {
    colour[n] = 1;
    for (const auto& p : parents[n]) {
      if (colour[p] == 1) cycle = true;
      if (colour[p] == 0) visit(p);
    }
    colour[n] = 2;
  };
  for (const auto& [a, b] : got_all) {
    if (colour[a] == 0) visit(a);
  }
  c.require(!cycle, "subclass graph has a cycle");
  c.require(seconds_since(t0) < 1.0, "slower than 1 s");
}

// --- 2 ---------------------------------------------------------------------------

void round_trip(Check& c) {
  auto t0 = Clock::now();
  for (const auto& entry : fs::recursive_directory_iterator(kFixtures)) {
    if (entry.path().extension() != ".ifc") continue;
    auto g = step::read_spf_file(entry.path().string());
    auto canon = step::write_canonical(g);
    c.require(step::parse_spf(canon) == g, entry.path().filename().string() + " does not round-trip");
  }
  std::mt19937 rng(1);
  for (int i = 0; i < 120; ++i) {
    auto spf = testing::random_spf(rng);
    auto g = step::parse_spf(spf.text);
    c.require(g.entities() == spf.entities, fmt::format("random file {} parsed wrong", i));
    c.require(step::parse_spf(step::write_canonical(g)) == g, fmt::format("random file {} does not round-trip", i));
  }
  c.require(seconds_since(t0) < 10.0, "slower than 10 s");
}

// --- 3 ---------------------------------------------------------------------------

void uc1(Check& c) {
  const auto& a = load("config.json");
  const auto& t = a.topo;
  auto r = topo::plan_path(t, t.resolve("CORRIDOR OUEST 2019"), t.resolve("W.C. HOMMES 2002"));
  std::vector<std::string> names;
  for (const auto& id : r.nodes) names.push_back(t.find(id)->long_name);
  const std::vector<std::string> want = {"CORRIDOR OUEST 2019",  "VESTIBULE 2043",          "HALL 2044",
                                         "VESTIBULE 2042",       "CORRIDOR EST 2007",       "ESPACE CLLABORATIF 2004",
                                         "W.C. HOMMES 2002"};
  c.require(names == want, "node order differs");
  bool found = false;
  for (const auto& w : topo::waypoints(t, r)) {
    if (w.kind == topo::Waypoint::Kind::Door && w.id == guid("D2")) {
      found = true;
      c.require(w.grid_trust, "door into HALL 2044 lacks the grid-trust advisory");
    }
  }
  c.require(found, "no waypoint for the door into HALL 2044");
  const auto* cw = a.model().find_landmark(guid("CW01"));
  c.require(cw && !cw->material.sensor_visible, "curtain wall is not sensor-invisible");
}

// --- 4 ---------------------------------------------------------------------------

void uc2(Check& c) {
  const auto& a = load("config.json");
  auto features = gis::read_site_file((kFixtures / "site.features").string());
  const gis::GeoFeature* veg = nullptr;
  for (const auto& f : features) {
    if (f.category == gis::Category::Vegetation) veg = &f;
  }
  if (!veg) return c.require(false, "no vegetation feature");
  c.require(veg->vertices.size() == 9, fmt::format("{} vegetation vertices", veg->vertices.size()));
  const auto& t = a.config.geo_transform;
  auto inv = t.inverse();
  const auto& local = expected()["vegetation_local"];
  auto g = grid::rasterize(a.site, a.config.resolution);
  const double res = g.resolution();
  for (std::size_t i = 0; i < veg->vertices.size(); ++i) {
    const auto& v = veg->vertices[i];
    auto p = t.apply(v);
    auto back = inv.apply(p);
    c.require(std::abs(back.x - v.x) <= 1e-9 && std::abs(back.y - v.y) <= 1e-9,
              fmt::format("vertex {} does not round-trip", i));
    c.require(std::abs(p.x - local[i][0].get<double>()) <= 1e-9 && std::abs(p.y - local[i][1].get<double>()) <= 1e-9,
              fmt::format("vertex {} lands off its plan position", i));
    bool near = false;
    int c0 = static_cast<int>(std::floor((p.x - g.origin().x) / res));
    int r0 = static_cast<int>(std::floor((p.y - g.origin().y) / res));
    for (int r = r0 - 2; r <= r0 + 2 && !near; ++r) {
      for (int cc = c0 - 2; cc <= c0 + 2 && !near; ++cc) {
        if (cc < 0 || r < 0 || cc >= g.width() || r >= g.height()) continue;
        if (g.at(cc, r) == grid::Cell::Occupied && distance(g.spec.cell_center(cc, r), p) <= res * std::sqrt(2.0)) {
          near = true;
        }
      }
    }
    c.require(near, fmt::format("vertex {} has no occupied cell within res*sqrt(2)", i));
  }
}

// --- 5 ---------------------------------------------------------------------------

void uc3(Check& c) {
  const auto& a = load("uc3/config.json");
  auto planned = grid::load_map((kFixtures / "uc3/planned.yaml").string());
  auto built = grid::load_map((kFixtures / "uc3/built.yaml").string());
  auto diff = grid::diff_grids(planned, built);
  auto clusters = grid::cluster_diff(diff, a.config.min_cluster_area);
  int extra = 0;
  for (const auto& cl : clusters) extra += cl.kind == grid::DiffKind::Extra;
  c.require(extra == 2 && clusters.size() == 2, fmt::format("{} clusters, {} EXTRA", clusters.size(), extra));

  auto run = run_progress(a, *a.config.as_of);
  std::set<std::string> named;
  int ahead = 0;
  for (const auto& f : run.findings) {
    if (f.verdict == progress::Verdict::AheadOfSchedule) ++ahead;
    if (f.element) named.insert(*f.element);
  }
  c.require(run.findings.size() == 2 && ahead == 2, fmt::format("{} findings, {} AheadOfSchedule", run.findings.size(), ahead));
  c.require(named == std::set<std::string>{guid("U1"), guid("U2")}, "findings name the wrong elements");
}

// --- 6 ---------------------------------------------------------------------------

void uc4(Check& c) {
  const auto& a = load("uc4/config.json");
  auto run = run_progress(a, *a.config.as_of);
  int anomalies = 0;
  const progress::Finding* f = nullptr;
  for (const auto& x : run.findings) {
    if (x.verdict == progress::Verdict::Anomaly) {
      ++anomalies;
      f = &x;
    }
  }
  c.require(run.findings.size() == 1 && anomalies == 1, fmt::format("{} findings, {} Anomaly", run.findings.size(), anomalies));
  if (!f) return;
  Point2 column{expected()["uc4_column"][0].get<double>(), expected()["uc4_column"][1].get<double>()};
  c.require(distance(f->cluster.centroid, column) < 0.1, "anomaly is not at the injected column");
  if (!f->nearest_office) return c.require(false, "no nearest office");
  c.require(f->nearest_office->space_id == guid("BUREAU"), "nearest office is not the contractor office");
  auto from = topo::room_of_point(a.model(), f->cluster.centroid);
  c.require(from == guid("HALL"), "anomaly is not located in the hall next to VESTIBULE 2042");
  if (!from) return;
  auto brute = testing::brute_force_route(a.topo, *from, guid("BUREAU"));
  c.require(std::abs(f->nearest_office->route.total_cost - brute.cost) <= 1e-9,
            fmt::format("route cost {} vs brute force {}", f->nearest_office->route.total_cost, brute.cost));
}

// --- 7 ---------------------------------------------------------------------------

void raster_oracle(Check& c) {
  auto t0 = Clock::now();
  std::mt19937 rng(7);
  std::size_t total = 0;
  for (int i = 0; i < 220; ++i) {
    auto rc = testing::random_raster_case(rng, i);
    auto bad = testing::raster_mismatches(rc);
    if (bad) c.require(false, fmt::format("case {}: {} mismatched cells", i, bad));
    total += bad;
  }
  c.require(total == 0, fmt::format("{} mismatched cells in total", total));
  c.require(seconds_since(t0) < 30.0, "slower than 30 s");
}

// --- 8 ---------------------------------------------------------------------------

void grid_format(Check& c) {
  auto dir = fs::temp_directory_path() / fmt::format("birs_accept_{}", ::getpid());
  fs::create_directories(dir);
  for (const char* meta : {"goldens/pavd2_map.yaml", "uc3/planned.yaml", "uc3/built.yaml", "uc4/planned.yaml",
                           "uc4/built.yaml"}) {
    auto src_meta = kFixtures / meta;
    auto src_img = src_meta;
    src_img.replace_extension(".pgm");
    auto g = grid::load_map(src_meta.string());
    auto out_meta = dir / src_meta.filename();
    auto out_img = dir / src_img.filename();
    grid::export_map(g, out_img.string(), out_meta.string());
    c.require(grid::import_map(out_img.string(), out_meta.string()) == g, std::string(meta) + " import/export differs");
    c.require(read_bytes(out_img) == read_bytes(src_img), std::string(meta) + " image bytes differ");
    c.require(read_bytes(out_meta) == read_bytes(src_meta), std::string(meta) + " meta bytes differ");
  }
  // A fresh rasterization as of the config date reproduces the golden.
  const auto& a = load("config.json");
  grid::RasterOptions ro;
  ro.exclude = {guid("U1"), guid("U2")};
  auto g = grid::rasterize(a.site, a.config.resolution, std::nullopt, ro);
  auto img = dir / "pavd2_map.pgm", meta = dir / "pavd2_map.yaml";
  grid::export_map(g, img.string(), meta.string());
  c.require(read_bytes(img) == read_bytes(kFixtures / "goldens/pavd2_map.pgm"), "rasterized image differs from golden");
  c.require(read_bytes(meta) == read_bytes(kFixtures / "goldens/pavd2_map.yaml"), "rasterized meta differs from golden");

  grid::OccupancyGrid two = grid::OccupancyGrid::filled({2, 1, 0.05, {}}, grid::Cell::Free);
  two.at(0, 0) = grid::Cell::Occupied;
  auto pgm = grid::encode_pgm(two);
  c.require(pgm.size() >= 2 && pgm.substr(pgm.size() - 2) == std::string("\x00\xfe", 2), "2x1 payload is not 00 FE");
  fs::remove_all(dir);
}

// --- 9 ---------------------------------------------------------------------------

void planner_oracle(Check& c) {
  auto check_graph = [&](const topo::TopoMap& t, const std::string& label) {
    std::map<std::pair<std::string, std::string>, double> cost;
    for (const auto& a : t.nodes) {
      for (const auto& b : t.nodes) {
        auto brute = testing::brute_force_route(t, a.space_id, b.space_id);
        double got = std::numeric_limits<double>::infinity();
        try {
          got = topo::plan_path(t, a.space_id, b.space_id).total_cost;
        } catch (const Error& e) {
          if (e.code() != "NoRoute") throw;
        }
        bool same = std::isinf(brute.cost) ? std::isinf(got) : std::abs(got - brute.cost) <= 1e-9 * std::max(1.0, brute.cost);
        c.require(same, fmt::format("{}: {} -> {} costs {} vs {}", label, a.space_id, b.space_id, got, brute.cost));
        cost[{a.space_id, b.space_id}] = got;
      }
    }
    for (const auto& [k, v] : cost) {
      double back = cost[{k.second, k.first}];
      c.require(std::isinf(v) ? std::isinf(back) : std::abs(v - back) <= 1e-9 * std::max(1.0, v),
                fmt::format("{}: asymmetric {} {}", label, k.first, k.second));
    }
    for (const auto& x : t.nodes) {
      for (const auto& y : t.nodes) {
        for (const auto& z : t.nodes) {
          double xz = cost[{x.space_id, z.space_id}];
          double via = cost[{x.space_id, y.space_id}] + cost[{y.space_id, z.space_id}];
          c.require(xz <= via + 1e-9 * std::max(1.0, via), fmt::format("{}: triangle inequality", label));
        }
      }
    }
  };
  for (const char* cfg : {"config.json", "uc3/config.json", "uc4/config.json"}) {
    const auto& t = load(cfg).topo;
    c.require(t.nodes.size() <= 12, fmt::format("{} has {} nodes", cfg, t.nodes.size()));
    check_graph(t, cfg);
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) check_graph(testing::random_graph(rng, i % 2 == 0), fmt::format("random {}", i));
}

// --- 10 --------------------------------------------------------------------------

namespace asio = boost::asio;

class Client {
 public:
  Client(asio::io_context& io, std::uint16_t port) : sock_(io) {
    sock_.connect({asio::ip::make_address("127.0.0.1"), port});
    sock_.set_option(asio::ip::tcp::no_delay(true));
  }
  void send(const std::string& line) { asio::write(sock_, asio::buffer(line + "\n")); }
  std::string line() {
    auto n = asio::read_until(sock_, buf_, '\n');
    std::string s(asio::buffers_begin(buf_.data()), asio::buffers_begin(buf_.data()) + static_cast<std::ptrdiff_t>(n - 1));
    buf_.consume(n);
    return s;
  }
  Json json() { return Json::parse(line()); }

 private:
  asio::ip::tcp::socket sock_;
  asio::streambuf buf_;
};

std::string req(const std::string& id, const std::string& op, const Json& payload) {
  return service::encode({{"v", 1}, {"type", "req"}, {"id", id}, {"op", op}, {"payload", payload}});
}

void service_conformance(Check& c) {
  auto t0 = Clock::now();
  const auto& art = load("config.json");
  std::shared_ptr<const Artifacts> shared(&art, [](const Artifacts*) {});
  service::Broker broker(shared, service::parse_listen_address("127.0.0.1:0"));
  broker.start();
  asio::io_context io;
  Client a(io, broker.port()), b(io, broker.port());

  // Latched topic: ack, then exactly one event carrying the latest payload.
  a.send(R"({"v":1,"type":"sub","id":"s1","topic":"/birs/topo_map"})");
  auto ack = a.json();
  c.require(ack["type"] == "ack" && ack["id"] == "s1", "subscribe not acknowledged");
  auto ev = a.json();
  c.require(ev["type"] == "event" && ev["topic"] == "/birs/topo_map", "no latched event");
  c.require(ev["payload"]["nodes"].size() == art.topo.nodes.size(), "latched topo payload is incomplete");
  a.send(req("after-sub", "locate", {{"x", 12.0}, {"y", 9.0}}));
  c.require(a.json()["id"] == "after-sub", "latched payload delivered more than once");

  // Live topic: b subscribes late and gets the latest value only, once.
  a.send(R"({"v":1,"type":"pub","id":"p1","topic":"/robot/pose","payload":{"x":1}})");
  c.require(a.json()["seq"] == 1, "first publish has no seq 1");
  a.send(R"({"v":1,"type":"pub","id":"p2","topic":"/robot/pose","payload":{"x":2}})");
  c.require(a.json()["seq"] == 2, "second publish has no seq 2");
  b.send(R"({"v":1,"type":"sub","id":"s2","topic":"/robot/pose"})");
  c.require(b.json()["type"] == "ack", "late subscribe not acknowledged");
  auto late = b.json();
  c.require(late["type"] == "event" && late["payload"] == Json{{"x", 2}} && late["seq"] == 2,
            "late subscriber did not get the latest payload");
  b.send(req("b-sentinel", "locate", {{"x", 0.0}, {"y", 0.0}}));
  c.require(b.json()["id"] == "b-sentinel", "late subscriber got a stale replay");
  a.send(R"({"v":1,"type":"pub","id":"p3","topic":"/robot/pose","payload":{"x":3}})");
  c.require(a.json()["type"] == "ack", "third publish not acknowledged");
  auto live = b.json();
  c.require(live["type"] == "event" && live["seq"] == 3, "subscriber missed a live event");
  a.send(req("a-sentinel", "locate", {{"x", 0.0}, {"y", 0.0}}));
  c.require(a.json()["id"] == "a-sentinel", "publisher received its own unsubscribed topic");

  // Pipelined requests come back in order with their ids.
  a.send(req("q1", "locate", {{"x", 12.0}, {"y", 9.0}}));
  a.send(req("q2", "room_info", {{"name", "HALL 2044"}}));
  a.send(req("q3", "material", {{"element_global_id", guid("CW01")}}));
  for (const char* id : {"q1", "q2", "q3"}) {
    auto r = a.json();
    c.require(r["type"] == "res" && r["id"] == id, fmt::format("response for {} out of order", id));
  }

  // Errors stay on the offending connection.
  a.send("this is not json");
  b.send(req("b1", "room_info", {{"name", "HALL 2044"}}));
  auto err = a.json();
  c.require(err["type"] == "err" && err["payload"]["code"] == "bad_envelope", "malformed line not rejected");
  auto ok = b.json();
  c.require(ok["type"] == "res" && ok["id"] == "b1", "other client disturbed by an error");
  a.send(req("a2", "dance", Json::object()));
  auto unknown = a.json();
  c.require(unknown["payload"]["code"] == "unknown_op" && unknown["id"] == "a2", "unknown op not reported");
  a.send(req("a3", "locate", {{"x", 12.0}, {"y", 9.0}}));
  c.require(a.json()["type"] == "res", "connection unusable after errors");

  // Deterministic bytes for repeated queries, across clients too.
  std::vector<std::string> infos, paths;
  for (auto* cl : {&a, &b, &a}) {
    cl->send(req("r", "room_info", {{"name", "HALL 2044"}}));
    infos.push_back(cl->line());
    cl->send(req("p", "path", {{"from", "CORRIDOR OUEST 2019"}, {"to", "W.C. HOMMES 2002"}}));
    paths.push_back(cl->line());
  }
  c.require(infos[0] == infos[1] && infos[1] == infos[2], "room_info responses differ");
  c.require(paths[0] == paths[1] && paths[1] == paths[2], "path responses differ");
  broker.stop();
  c.require(seconds_since(t0) < 5.0, "slower than 5 s");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"taxonomy conformance", taxonomy},
      {"parser round-trip", round_trip},
      {"route through the hall", uc1},
      {"vegetation obstacle", uc2},
      {"partitions ahead of schedule", uc3},
      {"unplanned column", uc4},
      {"rasterizer oracle", raster_oracle},
      {"grid format", grid_format},
      {"planner oracle", planner_oracle},
      {"service conformance", service_conformance},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    bool pass = c.failures.empty();
    failed += !pass;
    std::cout << fmt::format("CRITERION {:>2} {} {} ({:.2f} s)", i + 1, pass ? "PASS" : "FAIL", criteria[i].first,
                             seconds_since(t0));
    if (!pass) {
      std::cout << ": " << c.failures.front();
      if (c.failures.size() > 1) std::cout << fmt::format(" (+{} more)", c.failures.size() - 1);
    }
    std::cout << "\n";
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
