// birs: batch driver for the BIM-to-robot pipeline.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "birs/error.hpp"
#include "birs/pipeline.hpp"
#include "birs/service.hpp"
#include "birs/textfmt.hpp"

namespace fs = std::filesystem;
using namespace birs;

namespace {

struct Options {
  std::string config;
  bool deterministic = true;
  std::string ifc, site, schedule, visibility, function_tags;
  std::optional<double> resolution, cut_height, min_area;
  std::string as_of;
  std::string out;

  // parse
  std::string canonical;
  // build
  std::string out_dir;
  // grid
  std::string image;
  std::string png;
  // diff / report
  std::string planned, built;
  // plan
  std::string from, to;
  // query
  std::string query_text, store;
  // serve
  std::string listen;
};

std::optional<fs::path> abs_path(const std::string& p) {
  if (p.empty()) return std::nullopt;
  return fs::absolute(p).lexically_normal();
}

// Precedence: flags > config file > defaults.
Config make_config(const Options& o) {
  Config c;
  if (!o.config.empty()) {
    c = load_config(o.config);
  } else {
    c.base_dir = fs::current_path();
  }
  if (auto p = abs_path(o.ifc)) c.ifc = p;
  if (auto p = abs_path(o.site)) c.site_features = p;
  if (auto p = abs_path(o.schedule)) c.schedule = p;
  if (auto p = abs_path(o.visibility)) c.visibility_table = p;
  if (auto p = abs_path(o.function_tags)) c.function_tags = p;
  if (auto p = abs_path(o.planned)) c.planned_meta = p;
  if (auto p = abs_path(o.built)) c.built_meta = p;
  if (o.resolution) c.resolution = *o.resolution;
  if (o.cut_height) c.cut_height = *o.cut_height;
  if (o.min_area) c.min_cluster_area = *o.min_area;
  if (!o.as_of.empty()) c.as_of = progress::parse_date(o.as_of);
  if (!o.listen.empty()) c.listen = o.listen;
  if (!(c.resolution > 0.0)) throw Error("BadConfig", "resolution must be positive");
  return c;
}

std::string binding_text(const ontology::Term& t) {
  const auto* lit = std::get_if<ontology::Literal>(&t);
  if (!lit || lit->kind == ontology::Literal::Kind::Number || lit->kind == ontology::Literal::Kind::Boolean) {
    return ontology::term_text(t);
  }
  return text::quoted(lit->lexical);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
  }
}

int cmd_parse(const Options& o) {
  Config c = make_config(o);
  validate_paths(c);
  if (!c.ifc) throw Error("BadConfig", "no IFC input (--ifc or config 'ifc')");
  auto g = step::read_spf_file(c.ifc->string());
  std::string out = fmt::format("ENTITIES {}\n", g.size());
  std::string schemas;
  for (const auto& s : g.header().schemas()) schemas += " " + s;
  out += fmt::format("SCHEMA{}\n", schemas.empty() ? " -" : schemas);
  for (const auto& [type, ids] : g.type_index()) out += fmt::format("TYPE {} {}\n", type, ids.size());
  for (const auto& d : g.dangling()) out += fmt::format("DANGLING #{} #{}\n", d.from, d.to);
  emit(o, out);
  if (!o.canonical.empty()) write_text_file(o.canonical, step::write_canonical(g));
  return 0;
}

int cmd_build(const Options& o) {
  auto a = load_artifacts(make_config(o));
  fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
  fs::create_directories(dir);
  write_text_file(dir / "model.txt", write_model_summary(a.extraction));
  write_text_file(dir / "store.nt", ontology::write_ntriples(a.store));
  write_text_file(dir / "topo.txt", topo::write_topo_map(a.topo));
  const auto& m = a.model();
  std::string out = fmt::format("storeys={} spaces={} landmarks={} doors={} obstacles={} triples={} nodes={} edges={} issues={}\n",
                                m.storeys.size(), m.spaces.size(), m.landmarks.size(), m.doors.size(),
                                a.site.obstacles.size(), a.store.size(), a.topo.nodes.size(), a.topo.edges.size(),
                                a.extraction.issues.size());
  for (const auto& i : a.extraction.issues) out += fmt::format("issue {} #{} {}\n", i.code, i.entity, i.message);
  for (const auto& i : a.topo.issues) out += fmt::format("issue {}\n", i);
  emit(o, out);
  return 0;
}

int cmd_grid(const Options& o) {
  Config c = make_config(o);
  auto a = load_artifacts(c);
  grid::RasterOptions ro;
  if (c.as_of) {
    if (!a.schedule) throw Error("MissingSchedule", "--as-of needs a schedule");
    ro.exclude = progress::not_yet_due(a.model(), *a.schedule, *c.as_of);
  }
  auto g = grid::rasterize(a.site, c.resolution, c.grid_bounds, ro);
  fs::path meta = o.out.empty() ? fs::path("map.yaml") : fs::path(o.out);
  fs::path image = o.image.empty() ? fs::path(meta).replace_extension(".pgm") : fs::path(o.image);
  if (meta.has_parent_path()) fs::create_directories(meta.parent_path());
  grid::export_map(g, image.string(), meta.string());
  if (!o.png.empty()) grid::export_png(g, o.png);
  std::cout << fmt::format("grid {}x{} resolution={} occupied={} free={} unknown={}\n", g.spec.width, g.spec.height,
                           text::decimal(g.spec.resolution), g.count(grid::Cell::Occupied), g.count(grid::Cell::Free),
                           g.count(grid::Cell::Unknown));
  return 0;
}

int cmd_diff(const Options& o) {
  Config c = make_config(o);
  validate_paths(c);
  if (!c.planned_meta || !c.built_meta) throw Error("BadConfig", "diff needs --planned and --built map files");
  auto planned = grid::load_map(c.planned_meta->string());
  auto built = grid::load_map(c.built_meta->string());
  auto diff = grid::diff_grids(planned, built);
  emit(o, grid::write_diff_report(diff, grid::cluster_diff(diff, c.min_cluster_area)));
  return 0;
}

int cmd_report(const Options& o) {
  Config c = make_config(o);
  if (!c.as_of) throw Error("BadConfig", "report needs --as-of or config 'as_of'");
  auto a = load_artifacts(c);
  auto run = run_progress(a, *c.as_of);
  emit(o, progress::write_findings(a.topo, run.findings));
  return 0;
}

int cmd_plan(const Options& o) {
  auto a = load_artifacts(make_config(o));
  auto from = a.topo.resolve(o.from);
  auto to = a.topo.resolve(o.to);
  emit(o, topo::write_route(a.topo, topo::plan_path(a.topo, from, to)));
  return 0;
}

int cmd_query(const Options& o) {
  ontology::TripleStore store;
  if (!o.store.empty()) {
    store = ontology::read_ntriples(read_text_file(o.store));
  } else {
    store = load_artifacts(make_config(o)).store;
  }
  auto rows = ontology::query(store, ontology::parse_query(store, o.query_text));
  std::string out = fmt::format("ROWS {}\n", rows.size());
  for (const auto& row : rows) {
    std::string line;
    for (const auto& [var, term] : row) line += fmt::format("{}?{}={}", line.empty() ? "" : " ", var, binding_text(term));
    out += line + "\n";
  }
  emit(o, out);
  return 0;
}

int cmd_serve(const Options& o) {
  Config c = make_config(o);
  std::string listen = c.listen;
  if (o.listen.empty()) {
    if (const char* env = std::getenv("BIRS_ADDR"); env && *env) listen = env;
  }
  auto addr = service::parse_listen_address(listen);
  auto artifacts = std::make_shared<const Artifacts>(load_artifacts(c));

  // Block termination signals before the io thread starts so only sigwait sees them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  service::Broker broker(artifacts, addr);
  broker.start();
  std::cout << fmt::format("listening on {}:{}", addr.host, broker.port()) << std::endl;
  int sig = 0;
  sigwait(&set, &sig);
  broker.stop();
  return 0;
}

void add_inputs(CLI::App* sub, Options& o) {
  sub->add_option("--ifc", o.ifc, "IFC SPF file");
  sub->add_option("--site", o.site, "site feature file");
  sub->add_option("--schedule", o.schedule, "schedule CSV");
  sub->add_option("--visibility", o.visibility, "material visibility table");
  sub->add_option("--function-tags", o.function_tags, "space function tag overrides");
  sub->add_option("--cut-height", o.cut_height, "plan cut above storey elevation (m)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"birs: building information for robot navigation"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_flag("--deterministic,!--no-deterministic", o.deterministic,
               "stable ordering of every output (always on; accepted for scripts)");
  app.fallthrough();

  std::map<std::string, int (*)(const Options&)> handlers;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    handlers[name] = fn;
    return app.add_subcommand(name, help);
  };

  auto* parse = sub("parse", "parse an SPF file and print an entity census", cmd_parse);
  parse->add_option("--ifc", o.ifc, "IFC SPF file");
  parse->add_option("--canonical", o.canonical, "write the canonical re-serialization here");
  parse->add_option("-o,--out", o.out, "census output file");

  auto* build = sub("build", "extract the model and write model.txt, store.nt and topo.txt", cmd_build);
  add_inputs(build, o);
  build->add_option("-o,--out-dir", o.out_dir, "output directory");

  auto* grid = sub("grid", "rasterize the site into PGM/YAML map files", cmd_grid);
  add_inputs(grid, o);
  grid->add_option("--resolution", o.resolution, "cell size in meters");
  grid->add_option("--as-of", o.as_of, "leave out elements scheduled after this date");
  grid->add_option("-o,--out", o.out, "map YAML path (default map.yaml)");
  grid->add_option("--image", o.image, "image path (default: YAML path with .pgm)");
  grid->add_option("--png", o.png, "also write a PNG copy");

  auto* diff = sub("diff", "diff planned and as-built map files", cmd_diff);
  diff->add_option("--planned", o.planned, "planned map YAML");
  diff->add_option("--built", o.built, "as-built map YAML");
  diff->add_option("--min-area", o.min_area, "minimum cluster area in m^2");
  diff->add_option("-o,--out", o.out, "report file");

  auto* report = sub("report", "progress findings from the as-built map", cmd_report);
  add_inputs(report, o);
  report->add_option("--as-of", o.as_of, "report date YYYY-MM-DD");
  report->add_option("--planned", o.planned, "planned map YAML (default: rasterized model)");
  report->add_option("--built", o.built, "as-built map YAML");
  report->add_option("--min-area", o.min_area, "minimum cluster area in m^2");
  report->add_option("-o,--out", o.out, "report file");

  auto* plan = sub("plan", "route between two rooms", cmd_plan);
  add_inputs(plan, o);
  plan->add_option("--from", o.from, "start room name or GlobalId")->required();
  plan->add_option("--to", o.to, "goal room name or GlobalId")->required();
  plan->add_option("-o,--out", o.out, "route file");

  auto* query = sub("query", "run a triple pattern query", cmd_query);
  add_inputs(query, o);
  query->add_option("pattern", o.query_text, "patterns, e.g. '?s a Space ; ?s longName ?n'")->required();
  query->add_option("--store", o.store, "query this N-Triples file instead of building");
  query->add_option("-o,--out", o.out, "bindings file");

  auto* serve = sub("serve", "run the BIRS node", cmd_serve);
  add_inputs(serve, o);
  serve->add_option("--listen", o.listen, "host:port (else BIRS_ADDR, config, 127.0.0.1:7878)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (const auto& [name, fn] : handlers) {
      if (app.got_subcommand(name)) return fn(o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: IoError: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
