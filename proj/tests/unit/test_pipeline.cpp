#include "doctest.h"

#include "birs/pipeline.hpp"
#include "support.hpp"

using namespace birs;
using birs::testing::code_of;

TEST_SUITE("pipeline") {
  TEST_CASE("config defaults and relative paths") {
    auto c = parse_config(R"({"ifc": "m.ifc", "grid_bounds": [0, 1, 2, 3]})", "/data/site");
    CHECK(c.ifc->string() == "/data/site/m.ifc");
    CHECK(c.resolution == 0.05);
    CHECK(c.cut_height == 1.0);
    CHECK(c.listen == "127.0.0.1:7878");
    CHECK(c.grid_bounds->xmax == 2.0);
    CHECK_FALSE(c.as_of.has_value());
    auto abs = parse_config(R"({"ifc": "/x/m.ifc"})", "/data");
    CHECK(abs.ifc->string() == "/x/m.ifc");
  }

  TEST_CASE("config errors") {
    auto bad = [](const char* doc) { return code_of([&] { parse_config(doc, "."); }); };
    CHECK(bad("{") == "BadConfig");
    CHECK(bad("[]") == "BadConfig");
    CHECK(bad(R"({"colour": "blue"})") == "BadConfig");
    CHECK(bad(R"({"resolution": "fine"})") == "BadConfig");
    CHECK(bad(R"({"resolution": 0})") == "BadConfig");
    CHECK(bad(R"({"min_cluster_area": -1})") == "BadConfig");
    CHECK(bad(R"({"geo_transform": {"translation": [1]}})") == "BadConfig");
    CHECK(bad(R"({"geo_transform": {"scale": 0}})") == "InvalidTransform");
    CHECK(bad(R"({"grid_bounds": [0, 1, 2]})") == "BadConfig");
    CHECK(bad(R"({"as_of": "yesterday"})") == "BadDate");
    CHECK(code_of([] { load_config("/nonexistent/birs.json"); }) == "IoError");
  }

  TEST_CASE("missing inputs") {
    auto c = parse_config(R"({"ifc": "nope.ifc"})", "/nonexistent");
    CHECK(code_of([&] { validate_paths(c); }) == "IoError");
    CHECK(code_of([] { load_artifacts(Config{}); }) == "BadConfig");
  }

  TEST_CASE("fixture artifacts") {
    const auto& a = testing::pavd2();
    CHECK(a.config.as_of.has_value());
    CHECK(a.schedule->size() == 26);
    CHECK_FALSE(a.built.has_value());
    auto summary = write_model_summary(a.extraction);
    CHECK(summary.find("NIVEAU 2") != std::string::npos);
  }

  TEST_CASE("loading twice gives the same products") {
    auto cfg = load_config(testing::fixture("config.json"));
    auto a = load_artifacts(cfg);
    const auto& b = testing::pavd2();
    CHECK(a.store == b.store);
    CHECK(topo::write_topo_map(a.topo) == topo::write_topo_map(b.topo));
    CHECK(write_model_summary(a.extraction) == write_model_summary(b.extraction));
  }
}
