#include <map>
#include <set>

#include "doctest.h"

#include "birs/ontology.hpp"
#include "support.hpp"

using namespace birs;
using namespace birs::ontology;
using birs::testing::code_of;

namespace {

Iri I(const char* s) { return Iri::parse(s); }

// Reachability over the raw edge list.
bool reaches(const std::vector<std::pair<Iri, Iri>>& edges, const Iri& a, const Iri& b) {
  std::set<Iri> seen{a};
  std::vector<Iri> todo{a};
  while (!todo.empty()) {
    auto c = todo.back();
    todo.pop_back();
    if (c == b) return true;
    for (const auto& [child, parent] : edges) {
      if (child == c && seen.insert(parent).second) todo.push_back(parent);
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("ontology") {
  TEST_CASE("iri parsing") {
    CHECK(I("birs:Space").str() == "birs:Space");
    CHECK(code_of([] { Iri::parse("nope"); }) == "InvalidIri");
    CHECK(code_of([] { Iri::parse("foo:Bar"); }) == "InvalidIri");
    CHECK(code_of([] { Iri::parse("birs:"); }) == "InvalidIri");
    CHECK(code_of([] { Iri::parse("birs:a b"); }) == "InvalidIri");
  }

  TEST_CASE("literals") {
    CHECK(Literal::number(2.5).as_number() == 2.5);
    CHECK(Literal::boolean(false).lexical == "false");
    auto p = Literal::point({1.25, -3});
    CHECK(p.lexical == "1.25 -3");
    CHECK(p.as_point() == Point2{1.25, -3});
    CHECK(code_of([] { Literal::text("x").as_number(); }) == "TypeMismatch");
  }

  TEST_CASE("builtin closure agrees with edge reachability") {
    TripleStore store;
    const auto& edges = builtin_subclass_edges();
    std::set<Iri> nodes;
    for (const auto& [c, p] : edges) {
      nodes.insert(c);
      nodes.insert(p);
    }
    for (const auto& a : nodes) {
      for (const auto& b : nodes) {
        CHECK_MESSAGE(store.is_subclass_of(a, b) == reaches(edges, a, b), a.str() << " <= " << b.str());
      }
    }
    CHECK(store.is_subclass_of(I("ifc:IfcWall"), I("birs:Landmark")));
    CHECK(store.is_subclass_of(I("mdr:OccupancyGridMap"), I("mdr:Map")));
    CHECK_FALSE(store.is_subclass_of(I("birs:Space"), I("birs:Landmark")));
    CHECK(code_of([&] { (void)store.is_subclass_of(I("birs:Nope"), I("sumo:Entity")); }) == "UnknownClass");
    CHECK(store.disjointness_violations().empty());
  }

  TEST_CASE("assert errors") {
    TripleStore store;
    auto a = instance_iri("A");
    CHECK(code_of([&] { store.assert_triple({a, I("birs:likes"), Literal::text("x")}); }) == "UnknownPredicate");
    CHECK(code_of([&] { store.assert_triple({a, vocab::type(), Literal::text("x")}); }) == "InvalidTriple");
    CHECK(code_of([&] { store.assert_triple({I("sumo:Entity"), vocab::sub_class_of(), I("ifc:IfcWall")}); }) ==
          "CycleIntroduced");
    CHECK(code_of([&] { store.assert_triple({I("ifc:IfcWall"), vocab::sub_class_of(), I("birs:Space")}); }) ==
          "TaxonomyMutation");
    CHECK(code_of([&] { store.retract({I("ifc:IfcWall"), vocab::sub_class_of(), I("ifc:IfcBuildingElement")}); }) ==
          "TaxonomyMutation");
  }

  TEST_CASE("extension classes and idempotent asserts") {
    TripleStore store;
    auto before = store.size();
    Triple t{I("birs:Stairwell"), vocab::sub_class_of(), I("birs:Space")};
    store.assert_triple(t);
    store.assert_triple(t);
    CHECK(store.size() == before + 1);
    CHECK(store.is_subclass_of(I("birs:Stairwell"), I("cora:Region")));
    auto x = instance_iri("X1");
    store.assert_triple({x, vocab::type(), I("birs:Stairwell")});
    CHECK(store.instances_of(I("birs:Space"), true).contains(x));
    CHECK_FALSE(store.instances_of(I("birs:Space"), false).contains(x));
    store.retract({x, vocab::type(), I("birs:Stairwell")});
    CHECK(store.instances_of(I("birs:Space"), true).empty());
  }

  TEST_CASE("disjoint classes are reported") {
    TripleStore store;
    auto x = instance_iri("X");
    store.assert_triple({x, vocab::type(), I("birs:Space")});
    store.assert_triple({x, vocab::type(), I("sumo:Process")});
    auto v = store.disjointness_violations();
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "inst:X: sumo:Object / sumo:Process");
  }

  TEST_CASE("fixture classification") {
    const auto& a = testing::pavd2();
    const auto& store = a.store;
    const auto& m = a.model();
    CHECK(store.instances_of(I("birs:Space"), true).size() == m.spaces.size());
    CHECK(store.instances_of(I("ifc:IfcDoor"), true).size() == m.doors.size());
    // Every landmark once, plus the site obstacles under Topography.
    CHECK(store.instances_of(I("birs:Landmark"), true).size() == m.landmarks.size());
    CHECK(store.instances_of(I("birs:Topography"), true).size() == a.site.obstacles.size());
    for (const auto& l : m.landmarks) {
      auto s = instance_iri(l.global_id);
      CHECK(store.contains({s, vocab::has_material(), Literal::text(l.material.name)}));
      CHECK(store.contains({s, vocab::sensor_visible(), Literal::boolean(l.material.sensor_visible)}));
    }
    CHECK(store.disjointness_violations().empty());
  }

  TEST_CASE("queries") {
    const auto& a = testing::pavd2();
    auto rows = query(a.store, parse_query(a.store, "?s a Space ; ?s longName \"HALL 2044\""));
    REQUIRE(rows.size() == 1);
    CHECK(std::get<Iri>(rows[0].at("s")) == instance_iri(a.model().spaces_named("HALL 2044")[0]->global_id));

    auto glass = query(a.store, parse_query(a.store, "?w a Landmark . ?w sensorVisible false"));
    std::size_t invisible = 0;
    for (const auto& l : a.model().landmarks) invisible += !l.material.sensor_visible;
    CHECK(glass.size() == invisible);
    CHECK(invisible >= 1);

    CHECK(code_of([&] { parse_query(a.store, "?s ?p"); }) == "QuerySyntax");
    CHECK(code_of([&] { parse_query(a.store, "?s \"unterminated"); }) == "QuerySyntax");
  }

  TEST_CASE("line format round-trip") {
    const auto& store = testing::pavd2().store;
    auto text = write_ntriples(store);
    auto back = read_ntriples(text);
    CHECK(back == store);
    CHECK(write_ntriples(back) == text);
    CHECK(code_of([] { read_ntriples("inst:A birs:longName\n"); }) == "SyntaxError");
    CHECK(code_of([] { read_ntriples("inst:A birs:nope \"x\" .\n"); }) == "UnknownPredicate");
  }
}
