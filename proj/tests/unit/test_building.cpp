#include <cmath>

#include "doctest.h"

#include "birs/building.hpp"
#include "birs/step.hpp"
#include "support.hpp"

using namespace birs;
using namespace birs::building;
using birs::testing::code_of;

namespace {

// One storey in millimetres: a 4 x 3 m room, a glass wall turned 90 degrees,
// a column above the plan cut and a door without dimensions.
const char* const kMini =
    "ISO-10303-21;\nHEADER;\nFILE_SCHEMA(('IFC2X3'));\nENDSEC;\nDATA;\n"
    "#1=IFCSIUNIT(*,.LENGTHUNIT.,.MILLI.,.METRE.);\n"
    "#2=IFCUNITASSIGNMENT((#1));\n"
    "#3=IFCCARTESIANPOINT((0.,0.,0.));\n"
    "#4=IFCDIRECTION((0.,0.,1.));\n"
    "#5=IFCDIRECTION((1.,0.,0.));\n"
    "#6=IFCAXIS2PLACEMENT3D(#3,#4,#5);\n"
    "#7=IFCPROJECT('0000000000000000000001',$,'Mini',$,$,$,$,$,#2);\n"
    "#8=IFCLOCALPLACEMENT($,#6);\n"
    "#9=IFCBUILDINGSTOREY('0000000000000000000002',$,'RDC',$,$,#8,$,$,.ELEMENT.,0.);\n"
    "#10=IFCCARTESIANPOINT((1000.,2000.,0.));\n"
    "#11=IFCAXIS2PLACEMENT3D(#10,#4,#5);\n"
    "#12=IFCLOCALPLACEMENT(#8,#11);\n"
    "#13=IFCCARTESIANPOINT((0.,0.));\n"
    "#14=IFCCARTESIANPOINT((4000.,0.));\n"
    "#15=IFCCARTESIANPOINT((4000.,3000.));\n"
    "#16=IFCCARTESIANPOINT((0.,3000.));\n"
    "#17=IFCPOLYLINE((#13,#14,#15,#16,#13));\n"
    "#18=IFCARBITRARYCLOSEDPROFILEDEF(.AREA.,$,#17);\n"
    "#19=IFCEXTRUDEDAREASOLID(#18,#6,#4,2500.);\n"
    "#20=IFCSHAPEREPRESENTATION($,'Body','SweptSolid',(#19));\n"
    "#21=IFCPRODUCTDEFINITIONSHAPE($,$,(#20));\n"
    "#22=IFCSPACE('0000000000000000000003',$,'101',$,$,#12,#21,'Office 101',.ELEMENT.,.INTERNAL.,$);\n"
    "#23=IFCCARTESIANPOINT((1000.,3500.,0.));\n"
    "#24=IFCDIRECTION((0.,1.,0.));\n"
    "#25=IFCAXIS2PLACEMENT3D(#23,#4,#24);\n"
    "#26=IFCLOCALPLACEMENT(#8,#25);\n"
    "#27=IFCCARTESIANPOINT((0.,0.));\n"
    "#28=IFCAXIS2PLACEMENT2D(#27,$);\n"
    "#29=IFCRECTANGLEPROFILEDEF(.AREA.,$,#28,3000.,200.);\n"
    "#30=IFCEXTRUDEDAREASOLID(#29,#6,#4,3000.);\n"
    "#31=IFCSHAPEREPRESENTATION($,'Body','SweptSolid',(#30));\n"
    "#32=IFCPRODUCTDEFINITIONSHAPE($,$,(#31));\n"
    "#33=IFCWALL('0000000000000000000004',$,'W',$,$,#26,#32,$);\n"
    "#34=IFCCARTESIANPOINT((3000.,3000.,2000.));\n"
    "#35=IFCAXIS2PLACEMENT3D(#34,#4,#5);\n"
    "#36=IFCLOCALPLACEMENT(#8,#35);\n"
    "#37=IFCRECTANGLEPROFILEDEF(.AREA.,$,#28,300.,300.);\n"
    "#38=IFCEXTRUDEDAREASOLID(#37,#6,#4,1000.);\n"
    "#39=IFCSHAPEREPRESENTATION($,'Body','SweptSolid',(#38));\n"
    "#40=IFCPRODUCTDEFINITIONSHAPE($,$,(#39));\n"
    "#41=IFCCOLUMN('0000000000000000000005',$,'C',$,$,#36,#40,$);\n"
    "#42=IFCMATERIAL('Glass (tempered)');\n"
    "#43=IFCRELASSOCIATESMATERIAL('0000000000000000000006',$,$,$,(#33),#42);\n"
    "#44=IFCRELCONTAINEDINSPATIALSTRUCTURE('0000000000000000000007',$,$,$,(#33,#41,#47),#9);\n"
    "#45=IFCRELAGGREGATES('0000000000000000000008',$,$,$,#9,(#22));\n"
    "#46=IFCRELSPACEBOUNDARY('0000000000000000000009',$,$,$,#22,#33,$,.PHYSICAL.,.INTERNAL.);\n"
    "#47=IFCDOOR('000000000000000000000A',$,'D',$,$,#26,#32,$,$,$);\n"
    "ENDSEC;\nEND-ISO-10303-21;\n";

const Landmark& by_name(const BuildingModel& m, const std::string& name) {
  for (const auto& l : m.landmarks) {
    if (l.name == name) return l;
  }
  FAIL("no landmark named " << name);
  throw;
}

bool has_issue(const Extraction& ex, const std::string& code, step::EntityId entity) {
  for (const auto& i : ex.issues) {
    if (i.code == code && i.entity == entity) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("building") {
  TEST_CASE("millimetre model is scaled to metres") {
    auto g = step::parse_spf(kMini);
    CHECK(length_unit_scale(g) == doctest::Approx(0.001));
    auto ex = extract_model(g);
    const auto& m = ex.model;
    CHECK(m.project_name == "Mini");
    REQUIRE(m.spaces.size() == 1);
    const auto& s = m.spaces[0];
    CHECK(s.long_name == "Office 101");
    CHECK(s.polygon.area() == doctest::Approx(12.0));
    CHECK(s.centroid.x == doctest::Approx(3.0));
    CHECK(s.centroid.y == doctest::Approx(3.5));
    CHECK(s.storey == "0000000000000000000002");
    CHECK(s.function_tags == std::vector<std::string>{"office"});
  }

  TEST_CASE("rotated wall footprint and material") {
    auto ex = extract_model(step::parse_spf(kMini));
    const auto* w = ex.model.find_landmark("0000000000000000000004");
    REQUIRE(w != nullptr);
    CHECK(w->ifc_class == LandmarkClass::Wall);
    auto b = w->footprint.bbox();
    CHECK(b.xmin == doctest::Approx(0.9));
    CHECK(b.xmax == doctest::Approx(1.1));
    CHECK(b.ymin == doctest::Approx(2.0));
    CHECK(b.ymax == doctest::Approx(5.0));
    CHECK(w->pose.theta == doctest::Approx(M_PI / 2));
    CHECK(w->material.name == "Glass (tempered)");
    CHECK_FALSE(w->material.sensor_visible);
  }

  TEST_CASE("partial extraction reports per-element issues") {
    auto ex = extract_model(step::parse_spf(kMini));
    CHECK(has_issue(ex, "NotAtCutHeight", 41));
    CHECK(has_issue(ex, "MissingDoorDimensions", 47));
    CHECK(ex.model.find_landmark("0000000000000000000005") == nullptr);
    CHECK(ex.model.doors.empty());
    // The column spans the plan cut when it is raised.
    ExtractOptions high;
    high.cut_offset = 2.5;
    auto ex2 = extract_model(step::parse_spf(kMini), high);
    CHECK(ex2.model.find_landmark("0000000000000000000005") != nullptr);
  }

  TEST_CASE("absent material association is UNKNOWN and visible") {
    auto g = step::parse_spf(kMini);
    auto info = material_of(g, 41, VisibilityTable::defaults());
    CHECK(info == MaterialInfo{"UNKNOWN", true});
  }

  TEST_CASE("visibility table") {
    auto t = VisibilityTable::parse("# comment\nGlass* = false\nconcrete = true\n* = true\n");
    CHECK_FALSE(t.visible("glass clear"));
    CHECK(t.visible("Concrete"));
    CHECK(t.visible("Steel"));
    CHECK(code_of([] { VisibilityTable::parse("Glass*"); }) == "BadVisibilityRule");
    CHECK(code_of([] { VisibilityTable::parse("Glass* = maybe"); }) == "BadVisibilityRule");
    CHECK(code_of([] { VisibilityTable::parse(" = true"); }) == "BadVisibilityRule");
    CHECK_FALSE(VisibilityTable::defaults().visible("Glass clear"));
  }

  TEST_CASE("function tagger keywords and overrides") {
    auto t = FunctionTagger::defaults();
    CHECK(t.tags_for("x", "BUREAU ENTREPRENEUR 2050") ==
          std::vector<std::string>{"contractor_office", "office"});
    CHECK(t.tags_for("x", "Corridor Sud").front() == "corridor");
    t.load_overrides("space \"W.C. HOMMES 2002\" = restroom, men\nkeyword \"LABO\" = lab\n");
    CHECK(t.tags_for("x", "W.C. HOMMES 2002") == std::vector<std::string>{"restroom", "men"});
    CHECK(t.tags_for("x", "LABO 12") == std::vector<std::string>{"lab"});
    CHECK(code_of([&] { t.load_overrides("space W.C. = x"); }) == "BadFunctionTagRule");
    CHECK(code_of([&] { t.load_overrides("room \"A\" = x"); }) == "BadFunctionTagRule");
  }

  TEST_CASE("fixture model contents") {
    const auto& m = testing::pavd2().model();
    REQUIRE(m.storeys.size() == 1);
    CHECK(m.storeys[0].name == "NIVEAU 2");
    CHECK(m.storeys[0].elevation == doctest::Approx(7.0));
    CHECK(m.spaces.size() == 9);
    CHECK(m.doors.size() == 10);
    // 24 walls, 10 doors, 2 columns, a stair and a railing.
    CHECK(m.landmarks.size() == 38);
    CHECK(testing::pavd2().extraction.issues.empty());

    auto hall = m.spaces_named("HALL 2044");
    REQUIRE(hall.size() == 1);
    CHECK(hall[0]->polygon.area() == doctest::Approx(60.0));
    CHECK(hall[0]->centroid.x == doctest::Approx(12.0));
    CHECK(hall[0]->centroid.y == doctest::Approx(9.0));

    const auto& cw = by_name(m, "Mur rideau CW01");
    CHECK(cw.ifc_class == LandmarkClass::CurtainWall);
    CHECK(cw.material.name == "Glass clear");
    CHECK_FALSE(cw.material.sensor_visible);
    CHECK(by_name(m, "Mur P03").material.name == "Gypsum");
    CHECK(by_name(m, "Mur W01").material.sensor_visible);
  }

  TEST_CASE("fixture doors carry size and host wall") {
    const auto& m = testing::pavd2().model();
    const auto& d2 = by_name(m, "Porte D2");
    const auto* rec = m.find_door(d2.global_id);
    REQUIRE(rec != nullptr);
    CHECK(rec->width == doctest::Approx(1.0));
    CHECK(rec->height == doctest::Approx(2.1));
    CHECK(rec->center.x == doctest::Approx(7.0));
    CHECK(rec->center.y == doctest::Approx(9.0));
    REQUIRE(rec->host_wall.has_value());
    CHECK(*rec->host_wall == by_name(m, "Mur P03").global_id);
  }

  TEST_CASE("fixture boundaries") {
    const auto& m = testing::pavd2().model();
    auto hall = m.spaces_named("HALL 2044")[0]->global_id;
    auto names = std::vector<std::string>{};
    for (const auto* l : m.boundary_landmarks(hall)) names.push_back(l->name);
    std::sort(names.begin(), names.end());
    CHECK(names == std::vector<std::string>{"Mur P03", "Mur P04", "Mur P10", "Mur W10", "Mur rideau CW01",
                                            "Porte D2", "Porte D3"});
    int virtual_count = 0;
    for (const auto& b : m.boundaries) virtual_count += b.kind == BoundaryKind::Virtual;
    CHECK(virtual_count == 2);
  }
}
