#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/ontology.hpp"
#include "birs/textfmt.hpp"

namespace birs::ontology {

namespace {

constexpr std::pair<Prefix, std::string_view> kPrefixes[] = {
    {Prefix::Rdf, "rdf"},   {Prefix::Rdfs, "rdfs"}, {Prefix::Sumo, "sumo"},
    {Prefix::Cora, "cora"}, {Prefix::Corax, "corax"}, {Prefix::Mdr, "mdr"},
    {Prefix::Birs, "birs"}, {Prefix::Ifc, "ifc"},   {Prefix::Inst, "inst"},
};

bool local_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '$';
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error("TypeMismatch", fmt::format("'{}' is not a number", s));
  }
  return v;
}

}  // namespace

std::string_view to_string(Prefix p) {
  for (const auto& [k, name] : kPrefixes) {
    if (k == p) return name;
  }
  return "?";
}

std::optional<Prefix> prefix_from_string(std::string_view s) {
  for (const auto& [k, name] : kPrefixes) {
    if (name == s) return k;
  }
  return std::nullopt;
}

Iri Iri::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error("InvalidIri", fmt::format("'{}' has no prefix", text));
  auto prefix = prefix_from_string(text.substr(0, colon));
  if (!prefix) throw Error("InvalidIri", fmt::format("unknown prefix in '{}'", text));
  return iri(*prefix, text.substr(colon + 1));
}

Iri iri(Prefix p, std::string_view local) {
  if (local.empty()) throw Error("InvalidIri", fmt::format("empty local name after '{}:'", to_string(p)));
  for (char c : local) {
    if (!local_char(c)) throw Error("InvalidIri", fmt::format("bad character in local name '{}'", local));
  }
  return Iri{p, std::string(local)};
}

std::string Iri::str() const { return fmt::format("{}:{}", to_string(prefix), local); }

std::strong_ordering operator<=>(const Iri& a, const Iri& b) {
  // Textual order, so sorted output reads alphabetically.
  if (auto c = to_string(a.prefix) <=> to_string(b.prefix); c != 0) return c;
  return a.local <=> b.local;
}

Literal Literal::text(std::string_view s) { return {Kind::Text, std::string(s)}; }
Literal Literal::number(double v) { return {Kind::Number, text::decimal(v)}; }
Literal Literal::boolean(bool b) { return {Kind::Boolean, b ? "true" : "false"}; }
Literal Literal::point(Point2 p) { return {Kind::Point, text::decimal(p.x) + " " + text::decimal(p.y)}; }

double Literal::as_number() const {
  if (kind != Kind::Number) throw Error("TypeMismatch", fmt::format("literal '{}' is not a number", lexical));
  return parse_double(lexical);
}

bool Literal::as_boolean() const {
  if (kind != Kind::Boolean) throw Error("TypeMismatch", fmt::format("literal '{}' is not a boolean", lexical));
  return lexical == "true";
}

Point2 Literal::as_point() const {
  if (kind != Kind::Point) throw Error("TypeMismatch", fmt::format("literal '{}' is not a point", lexical));
  auto sp = lexical.find(' ');
  if (sp == std::string::npos) throw Error("TypeMismatch", fmt::format("malformed point '{}'", lexical));
  return {parse_double(std::string_view(lexical).substr(0, sp)), parse_double(std::string_view(lexical).substr(sp + 1))};
}

std::string term_text(const Term& t) {
  if (const auto* i = std::get_if<Iri>(&t)) return i->str();
  return std::get<Literal>(t).lexical;
}

std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
  if (auto c = a.subject <=> b.subject; c != 0) return c;
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  if (a.object.index() != b.object.index()) return a.object.index() <=> b.object.index();
  if (const auto* i = std::get_if<Iri>(&a.object)) return *i <=> std::get<Iri>(b.object);
  const auto& la = std::get<Literal>(a.object);
  const auto& lb = std::get<Literal>(b.object);
  if (la.kind != lb.kind) return la.kind <=> lb.kind;
  return la.lexical <=> lb.lexical;
}

namespace vocab {
Iri type() { return {Prefix::Rdf, "type"}; }
Iri sub_class_of() { return {Prefix::Rdfs, "subClassOf"}; }
Iri has_material() { return {Prefix::Birs, "hasMaterial"}; }
Iri bounded_by() { return {Prefix::Birs, "boundedBy"}; }
Iri has_centroid() { return {Prefix::Birs, "hasCentroid"}; }
Iri located_on_storey() { return {Prefix::Birs, "locatedOnStorey"}; }
Iri connects_to() { return {Prefix::Birs, "connectsTo"}; }
Iri sensor_visible() { return {Prefix::Birs, "sensorVisible"}; }
Iri long_name() { return {Prefix::Birs, "longName"}; }
Iri has_function() { return {Prefix::Birs, "hasFunction"}; }
Iri width() { return {Prefix::Birs, "width"}; }
Iri height() { return {Prefix::Birs, "height"}; }
Iri has_host() { return {Prefix::Birs, "hasHost"}; }

const std::set<Iri>& predicates() {
  static const std::set<Iri> all = {
      type(),     sub_class_of(),  has_material(), bounded_by(), has_centroid(), located_on_storey(), connects_to(),
      sensor_visible(), long_name(), has_function(), width(), height(), has_host(),
  };
  return all;
}
}  // namespace vocab

const std::vector<std::pair<Iri, Iri>>& builtin_subclass_edges() {
  using P = Prefix;
  static const std::vector<std::pair<Iri, Iri>> edges = [] {
    std::vector<std::pair<Iri, Iri>> e;
    auto add = [&](P pc, const char* c, P pp, const char* p) { e.push_back({{pc, c}, {pp, p}}); };
    // SUMO upper level
    add(P::Sumo, "Physical", P::Sumo, "Entity");
    add(P::Sumo, "Abstract", P::Sumo, "Entity");
    add(P::Sumo, "Object", P::Sumo, "Physical");
    add(P::Sumo, "Process", P::Sumo, "Physical");
    for (const char* a : {"Quantity", "Attribute", "SetOrClass", "Relation", "Proposition"}) {
      add(P::Sumo, a, P::Sumo, "Abstract");
    }
    // CORA / CORAX
    add(P::Cora, "ContentBearingObject", P::Sumo, "Object");
    add(P::Corax, "Design", P::Sumo, "Proposition");
    add(P::Corax, "PhysicalEnvironment", P::Sumo, "Object");
    add(P::Cora, "Region", P::Corax, "PhysicalEnvironment");
    // MDR
    add(P::Mdr, "Map", P::Cora, "ContentBearingObject");
    add(P::Mdr, "MetricMap", P::Mdr, "Map");
    add(P::Mdr, "TopologicalMap", P::Mdr, "Map");
    add(P::Mdr, "ContinuousMetricMap", P::Mdr, "MetricMap");
    add(P::Mdr, "DiscreteMetricMap", P::Mdr, "MetricMap");
    add(P::Mdr, "OccupancyGridMap", P::Mdr, "DiscreteMetricMap");
    // BIRS median level
    add(P::Birs, "SpatialStructureElement", P::Corax, "PhysicalEnvironment");
    add(P::Birs, "Topography", P::Corax, "PhysicalEnvironment");
    add(P::Birs, "Landmark", P::Cora, "Region");
    add(P::Birs, "Space", P::Cora, "Region");
    add(P::Birs, "Uncertainty", P::Cora, "Region");
    add(P::Ifc, "IfcBuildingElement", P::Birs, "Landmark");
    // IFC leaves
    for (const char* c : {"IfcWall", "IfcCurtainWall", "IfcColumn", "IfcDoor", "IfcRailing", "IfcStair"}) {
      add(P::Ifc, c, P::Ifc, "IfcBuildingElement");
    }
    // GIS obstacles
    for (const char* c : {"ExistingBuilding", "WaterSurface", "Vegetation"}) {
      add(P::Birs, c, P::Birs, "Topography");
    }
    return e;
  }();
  return edges;
}

std::vector<std::pair<Iri, Iri>> core_subclass_edges() {
  std::vector<std::pair<Iri, Iri>> out;
  for (const auto& e : builtin_subclass_edges()) {
    bool ifc_leaf = e.second == Iri{Prefix::Ifc, "IfcBuildingElement"};
    bool gis_leaf = e.second == Iri{Prefix::Birs, "Topography"};
    if (!ifc_leaf && !gis_leaf) out.push_back(e);
  }
  return out;
}

Iri instance_iri(std::string_view global_id) { return iri(Prefix::Inst, global_id); }

}  // namespace birs::ontology
