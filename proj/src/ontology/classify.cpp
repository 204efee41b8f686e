#include <map>

#include "birs/building.hpp"
#include "birs/gis.hpp"
#include "birs/ontology.hpp"

namespace birs::ontology {

namespace {

Iri leaf_class(building::LandmarkClass c) { return iri(Prefix::Ifc, building::ifc_name(c)); }

}  // namespace

TripleStore classify_model(const building::BuildingModel& model) {
  TripleStore store;
  auto add = [&](const Iri& s, const Iri& p, Term o) { store.assert_triple({s, p, std::move(o)}); };

  for (const auto& st : model.storeys) {
    Iri s = instance_iri(st.global_id);
    add(s, vocab::type(), iri(Prefix::Birs, "SpatialStructureElement"));
    add(s, vocab::long_name(), Literal::text(st.name));
  }

  for (const auto& l : model.landmarks) {
    Iri s = instance_iri(l.global_id);
    add(s, vocab::type(), leaf_class(l.ifc_class));
    add(s, vocab::has_material(), Literal::text(l.material.name));
    add(s, vocab::sensor_visible(), Literal::boolean(l.material.sensor_visible));
    add(s, vocab::has_centroid(), Literal::point(l.footprint.empty() ? Point2{l.pose.x, l.pose.y}
                                                                      : l.footprint.centroid()));
    if (!l.storey.empty()) add(s, vocab::located_on_storey(), instance_iri(l.storey));
  }

  for (const auto& d : model.doors) {
    Iri s = instance_iri(d.global_id);
    // Doors without an extracted footprint still need their class.
    add(s, vocab::type(), leaf_class(building::LandmarkClass::Door));
    add(s, vocab::width(), Literal::number(d.width));
    add(s, vocab::height(), Literal::number(d.height));
    if (d.host_wall) add(s, vocab::has_host(), instance_iri(*d.host_wall));
  }

  for (const auto& sp : model.spaces) {
    Iri s = instance_iri(sp.global_id);
    add(s, vocab::type(), iri(Prefix::Birs, "Space"));
    add(s, vocab::long_name(), Literal::text(sp.long_name));
    add(s, vocab::has_centroid(), Literal::point(sp.centroid));
    if (!sp.storey.empty()) add(s, vocab::located_on_storey(), instance_iri(sp.storey));
    for (const auto& tag : sp.function_tags) add(s, vocab::has_function(), Literal::text(tag));
  }

  // Element-less (virtual) boundaries point at the boundary record itself.
  std::map<std::string, std::vector<std::string>> spaces_by_door;
  for (const auto& b : model.boundaries) {
    add(instance_iri(b.space), vocab::bounded_by(), instance_iri(b.element ? *b.element : b.global_id));
    if (b.element && model.find_door(*b.element)) spaces_by_door[*b.element].push_back(b.space);
  }
  for (const auto& [door, spaces] : spaces_by_door) {
    for (const auto& a : spaces) {
      add(instance_iri(door), vocab::connects_to(), instance_iri(a));
      for (const auto& b : spaces) {
        if (a != b) add(instance_iri(a), vocab::connects_to(), instance_iri(b));
      }
    }
  }
  return store;
}

TripleStore classify_site(const gis::SiteModel& site) {
  TripleStore store = classify_model(site.building);
  for (const auto& o : site.obstacles) {
    Iri s = instance_iri(o.id);
    store.assert_triple({s, vocab::type(), iri(Prefix::Birs, gis::to_string(o.category))});
    store.assert_triple({s, vocab::has_centroid(), Literal::point(o.polygon.centroid())});
  }
  return store;
}

}  // namespace birs::ontology
