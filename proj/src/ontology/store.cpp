#include <algorithm>
#include <deque>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/ontology.hpp"

namespace birs::ontology {

namespace {

constexpr std::pair<const char*, const char*> kDisjoint[] = {
    {"sumo:Object", "sumo:Process"},
    {"sumo:Physical", "sumo:Abstract"},
    {"mdr:ContinuousMetricMap", "mdr:DiscreteMetricMap"},
};

// Predicates whose object names a class or an instance, never a literal.
bool iri_valued(const Iri& p) {
  return p == vocab::type() || p == vocab::sub_class_of() || p == vocab::bounded_by() ||
         p == vocab::located_on_storey() || p == vocab::connects_to() || p == vocab::has_host();
}

}  // namespace

TripleStore::TripleStore() {
  for (const auto& [child, parent] : builtin_subclass_edges()) {
    classes_.insert(child);
    classes_.insert(parent);
    Triple t{child, vocab::sub_class_of(), parent};
    builtin_.insert(t);
    triples_.insert(t);
    index(t);
  }
}

void TripleStore::index(const Triple& t) {
  by_subject_[t.subject].push_back(t);
  by_predicate_[t.predicate].push_back(t);
  by_object_[t.object].push_back(t);
  if (t.predicate == vocab::sub_class_of()) {
    const auto& parent = std::get<Iri>(t.object);
    parents_[t.subject].insert(parent);
    children_[parent].insert(t.subject);
  }
}

void TripleStore::assert_triple(const Triple& t) {
  if (!vocab::predicates().contains(t.predicate)) {
    throw Error("UnknownPredicate", fmt::format("'{}' is not in the vocabulary", t.predicate.str()));
  }
  if (iri_valued(t.predicate) && !std::holds_alternative<Iri>(t.object)) {
    throw Error("InvalidTriple", fmt::format("{} needs an IRI object", t.predicate.str()));
  }
  if (triples_.contains(t)) return;

  if (t.predicate == vocab::sub_class_of()) {
    const auto& parent = std::get<Iri>(t.object);
    if (!classes_.contains(parent)) throw Error("UnknownClass", parent.str());
    if (t.subject == parent || (classes_.contains(t.subject) && is_subclass_of(parent, t.subject))) {
      throw Error("CycleIntroduced", fmt::format("{} subClassOf {} closes a cycle", t.subject.str(), parent.str()));
    }
    bool builtin_child = std::any_of(builtin_.begin(), builtin_.end(), [&](const Triple& b) {
      return b.subject == t.subject || std::get<Iri>(b.object) == t.subject;
    });
    if (builtin_child) {
      throw Error("TaxonomyMutation", fmt::format("builtin class {} cannot gain a superclass", t.subject.str()));
    }
    classes_.insert(t.subject);
  } else if (t.predicate == vocab::type()) {
    const auto& cls = std::get<Iri>(t.object);
    if (!classes_.contains(cls)) throw Error("UnknownClass", cls.str());
  }

  triples_.insert(t);
  index(t);
}

void TripleStore::retract(const Triple& t) {
  if (builtin_.contains(t)) {
    throw Error("TaxonomyMutation", fmt::format("builtin edge {} subClassOf {} is immutable", t.subject.str(),
                                                term_text(t.object)));
  }
  if (!triples_.erase(t)) return;
  auto drop = [&](auto& idx, const auto& key) {
    auto it = idx.find(key);
    if (it == idx.end()) return;
    std::erase(it->second, t);
    if (it->second.empty()) idx.erase(it);
  };
  drop(by_subject_, t.subject);
  drop(by_predicate_, t.predicate);
  drop(by_object_, t.object);
  if (t.predicate == vocab::sub_class_of()) {
    const auto& parent = std::get<Iri>(t.object);
    parents_[t.subject].erase(parent);
    children_[parent].erase(t.subject);
    // A user class with no remaining edges is forgotten again.
    if (parents_[t.subject].empty() && children_[t.subject].empty()) classes_.erase(t.subject);
  }
}

std::vector<Triple> TripleStore::match(const std::optional<Iri>& s, const std::optional<Iri>& p,
                                       const std::optional<Term>& o) const {
  const std::vector<Triple>* candidates = nullptr;
  static const std::vector<Triple> empty;
  auto pick = [&](const auto& idx, const auto& key) {
    auto it = idx.find(key);
    const auto* v = it == idx.end() ? &empty : &it->second;
    if (!candidates || v->size() < candidates->size()) candidates = v;
  };
  if (s) pick(by_subject_, *s);
  if (o) pick(by_object_, *o);
  if (p) pick(by_predicate_, *p);

  std::vector<Triple> out;
  auto keep = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (candidates) {
    for (const auto& t : *candidates) {
      if (keep(t)) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
  } else {
    out.assign(triples_.begin(), triples_.end());
  }
  return out;
}

bool TripleStore::is_subclass_of(const Iri& a, const Iri& b) const {
  if (!classes_.contains(a)) throw Error("UnknownClass", a.str());
  if (!classes_.contains(b)) throw Error("UnknownClass", b.str());
  return ancestors(a).contains(b);
}

std::set<Iri> TripleStore::ancestors(const Iri& c) const {
  std::set<Iri> seen{c};
  std::deque<Iri> work{c};
  while (!work.empty()) {
    Iri cur = work.front();
    work.pop_front();
    auto it = parents_.find(cur);
    if (it == parents_.end()) continue;
    for (const auto& p : it->second) {
      if (seen.insert(p).second) work.push_back(p);
    }
  }
  return seen;
}

std::set<Iri> TripleStore::descendants(const Iri& c) const {
  std::set<Iri> seen{c};
  std::deque<Iri> work{c};
  while (!work.empty()) {
    Iri cur = work.front();
    work.pop_front();
    auto it = children_.find(cur);
    if (it == children_.end()) continue;
    for (const auto& ch : it->second) {
      if (seen.insert(ch).second) work.push_back(ch);
    }
  }
  return seen;
}

std::set<Iri> TripleStore::instances_of(const Iri& c, bool inferred) const {
  if (!classes_.contains(c)) throw Error("UnknownClass", c.str());
  std::set<Iri> out;
  auto collect = [&](const Iri& cls) {
    auto it = by_object_.find(Term{cls});
    if (it == by_object_.end()) return;
    for (const auto& t : it->second) {
      if (t.predicate == vocab::type()) out.insert(t.subject);
    }
  };
  if (inferred) {
    for (const auto& d : descendants(c)) collect(d);
  } else {
    collect(c);
  }
  return out;
}

std::vector<Iri> TripleStore::types_of(const Iri& instance) const {
  std::vector<Iri> out;
  auto it = by_subject_.find(instance);
  if (it == by_subject_.end()) return out;
  for (const auto& t : it->second) {
    if (t.predicate == vocab::type()) out.push_back(std::get<Iri>(t.object));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> TripleStore::disjointness_violations() const {
  std::vector<std::string> out;
  for (const auto& [a, b] : kDisjoint) {
    auto ia = instances_of(Iri::parse(a), true);
    auto ib = instances_of(Iri::parse(b), true);
    for (const auto& i : ia) {
      if (ib.contains(i)) out.push_back(fmt::format("{}: {} / {}", i.str(), a, b));
    }
  }
  // A class below both sides is just as inconsistent, even without instances.
  for (const auto& [a, b] : kDisjoint) {
    auto da = descendants(Iri::parse(a));
    for (const auto& c : descendants(Iri::parse(b))) {
      if (da.contains(c)) out.push_back(fmt::format("{}: {} / {}", c.str(), a, b));
    }
  }
  return out;
}

TripleStore builtin_taxonomy() { return TripleStore(); }

bool is_subclass_of(const TripleStore& store, const Iri& a, const Iri& b) { return store.is_subclass_of(a, b); }

std::set<Iri> instances_of(const TripleStore& store, const Iri& c, bool inferred) {
  return store.instances_of(c, inferred);
}

}  // namespace birs::ontology
