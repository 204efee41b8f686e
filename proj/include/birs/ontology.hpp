#pragma once

// Triple store housing the robot-navigation taxonomy (SUMO -> CORA/CORAX ->
// MDR -> BIRS) and the classified building instances.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "birs/geometry.hpp"

namespace birs::building {
struct BuildingModel;
}
namespace birs::gis {
struct SiteModel;
}

namespace birs::ontology {

enum class Prefix { Rdf, Rdfs, Sumo, Cora, Corax, Mdr, Birs, Ifc, Inst };

std::string_view to_string(Prefix p);
std::optional<Prefix> prefix_from_string(std::string_view s);

struct Iri {
  Prefix prefix = Prefix::Inst;
  std::string local;

  // "prefix:local". Throws InvalidIri for an unknown prefix or an empty or
  // non-token local name.
  static Iri parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::strong_ordering operator<=>(const Iri& a, const Iri& b);
};

Iri iri(Prefix p, std::string_view local);

struct Literal {
  enum class Kind { Text, Number, Boolean, Point };

  Kind kind = Kind::Text;
  // Canonical lexical form: the text itself, a shortest decimal, "true" /
  // "false", or "x y".
  std::string lexical;

  static Literal text(std::string_view s);
  static Literal number(double v);
  static Literal boolean(bool b);
  static Literal point(Point2 p);

  double as_number() const;
  bool as_boolean() const;
  Point2 as_point() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Term = std::variant<Iri, Literal>;

// Text used for ordering bindings and for display.
std::string term_text(const Term& t);

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b);
};

namespace vocab {
Iri type();
Iri sub_class_of();
Iri has_material();
Iri bounded_by();
Iri has_centroid();
Iri located_on_storey();
Iri connects_to();
Iri sensor_visible();
Iri long_name();
Iri has_function();
Iri width();
Iri height();
Iri has_host();
// The closed predicate vocabulary.
const std::set<Iri>& predicates();
}  // namespace vocab

// Subclass edges shipped with every store, in definition order.
const std::vector<std::pair<Iri, Iri>>& builtin_subclass_edges();
// The SUMO/CORA/CORAX/MDR/BIRS core of the above, without the IFC element
// and GIS obstacle leaves.
std::vector<std::pair<Iri, Iri>> core_subclass_edges();

class TripleStore {
 public:
  // Store holding only the builtin taxonomy.
  TripleStore();

  // Idempotent. Throws UnknownPredicate, InvalidTriple (class-valued
  // predicate with a literal object), CycleIntroduced, TaxonomyMutation (new
  // superclass for a builtin class).
  void assert_triple(const Triple& t);
  // Throws TaxonomyMutation for builtin edges; absent triples are ignored.
  void retract(const Triple& t);

  bool contains(const Triple& t) const { return triples_.contains(t); }
  std::size_t size() const { return triples_.size(); }
  const std::set<Triple>& triples() const { return triples_; }

  std::vector<Triple> match(const std::optional<Iri>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  bool is_class(const Iri& c) const { return classes_.contains(c); }
  const std::set<Iri>& classes() const { return classes_; }
  // Reflexive-transitive closure. Throws UnknownClass.
  bool is_subclass_of(const Iri& a, const Iri& b) const;
  // `c` and all of its transitive subclasses.
  std::set<Iri> descendants(const Iri& c) const;
  std::set<Iri> ancestors(const Iri& c) const;
  // Throws UnknownClass.
  std::set<Iri> instances_of(const Iri& c, bool inferred) const;
  std::vector<Iri> types_of(const Iri& instance) const;

  // Instances typed under both sides of a disjoint pair, as
  // "instance: A / B" lines. Empty when consistent.
  std::vector<std::string> disjointness_violations() const;

  friend bool operator==(const TripleStore& a, const TripleStore& b) { return a.triples_ == b.triples_; }

 private:
  void index(const Triple& t);

  std::set<Triple> triples_;
  std::map<Iri, std::vector<Triple>> by_subject_;
  std::map<Iri, std::vector<Triple>> by_predicate_;
  std::map<Term, std::vector<Triple>> by_object_;
  std::map<Iri, std::set<Iri>> parents_;
  std::map<Iri, std::set<Iri>> children_;
  std::set<Iri> classes_;
  std::set<Triple> builtin_;
};

TripleStore builtin_taxonomy();
bool is_subclass_of(const TripleStore& store, const Iri& a, const Iri& b);
std::set<Iri> instances_of(const TripleStore& store, const Iri& c, bool inferred);

// Instance IRIs are inst:<GlobalId>.
Iri instance_iri(std::string_view global_id);

TripleStore classify_model(const building::BuildingModel& model);
// classify_model plus one instance per site obstacle under its Topography
// subclass.
TripleStore classify_site(const gis::SiteModel& site);

// --- conjunctive queries ---------------------------------------------------

struct Variable {
  std::string name;  // without '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Variable, Iri, Literal>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
};

using Binding = std::map<std::string, Term>;

// Conjunction of patterns. rdf:type patterns with a bound class match
// instances of every subclass. Results are sorted by the bound values (in
// variable-name order) and deduplicated. Throws UnknownPredicate.
std::vector<Binding> query(const TripleStore& store, const std::vector<TriplePattern>& patterns);

// Parses "?s type Space ; ?s longName \"W.C. HOMMES 2002\"". Terms are
// ?variables, prefix:local IRIs, bare names resolved against the predicate
// vocabulary and the known classes, "quoted text", numbers, true/false, or
// `a` / `type` for rdf:type. Patterns are separated by ';' or '.'. Throws
// QuerySyntax.
std::vector<TriplePattern> parse_query(const TripleStore& store, std::string_view text);

// --- line format -------------------------------------------------------------

// One `subject predicate object .` line per triple, sorted.
std::string write_ntriples(const TripleStore& store);
// Asserts every line into a fresh builtin store. Throws SyntaxError with the
// line number, or the assert_triple errors.
TripleStore read_ntriples(std::string_view text);

}  // namespace birs::ontology
