#pragma once

// ISO 10303-21 (STEP Physical File) reading for IFC models.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace birs::step {

using EntityId = std::uint64_t;

enum class TokenKind {
  Keyword,
  EntityRef,
  Integer,
  Real,
  String,
  Enum,
  ListOpen,
  ListClose,
  Comma,
  Semicolon,
  Dollar,
  Star,
  Eq,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  // Decoded text: string tokens hold their content with '' collapsed to ',
  // everything else holds the source slice.
  std::string lexeme;
  std::size_t offset = 0;
  // Length of the raw source slice (quotes and escapes included).
  std::size_t length = 0;
};

// Pull-style lexer. Whitespace and /* */ comments are skipped.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Returns nullopt at end of input. Throws UnterminatedString,
  // IllegalCharacter or SyntaxError (unterminated comment).
  std::optional<Token> next();
  std::size_t offset() const { return pos_; }

 private:
  void skip_blank();

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<Token> tokenize(std::string_view text);

struct Unset {
  friend bool operator==(Unset, Unset) { return true; }
};
struct Inherited {
  friend bool operator==(Inherited, Inherited) { return true; }
};
struct EnumName {
  std::string name;  // without the dots
  friend bool operator==(const EnumName&, const EnumName&) = default;
};
struct Ref {
  EntityId id = 0;
  friend bool operator==(Ref, Ref) = default;
};

class Value;
using List = std::vector<Value>;

// KEYWORD(value...), e.g. IFCLENGTHMEASURE(0.3048).
struct Typed {
  std::string keyword;
  List args;
  friend bool operator==(const Typed&, const Typed&);
};

class Value {
 public:
  using Storage = std::variant<Unset, Inherited, std::int64_t, double, std::string, EnumName, Ref, Typed, List>;

  Value() = default;
  Value(Storage s) : v_(std::move(s)) {}  // NOLINT(google-explicit-constructor)

  const Storage& storage() const { return v_; }

  bool is_unset() const { return std::holds_alternative<Unset>(v_); }
  bool is_inherited() const { return std::holds_alternative<Inherited>(v_); }
  bool is_ref() const { return std::holds_alternative<Ref>(v_); }
  bool is_list() const { return std::holds_alternative<List>(v_); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(v_) || std::holds_alternative<double>(v_);
  }

  // Accessors throw Error("TypeMismatch") on the wrong alternative.
  std::int64_t as_int() const;
  double as_real() const;  // integers widen; typed values unwrap one level
  const std::string& as_text() const;
  const std::string& as_enum() const;
  EntityId as_ref() const;
  const List& as_list() const;
  const Typed& as_typed() const;

  std::optional<EntityId> ref_or_null() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }

 private:
  Storage v_ = Unset{};
};

struct Entity {
  EntityId id = 0;
  std::string type;  // upper-case keyword
  List args;

  // Throws Error("MissingAttribute") when the record has fewer arguments.
  const Value& arg(std::size_t i) const;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct HeaderRecord {
  std::string keyword;
  List args;
  friend bool operator==(const HeaderRecord&, const HeaderRecord&) = default;
};

struct Header {
  std::vector<HeaderRecord> records;

  const HeaderRecord* find(std::string_view keyword) const;
  // Canonical argument text of FILE_DESCRIPTION / FILE_NAME / FILE_SCHEMA,
  // empty when absent.
  std::string file_description() const;
  std::string file_name() const;
  std::string file_schema() const;
  // Schema identifiers listed in FILE_SCHEMA, e.g. {"IFC2X3"}.
  std::vector<std::string> schemas() const;

  friend bool operator==(const Header&, const Header&) = default;
};

struct DanglingRef {
  EntityId from = 0;
  EntityId to = 0;
  friend bool operator==(const DanglingRef&, const DanglingRef&) = default;
};

// Immutable after construction; all lookups are const.
class EntityGraph {
 public:
  EntityGraph() = default;

  // Throws DuplicateEntityId.
  static EntityGraph build(Header header, std::vector<Entity> entities);

  const Header& header() const { return header_; }
  const std::map<EntityId, Entity>& entities() const { return entities_; }
  const std::map<std::string, std::vector<EntityId>, std::less<>>& type_index() const { return type_index_; }
  std::size_t size() const { return entities_.size(); }

  const Entity* find(EntityId id) const;
  // Throws DanglingReference.
  const Entity& resolve(EntityId id) const;
  // Ascending ids; empty when the type is absent.
  std::span<const EntityId> entities_of_type(std::string_view type_name) const;

  // References to ids that are not in the graph, recorded at build time.
  const std::vector<DanglingRef>& dangling() const { return dangling_; }

  friend bool operator==(const EntityGraph& a, const EntityGraph& b) {
    return a.header_ == b.header_ && a.entities_ == b.entities_;
  }

 private:
  Header header_;
  std::map<EntityId, Entity> entities_;
  std::map<std::string, std::vector<EntityId>, std::less<>> type_index_;
  std::vector<DanglingRef> dangling_;
};

// Throws MissingDataSection, DuplicateEntityId, SyntaxError and lexer errors.
EntityGraph parse_spf(std::string_view text);
EntityGraph read_spf_file(const std::string& path);

// Convenience wrapper over EntityGraph::resolve.
const Entity& resolve_ref(const EntityGraph& graph, EntityId id);
std::span<const EntityId> entities_of_type(const EntityGraph& graph, std::string_view type_name);

// Types the building extractor interprets; everything else is retained but
// not interpreted.
const std::set<std::string, std::less<>>& ifc_subset();

// Canonical text of a single value, e.g. (1.,$,#4,'it''s').
std::string format_value(const Value& v);
// Sorted ids, one record per line, no optional whitespace.
std::string write_canonical(const EntityGraph& graph);

// Shortest round-trip real in STEP syntax (always has a '.', upper-case E).
std::string format_real(double v);

}  // namespace birs::step
