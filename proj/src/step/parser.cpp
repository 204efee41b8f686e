#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/step.hpp"

namespace birs::step {

bool operator==(const Typed& a, const Typed& b) { return a.keyword == b.keyword && a.args == b.args; }

namespace {

[[noreturn]] void mismatch(std::string_view want) {
  throw Error("TypeMismatch", fmt::format("STEP value is not {}", want));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  EntityGraph parse() {
    expect_keyword("ISO-10303-21");
    expect(TokenKind::Semicolon);

    Header header;
    expect_keyword("HEADER");
    expect(TokenKind::Semicolon);
    while (!at_keyword("ENDSEC")) {
      HeaderRecord rec;
      rec.keyword = expect(TokenKind::Keyword).lexeme;
      rec.args = parse_arguments();
      expect(TokenKind::Semicolon);
      header.records.push_back(std::move(rec));
    }
    expect_keyword("ENDSEC");
    expect(TokenKind::Semicolon);

    std::vector<Entity> entities;
    bool saw_data = false;
    while (at_keyword("DATA")) {
      saw_data = true;
      advance();
      if (at(TokenKind::ListOpen)) parse_arguments();  // named data section parameters
      expect(TokenKind::Semicolon);
      while (!at_keyword("ENDSEC")) entities.push_back(parse_entity());
      expect_keyword("ENDSEC");
      expect(TokenKind::Semicolon);
    }
    if (!saw_data) {
      if (at_end() || at_keyword("END-ISO-10303-21")) throw Error("MissingDataSection", "file has no DATA section");
      fail("DATA");
    }
    expect_keyword("END-ISO-10303-21");
    expect(TokenKind::Semicolon);
    return EntityGraph::build(std::move(header), std::move(entities));
  }

 private:
  void advance() { cur_ = lexer_.next(); }
  bool at_end() const { return !cur_.has_value(); }
  bool at(TokenKind k) const { return cur_ && cur_->kind == k; }
  bool at_keyword(std::string_view kw) const { return at(TokenKind::Keyword) && cur_->lexeme == kw; }

  [[noreturn]] void fail(std::string_view expected) const {
    std::size_t off = cur_ ? cur_->offset : lexer_.offset();
    std::string got = cur_ ? fmt::format("{} '{}'", to_string(cur_->kind), cur_->lexeme) : "end of input";
    throw Error("SyntaxError", fmt::format("offset {}: expected {}, got {}", off, expected, got));
  }

  Token expect(TokenKind k) {
    if (!at(k)) fail(to_string(k));
    Token t = std::move(*cur_);
    advance();
    return t;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail(kw);
    advance();
  }

  Entity parse_entity() {
    if (!at(TokenKind::EntityRef)) fail("entity instance '#id='");
    Entity e;
    e.id = parse_id(*cur_);
    advance();
    expect(TokenKind::Eq);
    if (at(TokenKind::ListOpen)) fail("simple entity instance (complex instances are not supported)");
    e.type = expect(TokenKind::Keyword).lexeme;
    e.args = parse_arguments();
    expect(TokenKind::Semicolon);
    return e;
  }

  static EntityId parse_id(const Token& t) {
    EntityId id = 0;
    auto sv = std::string_view(t.lexeme).substr(1);
    auto res = std::from_chars(sv.data(), sv.data() + sv.size(), id);
    if (res.ec != std::errc() || id == 0) {
      throw Error("SyntaxError", fmt::format("offset {}: bad entity id '{}'", t.offset, t.lexeme));
    }
    return id;
  }

  // '(' [value {',' value}] ')'
  List parse_arguments() {
    expect(TokenKind::ListOpen);
    List out;
    if (at(TokenKind::ListClose)) {
      advance();
      return out;
    }
    while (true) {
      out.push_back(parse_value());
      if (at(TokenKind::Comma)) {
        advance();
        continue;
      }
      expect(TokenKind::ListClose);
      return out;
    }
  }

  Value parse_value() {
    if (at_end()) fail("value");
    const Token& t = *cur_;
    switch (t.kind) {
      case TokenKind::Dollar: advance(); return Value(Unset{});
      case TokenKind::Star: advance(); return Value(Inherited{});
      case TokenKind::EntityRef: {
        EntityId id = parse_id(t);
        advance();
        return Value(Ref{id});
      }
      case TokenKind::Integer: {
        std::int64_t v = 0;
        std::string_view sv = t.lexeme;
        if (sv.front() == '+') sv.remove_prefix(1);
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec != std::errc()) throw Error("SyntaxError", fmt::format("offset {}: integer out of range", t.offset));
        advance();
        return Value(v);
      }
      case TokenKind::Real: {
        double v = 0;
        std::string_view sv = t.lexeme;
        if (sv.front() == '+') sv.remove_prefix(1);
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) {
          throw Error("SyntaxError", fmt::format("offset {}: malformed real '{}'", t.offset, t.lexeme));
        }
        advance();
        return Value(v);
      }
      case TokenKind::String: {
        std::string s = t.lexeme;
        advance();
        return Value(std::move(s));
      }
      case TokenKind::Enum: {
        std::string name = t.lexeme.substr(1, t.lexeme.size() - 2);
        advance();
        return Value(EnumName{std::move(name)});
      }
      case TokenKind::ListOpen: return Value(parse_arguments());
      case TokenKind::Keyword: {
        Typed typed;
        typed.keyword = t.lexeme;
        advance();
        typed.args = parse_arguments();
        return Value(std::move(typed));
      }
      default: fail("value");
    }
  }

  Lexer lexer_;
  std::optional<Token> cur_;
};

void collect_refs(const Value& v, std::vector<EntityId>& out) {
  const auto& s = v.storage();
  if (const auto* r = std::get_if<Ref>(&s)) {
    out.push_back(r->id);
  } else if (const auto* l = std::get_if<List>(&s)) {
    for (const auto& x : *l) collect_refs(x, out);
  } else if (const auto* t = std::get_if<Typed>(&s)) {
    for (const auto& x : t->args) collect_refs(x, out);
  }
}

}  // namespace

std::int64_t Value::as_int() const {
  if (const auto* v = std::get_if<std::int64_t>(&v_)) return *v;
  if (const auto* t = std::get_if<Typed>(&v_); t && t->args.size() == 1) return t->args[0].as_int();
  mismatch("an integer");
}

double Value::as_real() const {
  if (const auto* v = std::get_if<double>(&v_)) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&v_)) return static_cast<double>(*v);
  if (const auto* t = std::get_if<Typed>(&v_); t && t->args.size() == 1) return t->args[0].as_real();
  mismatch("a number");
}

const std::string& Value::as_text() const {
  if (const auto* v = std::get_if<std::string>(&v_)) return *v;
  if (const auto* t = std::get_if<Typed>(&v_); t && t->args.size() == 1) return t->args[0].as_text();
  mismatch("a string");
}

const std::string& Value::as_enum() const {
  if (const auto* v = std::get_if<EnumName>(&v_)) return v->name;
  mismatch("an enumeration");
}

EntityId Value::as_ref() const {
  if (const auto* v = std::get_if<Ref>(&v_)) return v->id;
  mismatch("an entity reference");
}

const List& Value::as_list() const {
  if (const auto* v = std::get_if<List>(&v_)) return *v;
  mismatch("a list");
}

const Typed& Value::as_typed() const {
  if (const auto* v = std::get_if<Typed>(&v_)) return *v;
  mismatch("a typed value");
}

std::optional<EntityId> Value::ref_or_null() const {
  if (const auto* v = std::get_if<Ref>(&v_)) return v->id;
  return std::nullopt;
}

const Value& Entity::arg(std::size_t i) const {
  if (i >= args.size()) {
    throw Error("MissingAttribute", fmt::format("#{}={} has no attribute {}", id, type, i));
  }
  return args[i];
}

const HeaderRecord* Header::find(std::string_view keyword) const {
  for (const auto& r : records) {
    if (r.keyword == keyword) return &r;
  }
  return nullptr;
}

namespace {
std::string header_text(const Header& h, std::string_view kw) {
  const HeaderRecord* r = h.find(kw);
  return r ? format_value(Value(r->args)) : std::string();
}
}  // namespace

std::string Header::file_description() const { return header_text(*this, "FILE_DESCRIPTION"); }
std::string Header::file_name() const { return header_text(*this, "FILE_NAME"); }
std::string Header::file_schema() const { return header_text(*this, "FILE_SCHEMA"); }

std::vector<std::string> Header::schemas() const {
  std::vector<std::string> out;
  const HeaderRecord* r = find("FILE_SCHEMA");
  if (!r || r->args.empty() || !r->args[0].is_list()) return out;
  for (const auto& v : r->args[0].as_list()) {
    if (const auto* s = std::get_if<std::string>(&v.storage())) out.push_back(*s);
  }
  return out;
}

EntityGraph EntityGraph::build(Header header, std::vector<Entity> entities) {
  EntityGraph g;
  g.header_ = std::move(header);
  for (auto& e : entities) {
    EntityId id = e.id;
    auto [it, inserted] = g.entities_.emplace(id, std::move(e));
    if (!inserted) throw Error("DuplicateEntityId", fmt::format("entity #{} is defined twice", id));
  }
  std::vector<EntityId> refs;
  for (const auto& [id, e] : g.entities_) {
    g.type_index_[e.type].push_back(id);  // map iteration keeps buckets sorted
    refs.clear();
    for (const auto& a : e.args) collect_refs(a, refs);
    for (EntityId r : refs) {
      if (!g.entities_.contains(r)) g.dangling_.push_back({id, r});
    }
  }
  return g;
}

const Entity* EntityGraph::find(EntityId id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity& EntityGraph::resolve(EntityId id) const {
  if (const Entity* e = find(id)) return *e;
  throw Error("DanglingReference", fmt::format("#{} is not defined", id));
}

std::span<const EntityId> EntityGraph::entities_of_type(std::string_view type_name) const {
  auto it = type_index_.find(type_name);
  if (it == type_index_.end()) return {};
  return it->second;
}

EntityGraph parse_spf(std::string_view text) { return Parser(text).parse(); }

EntityGraph read_spf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spf(ss.str());
}

const Entity& resolve_ref(const EntityGraph& graph, EntityId id) { return graph.resolve(id); }

std::span<const EntityId> entities_of_type(const EntityGraph& graph, std::string_view type_name) {
  return graph.entities_of_type(type_name);
}

const std::set<std::string, std::less<>>& ifc_subset() {
  static const std::set<std::string, std::less<>> kSubset = {
      "IFCPROJECT", "IFCSITE", "IFCBUILDING", "IFCBUILDINGSTOREY", "IFCSPACE",
      "IFCWALL", "IFCWALLSTANDARDCASE", "IFCCURTAINWALL", "IFCCOLUMN", "IFCCOLUMNSTANDARDCASE",
      "IFCDOOR", "IFCDOORSTANDARDCASE", "IFCRAILING", "IFCSTAIR", "IFCVIRTUALELEMENT",
      "IFCLOCALPLACEMENT", "IFCAXIS2PLACEMENT3D", "IFCAXIS2PLACEMENT2D", "IFCCARTESIANPOINT", "IFCDIRECTION",
      "IFCPRODUCTDEFINITIONSHAPE", "IFCSHAPEREPRESENTATION", "IFCEXTRUDEDAREASOLID",
      "IFCRECTANGLEPROFILEDEF", "IFCARBITRARYCLOSEDPROFILEDEF", "IFCPOLYLINE",
      "IFCRELSPACEBOUNDARY", "IFCRELASSOCIATESMATERIAL", "IFCMATERIAL", "IFCMATERIALLIST",
      "IFCMATERIALLAYER", "IFCMATERIALLAYERSET", "IFCMATERIALLAYERSETUSAGE",
      "IFCRELCONTAINEDINSPATIALSTRUCTURE", "IFCRELAGGREGATES", "IFCRELVOIDSELEMENT", "IFCRELFILLSELEMENT",
      "IFCOPENINGELEMENT", "IFCUNITASSIGNMENT", "IFCSIUNIT", "IFCCONVERSIONBASEDUNIT", "IFCMEASUREWITHUNIT",
      "IFCCONNECTIONSURFACEGEOMETRY",
  };
  return kSubset;
}

}  // namespace birs::step
