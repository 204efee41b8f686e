#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/ontology.hpp"
#include "birs/textfmt.hpp"

namespace birs::ontology {

namespace {

std::optional<Term> resolve(const PatternTerm& t, const Binding& b) {
  if (const auto* v = std::get_if<Variable>(&t)) {
    auto it = b.find(v->name);
    if (it == b.end()) return std::nullopt;
    return it->second;
  }
  if (const auto* i = std::get_if<Iri>(&t)) return Term{*i};
  return Term{std::get<Literal>(t)};
}

// Binds `t` to `value`; false on conflict with a literal/IRI constant.
bool unify(const PatternTerm& t, const Term& value, Binding& b) {
  if (const auto* v = std::get_if<Variable>(&t)) {
    auto [it, inserted] = b.emplace(v->name, value);
    return inserted || it->second == value;
  }
  return resolve(t, b) == value;
}

void extend(const TripleStore& store, const TriplePattern& pat, const Binding& in, std::vector<Binding>& out) {
  auto s = resolve(pat.subject, in);
  auto p = resolve(pat.predicate, in);
  auto o = resolve(pat.object, in);
  if (s && !std::holds_alternative<Iri>(*s)) return;
  if (p && !std::holds_alternative<Iri>(*p)) return;

  std::optional<Iri> si = s ? std::optional<Iri>(std::get<Iri>(*s)) : std::nullopt;
  std::optional<Iri> pi = p ? std::optional<Iri>(std::get<Iri>(*p)) : std::nullopt;

  if (pi && *pi == vocab::type() && o && std::holds_alternative<Iri>(*o)) {
    const Iri& cls = std::get<Iri>(*o);
    if (!store.is_class(cls)) return;
    for (const auto& inst : store.instances_of(cls, true)) {
      if (si && *si != inst) continue;
      Binding b = in;
      if (unify(pat.subject, Term{inst}, b)) out.push_back(std::move(b));
    }
    return;
  }

  for (const auto& t : store.match(si, pi, o)) {
    Binding b = in;
    if (unify(pat.subject, Term{t.subject}, b) && unify(pat.predicate, Term{t.predicate}, b) &&
        unify(pat.object, t.object, b)) {
      out.push_back(std::move(b));
    }
  }
}

std::vector<std::string> sort_key(const Binding& b) {
  std::vector<std::string> key;
  key.reserve(b.size());
  for (const auto& [name, value] : b) key.push_back(term_text(value));
  return key;
}

}  // namespace

std::vector<Binding> query(const TripleStore& store, const std::vector<TriplePattern>& patterns) {
  for (const auto& pat : patterns) {
    if (const auto* p = std::get_if<Iri>(&pat.predicate); p && !vocab::predicates().contains(*p)) {
      throw Error("UnknownPredicate", fmt::format("'{}' is not in the vocabulary", p->str()));
    }
    if (std::holds_alternative<Literal>(pat.predicate)) {
      throw Error("UnknownPredicate", "a literal cannot be a predicate");
    }
  }

  std::vector<Binding> rows{Binding{}};
  for (const auto& pat : patterns) {
    std::vector<Binding> next;
    for (const auto& row : rows) extend(store, pat, row, next);
    rows = std::move(next);
    if (rows.empty()) break;
  }
  if (patterns.empty()) rows.clear();

  std::sort(rows.begin(), rows.end(), [](const Binding& a, const Binding& b) { return sort_key(a) < sort_key(b); });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

namespace {

struct QueryToken {
  enum Kind { Word, Quoted, Sep } kind;
  std::string text;
};

std::vector<QueryToken> lex_query(std::string_view s) {
  std::vector<QueryToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '{' || c == '}') {
      ++i;
    } else if (c == ';') {
      out.push_back({QueryToken::Sep, ";"});
      ++i;
    } else if (c == '"') {
      std::size_t consumed = 0;
      std::string text;
      try {
        text = text::unquote(s.substr(i), consumed);
      } catch (const Error& e) {
        throw Error("QuerySyntax", fmt::format("at offset {}: {}", i, e.what()));
      }
      out.push_back({QueryToken::Quoted, std::move(text)});
      i += consumed;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::strchr(" \t\r\n;{}\"", s[j])) ++j;
      std::string word(s.substr(i, j - i));
      i = j;
      // A trailing '.' closes the pattern ("?s type Space.").
      bool sep = false;
      if (word.size() > 1 && word.back() == '.') {
        word.pop_back();
        sep = true;
      }
      if (word == ".") {
        out.push_back({QueryToken::Sep, "."});
        continue;
      }
      out.push_back({QueryToken::Word, std::move(word)});
      if (sep) out.push_back({QueryToken::Sep, "."});
    }
  }
  return out;
}

std::optional<double> as_number(const std::string& w) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

PatternTerm resolve_word(const TripleStore& store, const std::string& w, bool predicate_position) {
  if (w.size() > 1 && w.front() == '?') return Variable{w.substr(1)};
  if (w == "?") throw Error("QuerySyntax", "variable without a name");
  if (w == "a" || w == "type") return vocab::type();
  if (w == "subClassOf") return vocab::sub_class_of();
  if (w.find(':') != std::string::npos) {
    try {
      return Iri::parse(w);
    } catch (const Error& e) {
      throw Error("QuerySyntax", e.what());
    }
  }
  if (predicate_position) {
    for (const auto& p : vocab::predicates()) {
      if (p.local == w) return p;
    }
    throw Error("UnknownPredicate", fmt::format("'{}' is not in the vocabulary", w));
  }
  if (w == "true") return Literal::boolean(true);
  if (w == "false") return Literal::boolean(false);
  if (auto v = as_number(w)) return Literal::number(*v);

  std::vector<Iri> hits;
  for (const auto& c : store.classes()) {
    if (c.local == w) hits.push_back(c);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.size() > 1) throw Error("QuerySyntax", fmt::format("'{}' is ambiguous; add a prefix", w));
  throw Error("QuerySyntax", fmt::format("unknown name '{}'", w));
}

}  // namespace

std::vector<TriplePattern> parse_query(const TripleStore& store, std::string_view text) {
  std::vector<TriplePattern> out;
  std::vector<PatternTerm> cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (cur.size() != 3) {
      throw Error("QuerySyntax", fmt::format("pattern {} has {} terms, expected 3", out.size() + 1, cur.size()));
    }
    out.push_back({cur[0], cur[1], cur[2]});
    cur.clear();
  };
  for (auto& tok : lex_query(text)) {
    if (tok.kind == QueryToken::Sep) {
      flush();
    } else if (tok.kind == QueryToken::Quoted) {
      if (cur.size() != 2) throw Error("QuerySyntax", "quoted text is only allowed in object position");
      cur.push_back(Literal::text(tok.text));
    } else {
      if (cur.size() == 3) throw Error("QuerySyntax", "missing ';' between patterns");
      cur.push_back(resolve_word(store, tok.text, cur.size() == 1));
    }
  }
  flush();
  if (out.empty()) throw Error("QuerySyntax", "empty query");
  return out;
}

}  // namespace birs::ontology
