#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/ontology.hpp"
#include "birs/textfmt.hpp"

namespace birs::ontology {

namespace {

constexpr std::pair<Literal::Kind, std::string_view> kDatatypes[] = {
    {Literal::Kind::Number, "xsd:double"},
    {Literal::Kind::Boolean, "xsd:boolean"},
    {Literal::Kind::Point, "birs:point"},
};

std::string format_term(const Term& t) {
  if (const auto* i = std::get_if<Iri>(&t)) return i->str();
  const auto& lit = std::get<Literal>(t);
  std::string out = text::quoted(lit.lexical);
  for (const auto& [kind, dt] : kDatatypes) {
    if (kind == lit.kind) out += fmt::format("^^{}", dt);
  }
  return out;
}

std::string_view next_word(std::string_view& rest) {
  rest = text::trim(rest);
  auto sp = rest.find_first_of(" \t");
  auto w = rest.substr(0, sp);
  rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp);
  return w;
}

Literal typed_literal(std::string lexical, std::string_view datatype, int lineno) {
  if (datatype.empty()) return Literal::text(lexical);
  for (const auto& [kind, dt] : kDatatypes) {
    if (dt != datatype) continue;
    Literal lit{kind, std::move(lexical)};
    // Re-canonicalize so equal values compare equal.
    try {
      switch (kind) {
        case Literal::Kind::Number: return Literal::number(lit.as_number());
        case Literal::Kind::Boolean:
          if (lit.lexical != "true" && lit.lexical != "false") break;
          return lit;
        case Literal::Kind::Point: return Literal::point(lit.as_point());
        case Literal::Kind::Text: return lit;
      }
    } catch (const Error&) {
    }
    throw Error("SyntaxError", fmt::format("line {}: bad {} literal '{}'", lineno, datatype, lit.lexical));
  }
  throw Error("SyntaxError", fmt::format("line {}: unknown datatype '{}'", lineno, datatype));
}

}  // namespace

std::string write_ntriples(const TripleStore& store) {
  std::string out;
  for (const auto& t : store.triples()) {
    out += fmt::format("{} {} {} .\n", t.subject.str(), t.predicate.str(), format_term(t.object));
  }
  return out;
}

TripleStore read_ntriples(std::string_view text) {
  std::vector<Triple> edges, rest_triples;
  int lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text::trim(text.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](std::string_view what) {
      return Error("SyntaxError", fmt::format("line {}: {}", lineno, what));
    };
    if (line.back() != '.') throw fail("missing terminating ' .'");
    std::string_view rest = text::trim(line.substr(0, line.size() - 1));

    Iri s, p;
    try {
      s = Iri::parse(next_word(rest));
      p = Iri::parse(next_word(rest));
    } catch (const Error& e) {
      throw fail(e.what());
    }
    rest = text::trim(rest);
    Term o;
    if (!rest.empty() && rest.front() == '"') {
      std::size_t consumed = 0;
      std::string lexical;
      try {
        lexical = text::unquote(rest, consumed);
      } catch (const Error& e) {
        throw fail(e.what());
      }
      auto tail = rest.substr(consumed);
      std::string_view datatype;
      if (tail.starts_with("^^")) {
        datatype = tail.substr(2);
      } else if (!tail.empty()) {
        throw fail("unexpected text after literal");
      }
      o = typed_literal(std::move(lexical), datatype, lineno);
    } else {
      auto w = next_word(rest);
      if (!text::trim(rest).empty()) throw fail("unexpected text after object");
      try {
        o = Iri::parse(w);
      } catch (const Error& e) {
        throw fail(e.what());
      }
    }
    (p == vocab::sub_class_of() ? edges : rest_triples).push_back({s, p, o});
  }

  // Subclass edges may arrive before their parent class exists; assert them
  // in rounds until no more can be placed.
  TripleStore store;
  while (!edges.empty()) {
    std::vector<Triple> pending;
    for (auto& t : edges) {
      if (!std::holds_alternative<Iri>(t.object) || store.is_class(std::get<Iri>(t.object))) {
        store.assert_triple(t);
      } else {
        pending.push_back(std::move(t));
      }
    }
    if (pending.size() == edges.size()) store.assert_triple(pending.front());  // throws UnknownClass
    edges = std::move(pending);
  }
  for (const auto& t : rest_triples) store.assert_triple(t);
  return store;
}

}  // namespace birs::ontology
