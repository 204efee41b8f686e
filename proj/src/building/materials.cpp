#include <fnmatch.h>

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "birs/building.hpp"
#include "birs/error.hpp"
#include "birs/textfmt.hpp"

namespace birs::building {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::vector<std::string_view> lines_of(std::string_view doc) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= doc.size()) {
    auto end = doc.find('\n', start);
    if (end == std::string_view::npos) end = doc.size();
    out.push_back(doc.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  // '#' inside a quoted name is not a comment.
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_tags(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    auto t = text::trim(s.substr(start, end - start));
    if (!t.empty()) out.emplace_back(t);
    start = end + 1;
  }
  return out;
}

}  // namespace

VisibilityTable VisibilityTable::defaults() {
  VisibilityTable t;
  t.rules_.push_back({"Glass*", false});
  return t;
}

VisibilityTable VisibilityTable::parse(std::string_view document) {
  VisibilityTable t;
  int lineno = 0;
  for (auto raw : lines_of(document)) {
    ++lineno;
    auto line = text::trim(strip_comment(raw));
    if (line.empty()) continue;
    auto eq = line.rfind('=');
    if (eq == std::string_view::npos) {
      throw Error("BadVisibilityRule", fmt::format("line {}: expected 'pattern = true|false'", lineno));
    }
    auto pattern = text::trim(line.substr(0, eq));
    auto value = text::trim(line.substr(eq + 1));
    if (pattern.empty()) throw Error("BadVisibilityRule", fmt::format("line {}: empty pattern", lineno));
    bool visible;
    if (value == "true") {
      visible = true;
    } else if (value == "false") {
      visible = false;
    } else {
      throw Error("BadVisibilityRule", fmt::format("line {}: value must be true or false", lineno));
    }
    t.rules_.push_back({std::string(pattern), visible});
  }
  return t;
}

bool VisibilityTable::visible(std::string_view material_name) const {
  std::string name(material_name);
  for (const auto& r : rules_) {
    if (fnmatch(r.pattern.c_str(), name.c_str(), FNM_CASEFOLD) == 0) return r.visible;
  }
  return true;
}

namespace {

std::optional<std::string> material_name(const EntityGraph& g, EntityId id, int depth = 0) {
  if (depth > 8) return std::nullopt;
  const auto* e = g.find(id);
  if (!e) return std::nullopt;
  if (e->type == "IFCMATERIAL") return e->arg(0).as_text();
  if (e->type == "IFCMATERIALLAYER") {
    if (auto m = e->arg(0).ref_or_null()) return material_name(g, *m, depth + 1);
    return std::nullopt;
  }
  if (e->type == "IFCMATERIALLAYERSET" || e->type == "IFCMATERIALLIST") {
    for (const auto& v : e->arg(0).as_list()) {
      if (auto r = v.ref_or_null()) {
        if (auto n = material_name(g, *r, depth + 1)) return n;
      }
    }
    return std::nullopt;
  }
  if (e->type == "IFCMATERIALLAYERSETUSAGE") {
    if (auto r = e->arg(0).ref_or_null()) return material_name(g, *r, depth + 1);
  }
  return std::nullopt;
}

}  // namespace

MaterialInfo material_of(const EntityGraph& graph, EntityId product_id, const VisibilityTable& table) {
  for (EntityId rel_id : graph.entities_of_type("IFCRELASSOCIATESMATERIAL")) {
    const auto& rel = graph.resolve(rel_id);
    if (rel.args.size() < 6 || !rel.args[4].is_list()) continue;
    const auto& related = rel.args[4].as_list();
    bool hit = std::any_of(related.begin(), related.end(),
                           [&](const step::Value& v) { return v.ref_or_null() == product_id; });
    if (!hit) continue;
    if (auto m = rel.args[5].ref_or_null()) {
      if (auto name = material_name(graph, *m)) return {*name, table.visible(*name)};
    }
  }
  return {"UNKNOWN", true};
}

FunctionTagger FunctionTagger::defaults() {
  FunctionTagger t;
  // Order matters only for tag order; every matching rule contributes.
  t.keywords_ = {
      {"ENTREPRENEUR", {"contractor_office", "office"}},
      {"CONTRACTOR", {"contractor_office", "office"}},
      {"BUREAU", {"office"}},
      {"OFFICE", {"office"}},
      {"CORRIDOR", {"corridor"}},
      {"HALL", {"hall"}},
      {"VESTIBULE", {"vestibule"}},
      {"W.C.", {"restroom"}},
      {"ESPACE", {"open_space"}},
      {"ESCALIER", {"stair"}},
  };
  return t;
}

void FunctionTagger::load_overrides(std::string_view document) {
  int lineno = 0;
  for (auto raw : lines_of(document)) {
    ++lineno;
    auto line = text::trim(strip_comment(raw));
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string_view::npos) {
      throw Error("BadFunctionTagRule", fmt::format("line {}: expected 'keyword|space \"...\" = tags'", lineno));
    }
    auto kind = line.substr(0, sp);
    auto rest = text::trim(line.substr(sp + 1));
    std::string subject;
    std::size_t consumed = 0;
    try {
      subject = text::unquote(rest, consumed);
    } catch (const Error&) {
      throw Error("BadFunctionTagRule", fmt::format("line {}: subject must be double-quoted", lineno));
    }
    auto tail = text::trim(rest.substr(consumed));
    if (tail.empty() || tail.front() != '=') {
      throw Error("BadFunctionTagRule", fmt::format("line {}: missing '='", lineno));
    }
    auto tags = split_tags(tail.substr(1));
    if (kind == "keyword") {
      keywords_.push_back({subject, std::move(tags)});
    } else if (kind == "space") {
      overrides_[subject] = std::move(tags);
    } else {
      throw Error("BadFunctionTagRule", fmt::format("line {}: unknown rule kind '{}'", lineno, kind));
    }
  }
}

std::vector<std::string> FunctionTagger::tags_for(std::string_view global_id, std::string_view long_name) const {
  if (auto it = overrides_.find(global_id); it != overrides_.end()) return it->second;
  if (auto it = overrides_.find(long_name); it != overrides_.end()) return it->second;
  std::vector<std::string> out;
  const std::string name = upper(long_name);
  for (const auto& rule : keywords_) {
    if (name.find(upper(rule.keyword)) == std::string::npos) continue;
    for (const auto& t : rule.tags) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  return out;
}

}  // namespace birs::building
