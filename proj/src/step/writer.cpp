#include <charconv>

#include <fmt/format.h>

#include "birs/step.hpp"

namespace birs::step {

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  auto e = s.find('e');
  std::string mantissa = e == std::string::npos ? s : s.substr(0, e);
  std::string exponent = e == std::string::npos ? std::string() : "E" + s.substr(e + 1);
  if (mantissa.find('.') == std::string::npos) mantissa += '.';
  return mantissa + exponent;
}

namespace {

void write_string(std::string& out, const std::string& s) {
  out += '\'';
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
}

void write_value(std::string& out, const Value& v);

void write_list(std::string& out, const List& l) {
  out += '(';
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ',';
    write_value(out, l[i]);
  }
  out += ')';
}

void write_value(std::string& out, const Value& v) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Unset>) {
          out += '$';
        } else if constexpr (std::is_same_v<T, Inherited>) {
          out += '*';
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          out += format_real(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          write_string(out, x);
        } else if constexpr (std::is_same_v<T, EnumName>) {
          out += '.';
          out += x.name;
          out += '.';
        } else if constexpr (std::is_same_v<T, Ref>) {
          out += '#';
          out += std::to_string(x.id);
        } else if constexpr (std::is_same_v<T, Typed>) {
          out += x.keyword;
          write_list(out, x.args);
        } else {
          write_list(out, x);
        }
      },
      v.storage());
}

}  // namespace

std::string format_value(const Value& v) {
  std::string out;
  write_value(out, v);
  return out;
}

std::string write_canonical(const EntityGraph& graph) {
  std::string out = "ISO-10303-21;\nHEADER;\n";
  for (const auto& rec : graph.header().records) {
    out += rec.keyword;
    write_list(out, rec.args);
    out += ";\n";
  }
  out += "ENDSEC;\nDATA;\n";
  for (const auto& [id, e] : graph.entities()) {
    out += '#';
    out += std::to_string(id);
    out += '=';
    out += e.type;
    write_list(out, e.args);
    out += ";\n";
  }
  out += "ENDSEC;\nEND-ISO-10303-21;\n";
  return out;
}

}  // namespace birs::step
