#include "birs/textfmt.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "birs/error.hpp"

namespace birs::text {

std::string decimal(double v) {
  if (v == 0.0) return "0";
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::string decimal_point(double v) {
  std::string s = decimal(v);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string fixed(double v, int digits) {
  std::string s = fmt::format("{:.{}f}", v, digits);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string quoted(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string unquote(std::string_view s, std::size_t& consumed) {
  if (s.empty() || s.front() != '"') throw Error("SyntaxError", "expected '\"'");
  std::string out;
  for (std::size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') {
      consumed = i + 1;
      return out;
    }
    if (c == '\\') {
      if (++i >= s.size()) break;
      switch (s[i]) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: throw Error("SyntaxError", fmt::format("bad escape '\\{}'", s[i]));
      }
    } else {
      out += c;
    }
  }
  throw Error("SyntaxError", "unterminated quoted string");
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace birs::text
