#include <cctype>

#include <fmt/format.h>

#include "birs/error.hpp"
#include "birs/step.hpp"

namespace birs::step {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_keyword_char(char c) { return is_upper(c) || is_digit(c) || c == '_'; }

constexpr std::string_view kMagicOpen = "ISO-10303-21";
constexpr std::string_view kMagicClose = "END-ISO-10303-21";

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::EntityRef: return "entity_ref";
    case TokenKind::Integer: return "integer";
    case TokenKind::Real: return "real";
    case TokenKind::String: return "string";
    case TokenKind::Enum: return "enum";
    case TokenKind::ListOpen: return "list_open";
    case TokenKind::ListClose: return "list_close";
    case TokenKind::Comma: return "comma";
    case TokenKind::Semicolon: return "semicolon";
    case TokenKind::Dollar: return "dollar";
    case TokenKind::Star: return "star";
    case TokenKind::Eq: return "eq";
  }
  return "?";
}

void Lexer::skip_blank() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos_;
    } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
      auto end = text_.find("*/", pos_ + 2);
      if (end == std::string_view::npos) {
        throw Error("SyntaxError", fmt::format("unterminated comment at offset {}", pos_));
      }
      pos_ = end + 2;
    } else {
      return;
    }
  }
}

std::optional<Token> Lexer::next() {
  skip_blank();
  if (pos_ >= text_.size()) return std::nullopt;

  const std::size_t start = pos_;
  auto make = [&](TokenKind kind, std::size_t len) {
    pos_ = start + len;
    return Token{kind, std::string(text_.substr(start, len)), start, len};
  };

  const char c = text_[pos_];
  switch (c) {
    case '(': return make(TokenKind::ListOpen, 1);
    case ')': return make(TokenKind::ListClose, 1);
    case ',': return make(TokenKind::Comma, 1);
    case ';': return make(TokenKind::Semicolon, 1);
    case '$': return make(TokenKind::Dollar, 1);
    case '*': return make(TokenKind::Star, 1);
    case '=': return make(TokenKind::Eq, 1);
    default: break;
  }

  if (text_.substr(pos_, kMagicClose.size()) == kMagicClose) return make(TokenKind::Keyword, kMagicClose.size());
  if (text_.substr(pos_, kMagicOpen.size()) == kMagicOpen) return make(TokenKind::Keyword, kMagicOpen.size());

  if (c == '\'') {
    std::string value;
    std::size_t i = pos_ + 1;
    while (true) {
      if (i >= text_.size()) {
        throw Error("UnterminatedString", fmt::format("string starting at offset {} is not closed", start));
      }
      if (text_[i] == '\'') {
        if (i + 1 < text_.size() && text_[i + 1] == '\'') {
          value += '\'';
          i += 2;
          continue;
        }
        ++i;
        break;
      }
      value += text_[i++];
    }
    pos_ = i;
    return Token{TokenKind::String, std::move(value), start, i - start};
  }

  if (c == '#') {
    std::size_t i = pos_ + 1;
    while (i < text_.size() && is_digit(text_[i])) ++i;
    if (i == pos_ + 1) throw Error("IllegalCharacter", fmt::format("'#' without digits at offset {}", start));
    if (text_[pos_ + 1] == '0' && i - pos_ - 1 == 1) {
      throw Error("IllegalCharacter", fmt::format("entity id #0 at offset {}", start));
    }
    return make(TokenKind::EntityRef, i - start);
  }

  if (c == '.') {
    std::size_t i = pos_ + 1;
    while (i < text_.size() && is_keyword_char(text_[i])) ++i;
    if (i == pos_ + 1 || i >= text_.size() || text_[i] != '.') {
      throw Error("IllegalCharacter", fmt::format("malformed enumeration at offset {}", start));
    }
    return make(TokenKind::Enum, i + 1 - start);
  }

  if (is_digit(c) || c == '+' || c == '-') {
    std::size_t i = pos_;
    if (c == '+' || c == '-') ++i;
    const std::size_t digits_start = i;
    while (i < text_.size() && is_digit(text_[i])) ++i;
    if (i == digits_start) throw Error("IllegalCharacter", fmt::format("sign without digits at offset {}", start));
    bool real = false;
    if (i < text_.size() && text_[i] == '.') {
      real = true;
      ++i;
      while (i < text_.size() && is_digit(text_[i])) ++i;
      if (i < text_.size() && (text_[i] == 'E' || text_[i] == 'e')) {
        std::size_t j = i + 1;
        if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
        std::size_t exp_digits = j;
        while (j < text_.size() && is_digit(text_[j])) ++j;
        if (j == exp_digits) throw Error("IllegalCharacter", fmt::format("malformed exponent at offset {}", i));
        i = j;
      }
    }
    return make(real ? TokenKind::Real : TokenKind::Integer, i - start);
  }

  if (is_upper(c) || c == '!') {
    std::size_t i = pos_ + 1;
    while (i < text_.size() && is_keyword_char(text_[i])) ++i;
    if (c == '!' && i == pos_ + 1) throw Error("IllegalCharacter", fmt::format("'!' at offset {}", start));
    return make(TokenKind::Keyword, i - start);
  }

  throw Error("IllegalCharacter",
              fmt::format("unexpected byte 0x{:02X} at offset {}", static_cast<unsigned char>(c), start));
}

std::vector<Token> tokenize(std::string_view text) {
  Lexer lexer(text);
  std::vector<Token> out;
  while (auto tok = lexer.next()) out.push_back(std::move(*tok));
  return out;
}

}  // namespace birs::step
