#include "sql_lexer.hpp"

#include <algorithm>
#include <array>

#include "t2i/sql.hpp"
#include "t2i/types.hpp"

namespace t2i::sql {

namespace {

constexpr std::array<std::string_view, 23> kKeywords = {
    "SELECT", "DISTINCT", "FROM",  "WHERE",   "GROUP", "BY",    "ORDER", "ASC",
    "DESC",   "LIMIT",    "AND",   "OR",      "NOT",   "IN",    "AS",    "NULL",
    "JOIN",   "HAVING",   "UNION", "BETWEEN", "LIKE",  "IS",    "CASE"};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

}  // namespace

bool is_reserved_keyword(std::string_view word) {
  auto u = upper(word);
  return std::find(kKeywords.begin(), kKeywords.end(), u) != kKeywords.end();
}

std::string quote_identifier(std::string_view name) {
  bool bare = !name.empty() && ident_start(name.front()) &&
              std::all_of(name.begin(), name.end(), ident_char) && !is_reserved_keyword(name);
  if (bare) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ParseException::ParseException(ParseError detail)
    : Error(ErrorCode::ParseError,
            detail.message + " at offset " + std::to_string(detail.offset)),
      detail_(std::move(detail)) {}

namespace detail {

std::string_view describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Integer:
    case Tok::Real: return "number";
    case Tok::String: return "string literal";
    default: return t.text;
  }
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto fail = [&](std::size_t at, std::vector<std::string> expected, std::string msg) {
    throw ParseException(ParseError{at, std::move(expected), std::move(msg)});
  };

  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < n && text[i + 1] == '-') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < n && ident_char(text[i])) ++i;
      auto word = text.substr(start, i - start);
      if (is_reserved_keyword(word)) {
        out.push_back({Tok::Keyword, upper(word), start});
      } else {
        out.push_back({Tok::Ident, std::string(word), start});
      }
      continue;
    }
    if (digit(c) || (c == '.' && i + 1 < n && digit(text[i + 1]))) {
      bool real = false;
      while (i < n && digit(text[i])) ++i;
      if (i < n && text[i] == '.') {
        real = true;
        ++i;
        while (i < n && digit(text[i])) ++i;
      }
      if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < n && digit(text[j])) {
          real = true;
          i = j;
          while (i < n && digit(text[i])) ++i;
        }
      }
      if (i < n && ident_start(text[i])) fail(i, {}, "malformed number");
      out.push_back({real ? Tok::Real : Tok::Integer, std::string(text.substr(start, i - start)),
                     start});
      continue;
    }
    if (c == '\'' || c == '"' || c == '`') {
      const char close = c;
      std::string value;
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == close) {
          if (i + 1 < n && text[i + 1] == close) {
            value += close;
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        value += text[i++];
      }
      if (!closed) fail(n, {std::string(1, close)}, "unterminated quoted text");
      if (close == '\'') {
        out.push_back({Tok::String, std::move(value), start});
      } else {
        if (value.empty()) fail(start, {"identifier"}, "empty quoted identifier");
        out.push_back({Tok::QuotedIdent, std::move(value), start});
      }
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "<=" || two == ">=" || two == "!=" || two == "<>") {
      out.push_back({Tok::Symbol, std::string(two), start});
      i += 2;
      continue;
    }
    if (std::string_view("=<>+-*/,();.").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), start});
      ++i;
      continue;
    }
    fail(i, {}, "unexpected character");
  }
  out.push_back({Tok::End, "", n});
  return out;
}

}  // namespace detail
}  // namespace t2i::sql
