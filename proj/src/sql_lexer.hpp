#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace t2i::sql::detail {

enum class Tok { Ident, QuotedIdent, Keyword, Integer, Real, String, Symbol, End };

struct Token {
  Tok kind;
  std::string text;  // keywords upper-cased, quoted forms unescaped
  std::size_t offset;
};

/// Throws ParseException on an unterminated literal or an unknown character.
std::vector<Token> tokenize(std::string_view text);

std::string_view describe(const Token& t);

}  // namespace t2i::sql::detail
