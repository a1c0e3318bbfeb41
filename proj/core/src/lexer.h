#ifndef EASPEC_SRC_LEXER_H_
#define EASPEC_SRC_LEXER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace easpec::internal {

enum class TokenKind {
  kName,       // Uppercase-initial identifier: a function name.
  kWord,       // Lowercase identifier: keyword, built-in or bare atom.
  kQuotedAtom, // 'name
  kInt,        // Unsigned decimal digits; sign handled by the parser.
  kString,
  kSymbol,     // Operators and punctuation.
  kNewline,
  kEof,
};

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

// Splits `text` into tokens. Comments are dropped; newlines are kept as
// tokens. Throws ParseError on malformed input.
std::vector<Token> Lex(std::string_view text, std::string_view origin);

bool IsIdentStart(char c);
bool IsIdentChar(char c);

}  // namespace easpec::internal

#endif  // EASPEC_SRC_LEXER_H_
