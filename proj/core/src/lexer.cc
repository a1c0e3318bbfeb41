#include "lexer.h"

#include <cctype>

#include "easpec/errors.h"

namespace easpec::internal {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> Lex(std::string_view text, std::string_view origin) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1;
  int column = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  auto fail = [&](const std::string& message) -> void {
    throw ParseError(std::string(origin), line, column, message);
  };
  auto starts_with = [&](std::string_view s) { return text.substr(i).starts_with(s); };

  while (i < text.size()) {
    char c = text[i];
    int start_line = line;
    int start_column = column;
    auto emit = [&](TokenKind kind, std::string s) {
      tokens.push_back(Token{kind, std::move(s), start_line, start_column});
    };
    if (c == '\n') {
      emit(TokenKind::kNewline, "\n");
      advance(1);
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (starts_with("--")) {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      emit(TokenKind::kInt, std::string(text.substr(i, j - i)));
      advance(j - i);
    } else if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (word == "not" && text.substr(j).starts_with("-true")) {
        word = "not-true";
        j += 5;
      }
      bool upper = std::isupper(static_cast<unsigned char>(c));
      emit(upper ? TokenKind::kName : TokenKind::kWord, word);
      advance(j - i);
    } else if (c == '\'') {
      std::size_t j = i + 1;
      while (j < text.size() && (IsIdentChar(text[j]) || text[j] == '-')) ++j;
      if (j == i + 1) fail("empty quoted atom");
      emit(TokenKind::kQuotedAtom, std::string(text.substr(i + 1, j - i - 1)));
      advance(j - i);
    } else if (c == '"') {
      std::string value;
      advance(1);
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '"') {
          closed = true;
          advance(1);
          break;
        }
        if (d == '\n') break;
        if (d == '\\' && i + 1 < text.size()) {
          char e = text[i + 1];
          value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
          advance(2);
          continue;
        }
        value += d;
        advance(1);
      }
      if (!closed) fail("unterminated string literal");
      emit(TokenKind::kString, std::move(value));
    } else if (starts_with("\xE2\x89\xA0")) {  // U+2260 NOT EQUAL TO
      emit(TokenKind::kSymbol, "!=");
      i += 3;
      ++column;
    } else {
      static constexpr std::string_view kTwoChar[] = {":=", "<=", ">=", "!="};
      bool matched = false;
      for (std::string_view op : kTwoChar) {
        if (starts_with(op)) {
          emit(TokenKind::kSymbol, std::string(op));
          advance(2);
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("+-*<>=(),/:").find(c) != std::string_view::npos) {
        emit(TokenKind::kSymbol, std::string(1, c));
        advance(1);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
  }
  tokens.push_back(Token{TokenKind::kEof, "", line, column});
  return tokens;
}

}  // namespace easpec::internal
