#include <charconv>
#include <limits>

#include "easpec/builtins.h"
#include "easpec/errors.h"
#include "easpec/syntax.h"
#include "lexer.h"

namespace easpec {

using internal::Token;
using internal::TokenKind;

namespace internal {

// Recursive-descent parser shared by the program, state, division and
// oracle readers.
class Parser {
 public:
  Parser(std::string_view text, std::string_view origin)
      : origin_(origin), tokens_(Lex(text, origin)) {}

  const Token& Peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool AtEof() const { return Peek().kind == TokenKind::kEof; }

  bool IsSymbol(std::string_view s, std::size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::kSymbol && Peek(ahead).text == s;
  }
  bool IsWord(std::string_view s) const {
    return Peek().kind == TokenKind::kWord && Peek().text == s;
  }
  bool IsNewline() const { return Peek().kind == TokenKind::kNewline; }

  void SkipNewlines() {
    while (IsNewline()) Next();
  }

  [[noreturn]] void Fail(const Token& at, const std::string& message) const {
    throw ParseError(origin_, at.line, at.column, message);
  }
  [[noreturn]] void Fail(const std::string& message) const { Fail(Peek(), message); }

  void ExpectSymbol(std::string_view s) {
    if (!IsSymbol(s)) Fail("expected '" + std::string(s) + "'" + Found());
    Next();
  }
  void ExpectWord(std::string_view s) {
    if (!IsWord(s)) Fail("expected '" + std::string(s) + "'" + Found());
    Next();
  }
  // Expects a newline or end of input.
  void ExpectLineEnd() {
    if (AtEof()) return;
    if (!IsNewline()) Fail("expected end of line" + Found());
    Next();
  }

  std::string Found() const {
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kEof:
        return ", found end of input";
      case TokenKind::kNewline:
        return ", found end of line";
      default:
        return ", found '" + t.text + "'";
    }
  }

  std::int64_t ParseInt(const Token& t, bool negative) const {
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    constexpr std::uint64_t kMaxMagnitude =
        static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
    if (ec != std::errc() || magnitude > kMaxMagnitude + (negative ? 1 : 0)) {
      Fail(t, "integer literal out of range");
    }
    if (negative) return static_cast<std::int64_t>(0 - magnitude);
    return static_cast<std::int64_t>(magnitude);
  }

  // Literal value; returns nullopt (consuming nothing) if the next token
  // does not start one.
  std::optional<Value> TryLiteral() {
    const Token& t = Peek();
    if (t.kind == TokenKind::kSymbol && t.text == "-" && Peek(1).kind == TokenKind::kInt) {
      Next();
      return Value::Int(ParseInt(Next(), true));
    }
    switch (t.kind) {
      case TokenKind::kInt:
        return Value::Int(ParseInt(Next(), false));
      case TokenKind::kString:
        return Value::Str(Next().text);
      case TokenKind::kQuotedAtom:
        return Value::Atom(Next().text);
      case TokenKind::kWord:
        if (t.text == "true") {
          Next();
          return Value::True();
        }
        if (t.text == "false") {
          Next();
          return Value::False();
        }
        if (t.text == "undef") {
          Next();
          return Value::Undef();
        }
        if (!IsReservedWord(t.text)) return Value::Atom(Next().text);
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  Value ExpectLiteral(const std::string& what) {
    if (auto v = TryLiteral()) return *v;
    Fail("expected a literal " + what + Found());
  }

  // ---- Terms ----

  Term ParseTermExpr() {
    Term left = ParseAdditive();
    static constexpr std::string_view kCompare[] = {"<", "<=", ">", ">=", "=", "!="};
    for (std::string_view op : kCompare) {
      if (IsSymbol(op)) {
        Next();
        Term right = ParseAdditive();
        return Term::Apply(std::string(op), {std::move(left), std::move(right)});
      }
    }
    return left;
  }

  Term ParseAdditive() {
    Term left = ParseMultiplicative();
    while (IsSymbol("+") || IsSymbol("-")) {
      std::string op = Next().text;
      Term right = ParseMultiplicative();
      left = Term::Apply(op, {std::move(left), std::move(right)});
    }
    return left;
  }

  Term ParseMultiplicative() {
    Term left = ParsePrimary();
    while (IsSymbol("*")) {
      Next();
      Term right = ParsePrimary();
      left = Term::Apply("*", {std::move(left), std::move(right)});
    }
    return left;
  }

  std::vector<Term> ParseArgs() {
    ExpectSymbol("(");
    std::vector<Term> args;
    SkipNewlines();
    if (IsSymbol(")")) {
      Next();
      return args;
    }
    while (true) {
      SkipNewlines();
      args.push_back(ParseTermExpr());
      SkipNewlines();
      if (IsSymbol(",")) {
        Next();
        continue;
      }
      ExpectSymbol(")");
      return args;
    }
  }

  Term ParsePrimary() {
    const Token& t = Peek();
    if (IsSymbol("(")) {
      Next();
      SkipNewlines();
      Term inner = ParseTermExpr();
      SkipNewlines();
      ExpectSymbol(")");
      return inner;
    }
    if (t.kind == TokenKind::kName) {
      std::string name = Next().text;
      if (IsSymbol("(")) return Term::Apply(name, ParseArgs());
      return Term::Apply(name);
    }
    if (t.kind == TokenKind::kWord && IsBuiltin(t.text)) {
      std::string name = Next().text;
      if (!IsSymbol("(")) Fail("built-in '" + name + "' must be applied to arguments");
      return Term::Apply(name, ParseArgs());
    }
    if (t.kind == TokenKind::kWord && !IsReservedWord(t.text) && IsSymbol("(", 1)) {
      Fail("unknown function '" + t.text + "' (function names start with an uppercase letter)");
    }
    if (auto v = TryLiteral()) return Term::Lit(*v);
    Fail("expected a term" + Found());
  }

  // ---- Rules ----

  bool AtBlockEnd() const {
    return AtEof() || IsWord("elseif") || IsWord("else") || IsWord("endif");
  }

  Block ParseBlock() {
    Block block;
    SkipNewlines();
    while (!AtBlockEnd()) {
      block.push_back(ParseRule());
      if (IsSymbol(",")) {
        Next();
        SkipNewlines();
        continue;
      }
      if (AtBlockEnd()) break;
      if (!IsNewline()) Fail("expected ',' or end of line between rules" + Found());
      SkipNewlines();
    }
    return block;
  }

  Rule ParseRule() {
    if (IsWord("if")) return ParseCond();
    const Token& start = Peek();
    Term lhs = ParseTermExpr();
    if (!IsSymbol(":=")) {
      if (!lhs.is_literal() && !IsBuiltin(lhs.fname())) {
        Fail(start, "undefined macro '" + lhs.fname() + "'");
      }
      Fail("expected ':='" + Found());
    }
    Next();
    if (lhs.is_literal() || IsBuiltin(lhs.fname())) {
      Fail(start, "left-hand side of ':=' must be a function application");
    }
    Term rhs = ParseTermExpr();
    return Rule::Update(lhs.fname(), lhs.args(), std::move(rhs));
  }

  Rule ParseCond() {
    ExpectWord("if");
    CondRule cond;
    while (true) {
      Term guard = ParseTermExpr();
      SkipNewlines();
      ExpectWord("then");
      Block body = ParseBlock();
      cond.branches.push_back(CondBranch{std::move(guard), std::move(body)});
      SkipNewlines();
      if (IsWord("elseif")) {
        Next();
        continue;
      }
      break;
    }
    if (IsWord("else")) {
      Next();
      cond.else_body = ParseBlock();
      SkipNewlines();
    }
    ExpectWord("endif");
    return Rule{std::move(cond)};
  }

  FunctionDecl ParseDecl() {
    if (Peek().kind != TokenKind::kName) Fail("expected function name" + Found());
    FunctionDecl decl;
    decl.name = Next().text;
    ExpectSymbol("/");
    if (Peek().kind != TokenKind::kInt) Fail("expected arity" + Found());
    decl.arity = static_cast<int>(ParseInt(Next(), false));
    ExpectLineEnd();
    return decl;
  }

  Program ParseProgramText() {
    Program program;
    while (true) {
      SkipNewlines();
      if (AtEof()) break;
      if (IsWord("external")) {
        Next();
        program.externals.push_back(ParseDecl());
        continue;
      }
      if (IsWord("static")) {
        Next();
        program.statics.push_back(ParseDecl());
        continue;
      }
      if (AtBlockEnd()) Fail("unexpected '" + Peek().text + "'");
      program.rules.push_back(ParseRule());
      if (IsSymbol(",")) {
        Next();
        continue;
      }
      ExpectLineEnd();
    }
    return program;
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace internal

Program ParseProgram(std::string_view text, std::string_view origin) {
  ExpandedSource expanded = ExpandMacroDefinitions(text, origin);
  internal::Parser parser(expanded.text, origin);
  Program program = parser.ParseProgramText();
  program.macros = std::move(expanded.macros);
  return program;
}

Term ParseTerm(std::string_view text) {
  internal::Parser parser(text, "<term>");
  parser.SkipNewlines();
  Term t = parser.ParseTermExpr();
  parser.SkipNewlines();
  if (!parser.AtEof()) parser.Fail("trailing input after term");
  return t;
}

namespace {

// "f(v1, ..., vr) = v" with literal arguments. Returns the location and value.
std::pair<Location, Value> ParseEntry(internal::Parser& p, std::string_view what) {
  if (p.Peek().kind != TokenKind::kName) {
    p.Fail("expected function name in " + std::string(what) + p.Found());
  }
  Location loc;
  loc.fname = p.Next().text;
  if (p.IsSymbol("(")) {
    p.Next();
    if (!p.IsSymbol(")")) {
      while (true) {
        loc.args.push_back(p.ExpectLiteral("argument"));
        if (p.IsSymbol(",")) {
          p.Next();
          continue;
        }
        break;
      }
    }
    p.ExpectSymbol(")");
  }
  p.ExpectSymbol("=");
  Value v = p.ExpectLiteral("value");
  p.ExpectLineEnd();
  return {std::move(loc), std::move(v)};
}

}  // namespace

State ParseState(std::string_view text, std::string_view origin) {
  internal::Parser p(text, origin);
  State state;
  std::map<Location, Value> seen;
  while (true) {
    p.SkipNewlines();
    if (p.AtEof()) break;
    const Token start = p.Peek();
    auto [loc, value] = ParseEntry(p, "state entry");
    auto [it, inserted] = seen.emplace(loc, value);
    if (!inserted && !(it->second == value)) {
      p.Fail(start, "conflicting values for " + loc.ToString() + ": " +
                        it->second.ToString() + " and " + value.ToString());
    }
    state.Set(loc.fname, loc.args, value);
  }
  return state;
}

Division ParseDivision(std::string_view text, std::string_view origin) {
  internal::Parser p(text, origin);
  Division division;
  std::map<std::string, BindingTime> marks;
  while (true) {
    p.SkipNewlines();
    if (p.AtEof()) break;
    const Token& key = p.Peek();
    if (key.kind != TokenKind::kWord ||
        (key.text != "positive" && key.text != "negative" && key.text != "bounded")) {
      p.Fail("expected 'positive:', 'negative:' or 'bounded:'" + p.Found());
    }
    std::string section = p.Next().text;
    p.ExpectSymbol(":");
    while (!p.IsNewline() && !p.AtEof()) {
      const Token& name = p.Peek();
      if (name.kind != TokenKind::kName && name.kind != TokenKind::kWord) {
        p.Fail("expected function name" + p.Found());
      }
      std::string fname = p.Next().text;
      if (section == "bounded") {
        division.bounded.insert(fname);
      } else {
        BindingTime bt = section == "positive" ? BindingTime::kPositive
                                               : BindingTime::kNegative;
        auto [it, inserted] = marks.emplace(fname, bt);
        if (!inserted && it->second != bt) {
          p.Fail(name, "'" + fname + "' is marked both positive and negative");
        }
        division.Set(fname, bt, "user");
      }
      if (p.IsSymbol(",")) p.Next();
    }
    p.ExpectLineEnd();
  }
  return division;
}

OracleTrace ParseOracle(std::string_view text, std::string_view origin) {
  internal::Parser p(text, origin);
  OracleTrace trace;
  while (true) {
    p.SkipNewlines();
    if (p.AtEof()) break;
    const Token start = p.Peek();
    p.ExpectWord("step");
    if (p.Peek().kind != TokenKind::kInt) p.Fail("expected step number" + p.Found());
    std::int64_t step = p.ParseInt(p.Next(), false);
    p.ExpectSymbol(":");
    auto [loc, value] = ParseEntry(p, "oracle entry");
    if (!trace.Insert(step, loc.fname, loc.args, value)) {
      p.Fail(start, "duplicate oracle value for " + loc.ToString() + " at step " +
                        std::to_string(step));
    }
  }
  return trace;
}

}  // namespace easpec
