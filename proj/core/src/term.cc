#include "easpec/term.h"

#include <utility>

#include "easpec/builtins.h"

namespace easpec {

Term Term::Lit(Value value) {
  Term t;
  t.is_literal_ = true;
  t.value_ = std::move(value);
  return t;
}

Term Term::Apply(std::string fname, std::vector<Term> args) {
  Term t;
  t.is_literal_ = false;
  t.fname_ = std::move(fname);
  t.args_ = std::move(args);
  return t;
}

namespace {

// Precedence of the outermost operator of `t` when printed; atoms and calls
// bind tightest.
int PrintPrecedence(const Term& t) {
  if (t.is_literal()) {
    // A negative literal behaves like a unary minus for printing purposes.
    return (t.literal().is_int() && t.literal().as_int() < 0) ? 4 : 5;
  }
  auto info = LookupBuiltin(t.fname());
  if (info && info->infix && t.arity() == 2) return info->precedence;
  return 5;
}

void Print(const Term& t, std::string& out);

void PrintOperand(const Term& t, int min_precedence, std::string& out) {
  if (PrintPrecedence(t) < min_precedence) {
    out += '(';
    Print(t, out);
    out += ')';
  } else {
    Print(t, out);
  }
}

void Print(const Term& t, std::string& out) {
  if (t.is_literal()) {
    out += t.literal().ToString();
    return;
  }
  auto info = LookupBuiltin(t.fname());
  if (info && info->infix && t.arity() == 2) {
    // Left-associative arithmetic; comparisons do not chain.
    int p = info->precedence;
    bool compare = p == 1;
    PrintOperand(t.args()[0], compare ? p + 1 : p, out);
    out += ' ';
    out += t.fname();
    out += ' ';
    PrintOperand(t.args()[1], p + 1, out);
    return;
  }
  out += t.fname();
  if (t.args().empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i > 0) out += ", ";
    Print(t.args()[i], out);
  }
  out += ')';
}

}  // namespace

std::string Term::ToString() const {
  std::string out;
  Print(*this, out);
  return out;
}

void CollectFunctionNames(const Term& term, std::set<std::string>& out) {
  if (term.is_literal()) return;
  out.insert(term.fname());
  for (const Term& arg : term.args()) CollectFunctionNames(arg, out);
}

std::set<std::string> FunctionNames(const Term& term) {
  std::set<std::string> out;
  CollectFunctionNames(term, out);
  return out;
}

bool Mentions(const Term& term, const std::string& fname) {
  if (term.is_literal()) return false;
  if (term.fname() == fname) return true;
  for (const Term& arg : term.args()) {
    if (Mentions(arg, fname)) return true;
  }
  return false;
}

}  // namespace easpec
