#ifndef EASPEC_TERM_H_
#define EASPEC_TERM_H_

#include <set>
#include <string>
#include <vector>

#include "easpec/value.h"

namespace easpec {

// A closed first-order term: a literal value or a function name applied to
// argument terms. A nullary application reads a distinguished element.
class Term {
 public:
  Term() = default;

  static Term Lit(Value value);
  static Term Apply(std::string fname, std::vector<Term> args = {});

  bool is_literal() const { return is_literal_; }
  const Value& literal() const { return value_; }
  const std::string& fname() const { return fname_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  // Canonical rendering with minimal parentheses; parses back to an equal
  // term.
  std::string ToString() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  bool is_literal_ = true;
  Value value_;
  std::string fname_;
  std::vector<Term> args_;
};

// Adds every function name applied anywhere inside `term` to `out`.
void CollectFunctionNames(const Term& term, std::set<std::string>& out);
std::set<std::string> FunctionNames(const Term& term);

// True iff `fname` is applied anywhere inside `term`.
bool Mentions(const Term& term, const std::string& fname);

}  // namespace easpec

#endif  // EASPEC_TERM_H_
