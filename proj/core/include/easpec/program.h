#ifndef EASPEC_PROGRAM_H_
#define EASPEC_PROGRAM_H_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "easpec/state.h"
#include "easpec/term.h"

namespace easpec {

struct Rule;

// Rules fired in parallel. Order carries no meaning except as the
// tie-breaker of the first-in-rule-order conflict policy.
using Block = std::vector<Rule>;

// f(t1, ..., tr) := t0
struct UpdateRule {
  std::string head;
  std::vector<Term> args;
  Term rhs;

  friend bool operator==(const UpdateRule&, const UpdateRule&) = default;
};

struct CondBranch {
  Term guard;
  Block body;
  friend bool operator==(const CondBranch&, const CondBranch&) = default;
};

// if b0 then C0 elseif b1 then C1 ... else Ck endif. The first branch whose
// guard is exactly true fires; otherwise the else body does.
struct CondRule {
  std::vector<CondBranch> branches;
  Block else_body;
  friend bool operator==(const CondRule&, const CondRule&) = default;
};

struct Rule {
  std::variant<UpdateRule, CondRule> node;

  static Rule Update(std::string head, std::vector<Term> args, Term rhs);
  static Rule If(Term guard, Block then_body, Block else_body = {});

  bool is_update() const { return std::holds_alternative<UpdateRule>(node); }
  const UpdateRule& update() const { return std::get<UpdateRule>(node); }
  const CondRule& cond() const { return std::get<CondRule>(node); }

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct FunctionDecl {
  std::string name;
  int arity = 0;
  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct MacroDef {
  std::string name;
  std::vector<std::string> params;
  bool has_params = false;
  std::string body;
  friend bool operator==(const MacroDef&, const MacroDef&) = default;
};

struct Program {
  std::vector<FunctionDecl> externals;
  // Static tables declared up front, e.g. ones only populated by states.
  std::vector<FunctionDecl> statics;
  std::vector<MacroDef> macros;
  Block rules;

  bool IsExternal(const std::string& name) const;
  friend bool operator==(const Program&, const Program&) = default;
};

enum class FunctionKind { kDynamic, kStatic, kExternal };

std::string_view KindName(FunctionKind kind);

struct FunctionInfo {
  std::string name;
  int arity = 0;
  FunctionKind kind = FunctionKind::kStatic;
  bool builtin = false;
  friend bool operator==(const FunctionInfo&, const FunctionInfo&) = default;
};

struct Diagnostic {
  std::string function;
  // One-line rendering of the offending rule (empty for declarations).
  std::string rule;
  std::string message;

  std::string ToString() const;
};

std::vector<Diagnostic> ValidateProgram(const Program& program);

// Classifies every name mentioned by the rules, the declarations, or (when
// given) an initial state. Built-ins are always present and static.
std::map<std::string, FunctionInfo> InferKinds(const Program& program,
                                               const State* initial = nullptr);

// Rewrites the rules into the flat `if guard then f(args) := t endif` form.
// Nested guards are joined with `and`; else branches use `not-true` so they
// fire exactly when the guard is not true.
Block FlattenToBasicRules(const Program& program);

// Visits every update in `block`, depth first, in rule order.
template <typename Fn>
void ForEachUpdate(const Block& block, Fn&& fn) {
  for (const Rule& rule : block) {
    if (rule.is_update()) {
      fn(rule.update());
      continue;
    }
    for (const CondBranch& branch : rule.cond().branches) {
      ForEachUpdate(branch.body, fn);
    }
    ForEachUpdate(rule.cond().else_body, fn);
  }
}

// Visits every term (guards, update arguments, right-hand sides).
template <typename Fn>
void ForEachTerm(const Block& block, Fn&& fn) {
  for (const Rule& rule : block) {
    if (rule.is_update()) {
      for (const Term& arg : rule.update().args) fn(arg);
      fn(rule.update().rhs);
      continue;
    }
    for (const CondBranch& branch : rule.cond().branches) {
      fn(branch.guard);
      ForEachTerm(branch.body, fn);
    }
    ForEachTerm(rule.cond().else_body, fn);
  }
}

// Names read by an update: functions in its argument terms and rhs.
std::set<std::string> ReadNames(const UpdateRule& update);

}  // namespace easpec

#endif  // EASPEC_PROGRAM_H_
