#ifndef EASPEC_BUILTINS_H_
#define EASPEC_BUILTINS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "easpec/value.h"

namespace easpec {

struct BuiltinInfo {
  std::string_view name;
  int arity;
  // Printed between its operands rather than as a call.
  bool infix;
  // Binding strength for infix printing; larger binds tighter.
  int precedence;
};

// Returns nullopt for names that are not built-in.
std::optional<BuiltinInfo> LookupBuiltin(std::string_view name);
bool IsBuiltin(std::string_view name);

// Every built-in, in a fixed order.
const std::vector<BuiltinInfo>& AllBuiltins();

// Keywords and built-in names; none of these can be a bare atom.
bool IsReservedWord(std::string_view word);

// Name of the nullary function holding the encoded positive state in
// residual programs.
inline constexpr std::string_view kControlName = "K";

// Applies a strict built-in to already evaluated arguments. `and` and `or`
// are handled here for the fully evaluated case; their short-circuit
// behaviour lives in the evaluators. Throws RuntimeError on integer
// overflow.
Value EvalBuiltin(std::string_view name, std::span<const Value> args);

// Short-circuit decision for `and`/`or` once the first operand is known:
// returns the final value if the second operand need not be inspected.
std::optional<Value> ShortCircuit(std::string_view name, const Value& first);

}  // namespace easpec

#endif  // EASPEC_BUILTINS_H_
