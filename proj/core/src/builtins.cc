#include "easpec/builtins.h"

#include <algorithm>
#include <array>

#include "easpec/errors.h"

namespace easpec {

namespace {

constexpr int kComparePrecedence = 1;
constexpr int kAddPrecedence = 2;
constexpr int kMulPrecedence = 3;

constexpr std::array<std::string_view, 9> kKeywords = {
    "if", "then", "elseif", "else", "endif",
    "true", "false", "undef", "external"};

}  // namespace

const std::vector<BuiltinInfo>& AllBuiltins() {
  static const std::vector<BuiltinInfo> kBuiltins = {
      {"+", 2, true, kAddPrecedence},
      {"-", 2, true, kAddPrecedence},
      {"*", 2, true, kMulPrecedence},
      {"<", 2, true, kComparePrecedence},
      {"<=", 2, true, kComparePrecedence},
      {">", 2, true, kComparePrecedence},
      {">=", 2, true, kComparePrecedence},
      {"=", 2, true, kComparePrecedence},
      {"!=", 2, true, kComparePrecedence},
      {"and", 2, false, 0},
      {"or", 2, false, 0},
      {"not", 1, false, 0},
      {"not-true", 1, false, 0},
  };
  return kBuiltins;
}

std::optional<BuiltinInfo> LookupBuiltin(std::string_view name) {
  for (const BuiltinInfo& info : AllBuiltins()) {
    if (info.name == name) return info;
  }
  return std::nullopt;
}

bool IsBuiltin(std::string_view name) { return LookupBuiltin(name).has_value(); }

bool IsReservedWord(std::string_view word) {
  if (std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end()) {
    return true;
  }
  return word == "macro" || word == "static" || IsBuiltin(word);
}

std::optional<Value> ShortCircuit(std::string_view name, const Value& first) {
  if (name == "and") {
    if (first.is_true()) return std::nullopt;
    return first.is_false() ? Value::False() : Value::Undef();
  }
  if (name == "or") {
    if (first.is_false()) return std::nullopt;
    return first.is_true() ? Value::True() : Value::Undef();
  }
  return std::nullopt;
}

namespace {

Value Arith(std::string_view op, std::int64_t a, std::int64_t b) {
  std::int64_t result = 0;
  bool overflow = false;
  if (op == "+") {
    overflow = __builtin_add_overflow(a, b, &result);
  } else if (op == "-") {
    overflow = __builtin_sub_overflow(a, b, &result);
  } else {
    overflow = __builtin_mul_overflow(a, b, &result);
  }
  if (overflow) {
    throw RuntimeError("integer overflow in " + std::to_string(a) + " " +
                       std::string(op) + " " + std::to_string(b));
  }
  return Value::Int(result);
}

Value BoolOf(const Value& v, bool negate) {
  if (!v.is_bool()) return Value::Undef();
  return Value::Bool(v.is_true() != negate);
}

}  // namespace

Value EvalBuiltin(std::string_view name, std::span<const Value> args) {
  // Equality is total over the superuniverse.
  if (name == "=") return Value::Bool(args[0] == args[1]);
  if (name == "!=") return Value::Bool(!(args[0] == args[1]));
  if (name == "not-true") return Value::Bool(!args[0].is_true());
  if (name == "not") return BoolOf(args[0], /*negate=*/true);
  if (name == "and" || name == "or") {
    if (auto decided = ShortCircuit(name, args[0])) return *decided;
    return BoolOf(args[1], /*negate=*/false);
  }
  const Value& a = args[0];
  const Value& b = args[1];
  if (!a.is_int() || !b.is_int()) return Value::Undef();
  if (name == "+" || name == "-" || name == "*") {
    return Arith(name, a.as_int(), b.as_int());
  }
  if (name == "<") return Value::Bool(a.as_int() < b.as_int());
  if (name == "<=") return Value::Bool(a.as_int() <= b.as_int());
  if (name == ">") return Value::Bool(a.as_int() > b.as_int());
  if (name == ">=") return Value::Bool(a.as_int() >= b.as_int());
  throw RuntimeError("unknown built-in '" + std::string(name) + "'");
}

}  // namespace easpec
