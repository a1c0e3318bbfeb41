#ifndef EASPEC_VALUE_H_
#define EASPEC_VALUE_H_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace easpec {

// Kinds of superuniverse elements. The enumerator order is the canonical
// ordering between kinds.
enum class ValueKind : std::uint8_t {
  kUndef,
  kFalse,
  kTrue,
  kInt,
  kStr,
  kAtom,
};

// An element of the superuniverse: a 64-bit integer, a string, an atom
// (symbolic constant) or one of the logical constants true, false, undef.
class Value {
 public:
  // Default-constructed values are undef.
  Value() = default;

  static Value Undef() { return Value(); }
  static Value True() { return Value(ValueKind::kTrue); }
  static Value False() { return Value(ValueKind::kFalse); }
  static Value Bool(bool b) { return b ? True() : False(); }
  static Value Int(std::int64_t i);
  static Value Str(std::string text);
  static Value Atom(std::string name);

  ValueKind kind() const { return kind_; }
  bool is_undef() const { return kind_ == ValueKind::kUndef; }
  bool is_true() const { return kind_ == ValueKind::kTrue; }
  bool is_false() const { return kind_ == ValueKind::kFalse; }
  bool is_bool() const { return is_true() || is_false(); }
  bool is_int() const { return kind_ == ValueKind::kInt; }
  bool is_str() const { return kind_ == ValueKind::kStr; }
  bool is_atom() const { return kind_ == ValueKind::kAtom; }

  std::int64_t as_int() const { return int_; }
  // Payload of a Str or Atom.
  const std::string& text() const { return text_; }

  // Renders the value in literal syntax, e.g. 5, -3, "abc", nil, 'Foo, true.
  std::string ToString() const;

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind_ == b.kind_ && a.int_ == b.int_ && a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  explicit Value(ValueKind kind) : kind_(kind) {}

  ValueKind kind_ = ValueKind::kUndef;
  std::int64_t int_ = 0;
  std::string text_;
};

using Tuple = std::vector<Value>;

// "(v1, v2)" or "" for the empty tuple.
std::string TupleToString(const Tuple& tuple);

// True iff `name` can be written as a bare atom (lowercase start, not a
// keyword or built-in name).
bool IsBareAtomName(const std::string& name);

}  // namespace easpec

#endif  // EASPEC_VALUE_H_
