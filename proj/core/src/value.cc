#include "easpec/value.h"

#include <cctype>
#include <utility>

#include "easpec/builtins.h"

namespace easpec {

Value Value::Int(std::int64_t i) {
  Value v(ValueKind::kInt);
  v.int_ = i;
  return v;
}

Value Value::Str(std::string text) {
  Value v(ValueKind::kStr);
  v.text_ = std::move(text);
  return v;
}

Value Value::Atom(std::string name) {
  Value v(ValueKind::kAtom);
  v.text_ = std::move(name);
  return v;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.int_ <=> b.int_; c != 0) return c;
  return a.text_.compare(b.text_) <=> 0;
}

namespace {

std::string QuoteString(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  out += '"';
  return out;
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

bool IsBareAtomName(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (!IsIdentChar(c)) return false;
  }
  return !IsReservedWord(name);
}

std::string Value::ToString() const {
  switch (kind_) {
    case ValueKind::kUndef:
      return "undef";
    case ValueKind::kTrue:
      return "true";
    case ValueKind::kFalse:
      return "false";
    case ValueKind::kInt:
      return std::to_string(int_);
    case ValueKind::kStr:
      return QuoteString(text_);
    case ValueKind::kAtom: {
      if (IsBareAtomName(text_)) return text_;
      // Quoted atoms run to the next non-identifier character, so only
      // identifier-like names survive a round trip.
      return "'" + text_;
    }
  }
  return "undef";
}

std::string TupleToString(const Tuple& tuple) {
  if (tuple.empty()) return "";
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) out += ", ";
    out += tuple[i].ToString();
  }
  out += ")";
  return out;
}

}  // namespace easpec
