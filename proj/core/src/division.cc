#include "easpec/division.h"

namespace easpec {

std::string_view BindingTimeName(BindingTime bt) {
  switch (bt) {
    case BindingTime::kPositive:
      return "positive";
    case BindingTime::kNegative:
      return "negative";
    case BindingTime::kUnclassified:
      return "unclassified";
  }
  return "unclassified";
}

BindingTime Division::Get(const std::string& fname) const {
  auto it = classes.find(fname);
  return it == classes.end() ? BindingTime::kUnclassified : it->second;
}

void Division::Set(const std::string& fname, BindingTime bt, std::string reason) {
  classes[fname] = bt;
  provenance[fname] = std::move(reason);
}

std::set<std::string> Division::Names(BindingTime bt) const {
  std::set<std::string> out;
  for (const auto& [name, cls] : classes) {
    if (cls == bt) out.insert(name);
  }
  return out;
}

}  // namespace easpec
