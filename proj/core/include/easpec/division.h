#ifndef EASPEC_DIVISION_H_
#define EASPEC_DIVISION_H_

#include <map>
#include <set>
#include <string>
#include <vector>

namespace easpec {

enum class BindingTime { kUnclassified, kPositive, kNegative };

std::string_view BindingTimeName(BindingTime bt);

// Classification of function names into positive (known at specialization
// time) and negative (supplied at run time).
struct Division {
  std::map<std::string, BindingTime> classes;
  // Self-referential functions the user vouches for as bounded.
  std::set<std::string> bounded;
  // Why each name ended up with its classification.
  std::map<std::string, std::string> provenance;
  // Non-fatal notes, e.g. marks on names the program never mentions.
  std::vector<std::string> warnings;

  BindingTime Get(const std::string& fname) const;
  bool IsPositive(const std::string& fname) const {
    return Get(fname) == BindingTime::kPositive;
  }
  bool IsNegative(const std::string& fname) const {
    return Get(fname) == BindingTime::kNegative;
  }
  void Set(const std::string& fname, BindingTime bt, std::string reason);

  std::set<std::string> Names(BindingTime bt) const;
};

}  // namespace easpec

#endif  // EASPEC_DIVISION_H_
