#ifndef EASPEC_RESIDUAL_H_
#define EASPEC_RESIDUAL_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "easpec/program.h"

namespace easpec {

// Body of a K-rule: residual guards over negative functions, with residual
// updates and the successor K label at each leaf.
class DecisionTree {
 public:
  struct Leaf {
    std::vector<UpdateRule> updates;
    std::string successor;
  };

  DecisionTree() = default;
  static DecisionTree MakeLeaf(std::vector<UpdateRule> updates, std::string successor);
  static DecisionTree MakeBranch(Term guard, DecisionTree then_tree, DecisionTree else_tree);

  bool is_leaf() const { return std::holds_alternative<Leaf>(node_); }
  const Leaf& leaf() const { return std::get<Leaf>(node_); }
  const Term& guard() const { return std::get<BranchNode>(node_).guard; }
  const DecisionTree& then_tree() const { return *std::get<BranchNode>(node_).then_tree; }
  const DecisionTree& else_tree() const { return *std::get<BranchNode>(node_).else_tree; }

  // Visits leaves left to right (then before else).
  template <typename Fn>
  void ForEachLeaf(Fn&& fn) const {
    if (is_leaf()) {
      fn(leaf());
      return;
    }
    then_tree().ForEachLeaf(fn);
    else_tree().ForEachLeaf(fn);
  }

  std::size_t LeafCount() const;
  // Copy with every successor label passed through `rename`.
  template <typename Fn>
  DecisionTree MapSuccessors(Fn&& rename) const {
    if (is_leaf()) return MakeLeaf(leaf().updates, rename(leaf().successor));
    return MakeBranch(guard(), then_tree().MapSuccessors(rename),
                      else_tree().MapSuccessors(rename));
  }

  // Rule form: a leaf becomes its updates followed by K := successor; a
  // branch becomes if guard then ... else ... endif.
  Block ToBlock() const;

  // Canonical key: leaf updates sorted, guards printed canonically.
  std::string CanonicalKey() const;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  struct BranchNode {
    Term guard;
    std::shared_ptr<const DecisionTree> then_tree;
    std::shared_ptr<const DecisionTree> else_tree;
  };
  std::variant<Leaf, BranchNode> node_;
};

struct KRule {
  std::string label;
  DecisionTree body;
  // Rendering of the positive state behind the label, for the listing.
  std::string state_comment;
};

// A program over the negative functions plus K, one K-rule per reachable
// positive state.
struct ResidualProgram {
  std::string entry;
  std::vector<KRule> rules;
  std::vector<FunctionDecl> externals;
  // Header comment lines (without the leading "-- ").
  std::vector<std::string> header;
  bool optimized = false;

  const KRule* Find(const std::string& label) const;
  std::set<std::string> Labels() const;
};

// K := label as an update rule.
UpdateRule ControlUpdate(const std::string& label);

// The executable program: externals plus "if K = label then body endif".
Program ToProgram(const ResidualProgram& residual);

// Initial state additions for the residual: K = entry.
State EntryState(const ResidualProgram& residual);

// Full listing: header comments, "-- entry: L", "-- optimized: B",
// declarations, then each K-rule preceded by its state comment.
std::string PrintResidual(const ResidualProgram& residual);

// Reads a listing produced by PrintResidual (or any program in K-rule
// shape). The entry label comes from the "-- entry:" header, defaulting to
// the first K-rule. Throws
// AnalysisError if the program is not in K-rule shape.
ResidualProgram ParseResidual(std::string_view text, std::string_view origin = "<input>");
ResidualProgram ResidualFromProgram(const Program& program, std::string entry);

// Value of a "-- key: value" header line, if present.
std::optional<std::string> ReadHeaderField(std::string_view text, std::string_view key);

// Structural checks: distinct labels, every successor defined, entry
// defined, K assigned only at leaves. Returns problems found.
std::vector<std::string> CheckResidual(const ResidualProgram& residual);

}  // namespace easpec

#endif  // EASPEC_RESIDUAL_H_
