#ifndef EASPEC_SPECIALIZER_H_
#define EASPEC_SPECIALIZER_H_

#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "easpec/division.h"
#include "easpec/interpreter.h"
#include "easpec/program.h"
#include "easpec/residual.h"
#include "easpec/state.h"

namespace easpec {

struct SpecializeOptions {
  std::size_t max_states = 10000;
  // kError or kFirstInRuleOrder; applies to conflicting positive updates.
  ConflictPolicy policy = ConflictPolicy::kError;
};

// Assigns labels s0, s1, ... to positive states in discovery order. Equal
// states always receive the same label.
class LabelRegistry {
 public:
  // Returns the state's label and whether it was assigned by this call.
  std::pair<std::string, bool> Intern(const State& positive_state);
  std::size_t size() const { return labels_.size(); }

 private:
  std::map<State, std::string> labels_;
};

// Polyvariant specializer: one K-rule per reachable positive state.
class Specializer {
 public:
  // `division` must be the output of BtaFixpoint for `program`. Entries of
  // `initial_positive` must name positive functions: dynamic ones form the
  // initial positive state, static ones the known tables. Throws
  // AnalysisError otherwise, or if the program already mentions K.
  Specializer(const Program& program, const Division& division,
              const State& initial_positive, SpecializeOptions options = {});

  // Substitutes known values into `term` and folds every subterm free of
  // negative functions to a literal.
  Term Fold(const Term& term, const State& positive) const;

  // Specializes `block` at one positive state. Successor states are
  // labelled through the registry; newly seen ones are queued.
  DecisionTree SpecializeBlock(const Block& block, const State& positive);

  // Worklist over reachable positive states. Throws AnalysisError when
  // more than max_states states are discovered.
  ResidualProgram Run();

  const State& initial_state() const { return initial_; }
  const LabelRegistry& labels() const { return labels_; }

 private:
  struct AgendaItem {
    const Rule* rule;
    // For conditionals: the branch to examine next.
    std::size_t branch = 0;
  };
  using Agenda = std::vector<AgendaItem>;
  using Assumptions = std::map<std::string, bool>;

  DecisionTree Build(Agenda agenda, std::vector<const UpdateRule*> pending,
                     Assumptions assumptions, std::vector<std::string> path,
                     const State& positive);
  DecisionTree MakeLeaf(const std::vector<const UpdateRule*>& pending,
                        const std::vector<std::string>& path, const State& positive);
  [[noreturn]] void ReportGrowth() const;

  const Program& program_;
  const Division& division_;
  SpecializeOptions options_;
  std::set<std::string> externals_;
  std::set<std::string> dynamic_;
  State statics_;
  State initial_;
  LabelRegistry labels_;
  std::deque<std::pair<std::string, State>> queue_;
  std::vector<std::pair<std::string, State>> discovered_;
};

ResidualProgram SpecializeProgram(const Program& program, const State& initial_positive,
                                  const Division& division,
                                  const SpecializeOptions& options = {});

}  // namespace easpec

#endif  // EASPEC_SPECIALIZER_H_
