#ifndef EASPEC_OPTIMIZER_H_
#define EASPEC_OPTIMIZER_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "easpec/residual.h"

namespace easpec {

// Control-flow view of a residual program: an edge from each K-rule to the
// successor of each of its leaves.
struct KGraph {
  std::string entry;
  std::map<std::string, std::set<std::string>> successors;
  std::map<std::string, std::set<std::string>> predecessors;

  static KGraph Build(const ResidualProgram& residual);
  std::set<std::string> Reachable() const;
};

// Drops K-rules whose body only moves K to a different label, redirecting
// every reference (including the entry) to the target. Alias cycles end as
// a single quiescent self-loop.
ResidualProgram EliminateAliases(ResidualProgram residual);

// Merges K-rules whose bodies are identical up to update order. The
// earliest rule survives. Repeats until no two bodies coincide.
ResidualProgram MergeIdenticalBodies(ResidualProgram residual);

// Folds a straight-line K-rule B into its only predecessor A when A is a
// straight line jumping to B and neither rule's updates touch functions
// the other writes. B must not be the entry and must not jump back to A.
ResidualProgram CombineConsecutive(ResidualProgram residual);

// Removes K-rules unreachable from the entry.
ResidualProgram EliminateUnreachable(ResidualProgram residual);

struct PassReport {
  int round;
  std::string pass;
  std::size_t rules_before;
  std::size_t rules_after;
};

struct OptimizeResult {
  ResidualProgram program;
  std::vector<PassReport> report;
  int rounds = 0;
};

inline constexpr int kDefaultPassBudget = 64;

// True if some K-rule reads a declared external function.
bool ReadsExternals(const ResidualProgram& residual);

// True if some leaf updates one function twice, so that the demon may
// have to choose, and the choice depends on the move number.
bool MayConflict(const ResidualProgram& residual);

// Runs unreachable -> aliases -> merge -> combine until a round changes
// nothing or the budget is spent. Alias elimination and combining delete
// moves, and merging can end a run early by turning a K-only move into a
// no-op; each would shift oracle reads and seeded conflict choices. For
// residuals where either could happen only unreachable rules are removed.
OptimizeResult OptimizeWithReport(ResidualProgram residual, int pass_budget = kDefaultPassBudget);
ResidualProgram Optimize(ResidualProgram residual, int pass_budget = kDefaultPassBudget);

// "round N pass: before -> after" lines.
std::string FormatReport(const std::vector<PassReport>& report);

}  // namespace easpec

#endif  // EASPEC_OPTIMIZER_H_
