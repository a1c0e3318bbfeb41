#ifndef EASPEC_INTERPRETER_H_
#define EASPEC_INTERPRETER_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "easpec/program.h"
#include "easpec/state.h"

namespace easpec {

// How the demon picks among contradictory updates to one location.
enum class ConflictPolicy {
  // A pure function of (seed, move number, location, candidate values).
  kSeededRandom,
  // The candidate collected first, in depth-first rule order.
  kFirstInRuleOrder,
  // Conflicts are an error.
  kError,
};

std::string_view PolicyName(ConflictPolicy policy);
std::optional<ConflictPolicy> ParsePolicy(std::string_view name);

// Everything term evaluation reads.
struct EvalContext {
  const State& state;
  std::int64_t step = 0;
  const OracleTrace* oracle = nullptr;
  const std::set<std::string>* externals = nullptr;
};

// Literals evaluate to themselves; built-ins compute (strict in undef,
// except the total equality and the short-circuit `and`/`or`); externals
// consult the oracle at the current move; everything else is a table
// lookup. Throws RuntimeError on overflow, naming the term.
Value EvalTerm(const Term& term, const EvalContext& ctx);

// Fires every rule of `block` against the same pre-state.
UpdateSet CollectUpdates(const Block& block, const EvalContext& ctx);

// Keeps exactly one triple per conflicting location. Throws RuntimeError
// under kError when a conflict exists.
UpdateSet ResolveConflicts(const UpdateSet& updates, std::uint64_t seed,
                           std::int64_t step, ConflictPolicy policy);

// Simultaneous assignment of a consistent update set.
State ApplyUpdates(const State& state, const UpdateSet& updates);

// True iff applying `updates` would change some location.
bool ChangesState(const State& state, const UpdateSet& updates);

struct RunOptions {
  std::int64_t max_steps = 100;
  std::uint64_t seed = 0;
  ConflictPolicy policy = ConflictPolicy::kSeededRandom;
};

struct TraceStep {
  std::int64_t step = 0;
  UpdateSet updates;
  // State after the move.
  State state;
};

struct RunTrace {
  State initial;
  std::vector<TraceStep> steps;
  // Set when a move changed nothing; that move is not recorded.
  bool quiescent = false;

  const State& final_state() const {
    return steps.empty() ? initial : steps.back().state;
  }
};

// Steps a program one move at a time. Holds references to the program and
// oracle, which must outlive it.
class Machine {
 public:
  Machine(const Program& program, State initial, const OracleTrace* oracle,
          RunOptions options);

  // Performs one move. Returns false, leaving the state untouched, when the
  // move would change nothing. Errors propagate as RuntimeError.
  bool Step();

  const State& state() const { return state_; }
  std::int64_t step() const { return step_; }
  const UpdateSet& last_updates() const { return last_updates_; }

 private:
  const Program& program_;
  const OracleTrace* oracle_;
  RunOptions options_;
  std::set<std::string> externals_;
  State state_;
  std::int64_t step_ = 0;
  UpdateSet last_updates_;
};

// Runs until quiescence or options.max_steps moves. Errors are rethrown
// with the move number prefixed.
RunTrace Run(const Program& program, const State& initial, const RunOptions& options,
             const OracleTrace& oracle = {});

// "step N: f(args) := v, ..." per move, in canonical order.
std::string FormatTrace(const RunTrace& trace);

}  // namespace easpec

#endif  // EASPEC_INTERPRETER_H_
