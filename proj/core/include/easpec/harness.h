#ifndef EASPEC_HARNESS_H_
#define EASPEC_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "easpec/division.h"
#include "easpec/interpreter.h"
#include "easpec/program.h"
#include "easpec/residual.h"
#include "easpec/state.h"

namespace easpec {

// Reads a whole file. Throws Error(kUsage) if it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

// splitmix64. Sampling is done by hand so that results do not depend on the
// standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();
  // Uniform in [lo, hi].
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1).
  double Unit();

 private:
  std::uint64_t state_;
};

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

// A finite set of values to draw from. JSON forms:
//   {"int": [lo, hi]}   {"atoms": ["a", "b"]}   {"strings": ["x"]}   {"bool": true}
// A domain may also list "undef": true to include undef.
struct ValueDomain {
  std::vector<Value> choices;
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool is_range() const { return lo <= hi && choices.empty(); }
  std::vector<Value> Enumerate() const;
  Value Sample(Rng& rng) const;
};

// Random interpretation of one negative function: every argument tuple in
// the product of `args` receives a value with probability `density`.
struct TableGenerator {
  std::string function;
  std::vector<ValueDomain> args;
  ValueDomain value;
  double density = 1.0;
};

// Random values for one external function over moves [0, steps).
struct OracleGenerator {
  std::string function;
  std::vector<ValueDomain> args;
  ValueDomain value;
  std::int64_t steps = 0;
  double density = 1.0;
};

// A corpus entry: a program, its division and known data, and how to
// generate unknown data for differential testing. Paths are resolved
// against the directory of the case file.
struct CorpusCase {
  std::string name;
  std::filesystem::path program;
  std::filesystem::path division;
  std::filesystem::path positive_state;
  std::optional<std::filesystem::path> fixed_negative;
  // Subject source, for programs that interpret one.
  std::optional<std::filesystem::path> subject;
  std::vector<TableGenerator> negative;
  std::vector<OracleGenerator> oracle;
  std::int64_t steps = 200;
  int trials = 100;
  ConflictPolicy specialize_policy = ConflictPolicy::kError;
  std::optional<std::filesystem::path> golden_residual;
  std::optional<std::filesystem::path> golden_optimized;
};

// Throws Error(kUsage) on malformed case files.
CorpusCase LoadCase(const std::filesystem::path& case_file);
std::vector<CorpusCase> LoadCorpus(const std::filesystem::path& directory);

// A case with its files parsed and the division completed.
struct LoadedCase {
  CorpusCase spec;
  Program program;
  Division marks;
  Division division;
  State positive;
  State fixed_negative;
};

LoadedCase LoadCaseFiles(const CorpusCase& spec);

ResidualProgram SpecializeCase(const LoadedCase& loaded, bool optimize);

State GenerateNegativeState(const CorpusCase& spec, Rng& rng);
OracleTrace GenerateOracle(const CorpusCase& spec, Rng& rng);

// A program together with the part of its initial state that does not
// vary between trials.
struct Executable {
  const Program* program = nullptr;
  State base;
};

enum class CompareMode {
  // States restricted to the compared names must agree after every move,
  // and both sides must quiesce at the same move.
  kPerStep,
  // Only quiescent final states are compared. Trials where either side is
  // still running after the step budget are inconclusive.
  kFinalState,
};

struct DiffOptions {
  int trials = 100;
  std::int64_t steps = 200;
  std::uint64_t seed = 0;
  CompareMode mode = CompareMode::kPerStep;
  ConflictPolicy policy = ConflictPolicy::kSeededRandom;
};

struct Mismatch {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  std::string detail;
};

struct DiffReport {
  int trials = 0;
  int inconclusive = 0;
  int both_failed = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> warnings;

  bool ok() const { return mismatches.empty(); }
  double inconclusive_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(inconclusive) / trials;
  }
  std::string ToString() const;
};

// Runs `left` and `right` on the same generated negative states and oracle
// traces and compares them on `compared`.
DiffReport DiffTest(const Executable& left, const Executable& right,
                    const std::set<std::string>& compared, const CorpusCase& spec,
                    const DiffOptions& options);

// The usual comparison for a case: the original program against a residual
// of it, per-step unless the residual is optimized.
DiffReport DiffTestCase(const LoadedCase& loaded, const ResidualProgram& residual,
                        const DiffOptions& options);

// Lines describing the first differences between two states.
std::string DescribeDifference(const State& left, const State& right, std::size_t limit = 3);

}  // namespace easpec

#endif  // EASPEC_HARNESS_H_
