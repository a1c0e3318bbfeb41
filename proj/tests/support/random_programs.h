#ifndef EASPEC_TESTS_SUPPORT_RANDOM_PROGRAMS_H_
#define EASPEC_TESTS_SUPPORT_RANDOM_PROGRAMS_H_

#include <string>

#include "easpec/division.h"
#include "easpec/harness.h"
#include "easpec/program.h"
#include "easpec/residual.h"
#include "easpec/state.h"

namespace easpec::testing {

// Small random programs over a fixed signature:
//   P, Q      nullary, atom-valued (a, b, c)
//   X, Y      nullary, int-valued
//   Z/1       int table keyed by atoms
//   Next/1    static atom table
//   In/0      external, int-valued (only when externals is set)
struct ProgramShape {
  int max_depth = 2;
  int max_block = 3;
  int max_term_depth = 2;
  bool externals = true;
};

Term RandomAtomTerm(Rng& rng, int depth);
Term RandomIntTerm(Rng& rng, int depth, bool externals);
Term RandomGuard(Rng& rng, int depth, bool externals);
Program RandomProgram(Rng& rng, const ProgramShape& shape = {});

// Values for every dynamic and static function of the signature, with
// some locations left undef.
State RandomState(Rng& rng);
OracleTrace RandomOracle(Rng& rng, std::int64_t steps);

// Random positive/negative/bounded marks on P, Q, X, Y, Z and Next.
Division RandomMarks(Rng& rng);

Value RandomValue(Rng& rng);

// Residual programs over X, Y and In with labels r0..r(n-1), built to
// contain aliases, duplicate bodies, straight-line chains and orphans.
ResidualProgram RandomResidual(Rng& rng, int max_rules = 8);

// Generator spec matching RandomState/RandomOracle for DiffTest.
CorpusCase RandomCase(const Division& division);

}  // namespace easpec::testing

#endif  // EASPEC_TESTS_SUPPORT_RANDOM_PROGRAMS_H_
