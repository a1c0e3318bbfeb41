#ifndef EASPEC_BTA_H_
#define EASPEC_BTA_H_

#include "easpec/division.h"
#include "easpec/program.h"

namespace easpec {

// Seeds the analysis from the user's marks: externals are forced negative,
// built-ins and unmarked static functions default to positive, unmarked
// dynamic functions stay unclassified. Marks on unknown names are dropped
// with a warning. Throws AnalysisError if the user marks K.
Division InitialDivision(const Division& user_marks, const Program& program);

// Completes a division to a total classification. Iterates, to a fixpoint:
//   - a dynamic function with an update whose arguments or right-hand side
//     read a negative function becomes negative (overriding a positive
//     mark);
//   - ApplySelfReferenceRule and ApplyUseSiteDemotion;
//   - an unclassified dynamic function all of whose updates read only
//     positive functions becomes positive.
// Static functions keep their initial classification except for use-site
// demotion. Whatever is still unclassified at the fixpoint becomes
// negative and the iteration is repeated.
Division BtaFixpoint(const Program& program, Division division);

// A dynamic function that reads itself in one of its own updates becomes
// negative, unless it carries a bounded mark and every one of its updates
// reads only itself and positive static functions.
Division ApplySelfReferenceRule(const Program& program, Division division);

// A positive non-built-in function of arity >= 1 that is applied anywhere
// to an argument mentioning a negative function becomes negative: the
// residual program could not look it up.
Division ApplyUseSiteDemotion(const Program& program, Division division);

// Convenience: InitialDivision followed by BtaFixpoint.
Division AnalyzeBindingTimes(const Program& program, const Division& user_marks);

}  // namespace easpec

#endif  // EASPEC_BTA_H_
