#ifndef EASPEC_MINI_H_
#define EASPEC_MINI_H_

#include <string>
#include <string_view>

#include "easpec/state.h"

namespace easpec {

// Compiles a subject program for the bundled register-machine interpreter
// into the static tables the interpreter reads:
//
//   TaskType(l) = op, A(l) = reg, B(l) = reg, Imm(l) = n,
//   Target(l) = label task, NextTask(l) = following task, CurTask = l0
//
// Source lines are "[label:] op operands", e.g.
//
//   loop: load c, t
//         bnz c, loop
//
// Ops: load A, B (A := *B); store A, B (*A := B); copy A, B (*A := *B);
// mov A, B; add A, B; addi A, n; set A, n; in A; bnz A, label; jmp label;
// halt. Registers are lowercase names. Throws ParseError.
State CompileMini(std::string_view source, std::string_view origin = "<mini>");

// Source text with comments and blank lines removed; the size measure for
// subject programs.
std::string StripComments(std::string_view text);

}  // namespace easpec

#endif  // EASPEC_MINI_H_
