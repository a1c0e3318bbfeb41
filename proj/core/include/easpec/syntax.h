#ifndef EASPEC_SYNTAX_H_
#define EASPEC_SYNTAX_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "easpec/division.h"
#include "easpec/program.h"
#include "easpec/state.h"

namespace easpec {

// Concrete syntax, in brief:
//
//   external Input/0
//   static Tail/1
//   macro INC(x) = x := x + 1
//   if Num > 0 then INC(Num) endif
//   if MyList != nil then
//     MyList := Tail(MyList)
//   elseif ... then ...
//   else ...
//   endif
//
// Function names start with an uppercase letter. Lowercase identifiers are
// atoms unless they are keywords or built-ins; 'Name writes an atom that
// would otherwise read as a function. Rules in a block are separated by
// newlines or commas. "--" starts a comment.

enum class FileRole { kProgram, kState, kDivision, kOracle };

struct SourceFile {
  std::string text;
  std::string origin;
  FileRole role = FileRole::kProgram;
};

struct ExpandedSource {
  std::string text;
  std::vector<MacroDef> macros;
};

// Removes macro definition lines (leaving them blank so line numbers are
// stable) and substitutes every macro use. Throws ParseError on cyclic,
// malformed or wrongly-applied macros.
ExpandedSource ExpandMacroDefinitions(std::string_view text,
                                      std::string_view origin = "<input>");
std::string ExpandMacros(std::string_view text);

// Returns the names along a reference cycle (first name repeated at the
// end), if the macro bodies refer to each other cyclically.
std::optional<std::vector<std::string>> FindMacroCycle(
    const std::vector<MacroDef>& macros);

Program ParseProgram(std::string_view text, std::string_view origin = "<input>");
Term ParseTerm(std::string_view text);

// Canonical text; ParseProgram(PrettyPrint(p)) == p.
std::string PrettyPrint(const Program& program);
std::string PrintBlock(const Block& block, int indent = 0);
std::string PrintRule(const Rule& rule, int indent = 0);

// Lines of the form "f(v1, ..., vr) = v" or "f = v".
State ParseState(std::string_view text, std::string_view origin = "<input>");

// Lines "positive: A, B", "negative: C", "bounded: A".
Division ParseDivision(std::string_view text, std::string_view origin = "<input>");
// Classification lines for user names, each preceded by a provenance
// comment. Built-in names are omitted.
std::string PrintDivision(const Division& division);

// Lines "step N: f(args) = v".
OracleTrace ParseOracle(std::string_view text, std::string_view origin = "<input>");

}  // namespace easpec

#endif  // EASPEC_SYNTAX_H_
