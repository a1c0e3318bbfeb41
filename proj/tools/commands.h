#ifndef EASPEC_TOOLS_COMMANDS_H_
#define EASPEC_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace easpec::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitAnalysis = 3;
inline constexpr int kExitRuntime = 4;
inline constexpr int kExitMismatch = 5;

struct Io {
  std::ostream& out;
  std::ostream& err;
  // Highlight "error:" and "warning:" prefixes with ANSI colours.
  bool color = false;
};

struct ParseArgs {
  std::string file;
  bool kinds = false;
};

struct RunArgs {
  std::string file;
  std::vector<std::string> states;
  std::string oracle;
  std::int64_t steps = 100;
  std::uint64_t seed = 0;
  std::string policy = "seeded-random";
  bool trace = false;
};

struct BtaArgs {
  std::string file;
  std::string division;
  std::string output;
};

struct SpecializeArgs {
  std::string file;
  std::string division;
  std::string state;
  bool optimize = false;
  std::size_t max_states = 10000;
  std::string policy = "error";
  std::string output;
  bool report = false;
};

struct OptimizeArgs {
  std::string file;
  std::string output;
  int budget = 64;
  bool report = false;
};

struct DiffTestArgs {
  std::string original;
  std::string residual;
  std::string case_file;
  int trials = -1;
  std::int64_t steps = -1;
  std::uint64_t seed = 0;
  std::string policy = "seeded-random";
};

struct MiniArgs {
  std::string file;
  std::string output;
};

int CmdParse(const ParseArgs& args, Io io);
int CmdRun(const RunArgs& args, Io io);
int CmdBta(const BtaArgs& args, Io io);
int CmdSpecialize(const SpecializeArgs& args, Io io);
int CmdOptimize(const OptimizeArgs& args, Io io);
int CmdDiffTest(const DiffTestArgs& args, Io io);
int CmdMini(const MiniArgs& args, Io io);

// Parses argv and dispatches. Output goes to `io` rather than the process
// streams so callers can capture it.
int Main(int argc, const char* const* argv, Io io);

}  // namespace easpec::cli

#endif  // EASPEC_TOOLS_COMMANDS_H_
