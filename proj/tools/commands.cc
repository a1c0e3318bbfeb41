#include "commands.h"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "easpec/bta.h"
#include "easpec/builtins.h"
#include "easpec/errors.h"
#include "easpec/harness.h"
#include "easpec/interpreter.h"
#include "easpec/mini.h"
#include "easpec/optimizer.h"
#include "easpec/residual.h"
#include "easpec/specializer.h"
#include "easpec/syntax.h"

namespace easpec::cli {

namespace {

int ExitFor(const Error& e) { return static_cast<int>(e.error_class()); }

std::string ErrorTag(Io io) { return io.color ? "\033[1;31merror:\033[0m " : "error: "; }
std::string WarningTag(Io io) { return io.color ? "\033[1;33mwarning:\033[0m " : "warning: "; }

// Runs `body`, reporting errors on io.err with their exit status.
template <typename Fn>
int Guarded(Io io, Fn&& body) {
  try {
    return body();
  } catch (const Error& e) {
    io.err << ErrorTag(io) << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    io.err << ErrorTag(io) << e.what() << "\n";
    return kExitUsage;
  }
}

ConflictPolicy PolicyOrThrow(const std::string& name) {
  std::optional<ConflictPolicy> policy = ParsePolicy(name);
  if (!policy) {
    throw Error(ErrorClass::kUsage, "unknown conflict policy '" + name +
                                        "' (expected seeded-random, first-in-rule-order or error)");
  }
  return *policy;
}

void WriteOutput(const std::string& path, const std::string& text, Io io) {
  if (path.empty() || path == "-") {
    io.out << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorClass::kUsage, "cannot write " + path);
  out << text;
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A state file, or a subject program for the register-machine interpreter.
State LoadState(const std::string& path) {
  std::string text = ReadFile(path);
  if (EndsWith(path, ".mini")) return CompileMini(text, path);
  return ParseState(text, path);
}

// Parses and validates; diagnostics go to io.err.
std::optional<Program> LoadProgram(const std::string& path, const std::string& text, Io io) {
  Program program = ParseProgram(text, path);
  std::vector<Diagnostic> problems = ValidateProgram(program);
  if (problems.empty()) return program;
  for (const Diagnostic& d : problems) io.err << path << ": " << d.ToString() << "\n";
  return std::nullopt;
}

}  // namespace

int CmdParse(const ParseArgs& args, Io io) {
  return Guarded(io, [&] {
    std::string text = ReadFile(args.file);
    std::optional<Program> program = LoadProgram(args.file, text, io);
    if (!program) return kExitParse;
    io.out << PrettyPrint(*program);
    if (args.kinds) {
      io.out << "\n";
      for (const auto& [name, info] : InferKinds(*program)) {
        if (info.builtin) continue;
        io.out << "-- " << name << "/" << info.arity << ": " << KindName(info.kind) << "\n";
      }
    }
    return kExitOk;
  });
}

int CmdRun(const RunArgs& args, Io io) {
  return Guarded(io, [&] {
    std::string text = ReadFile(args.file);
    std::optional<Program> program = LoadProgram(args.file, text, io);
    if (!program) return kExitParse;
    State initial;
    for (const std::string& path : args.states) initial.Merge(LoadState(path));
    if (auto entry = ReadHeaderField(text, "entry")) {
      if (initial.tables().count(std::string(kControlName)) == 0) {
        initial.Set(std::string(kControlName), {}, Value::Atom(*entry));
      }
    }
    OracleTrace oracle;
    if (!args.oracle.empty()) oracle = ParseOracle(ReadFile(args.oracle), args.oracle);
    if (args.steps < 0) throw Error(ErrorClass::kUsage, "--steps must be non-negative");
    RunOptions options;
    options.max_steps = args.steps;
    options.seed = args.seed;
    options.policy = PolicyOrThrow(args.policy);

    io.out << "-- initial state\n" << initial.ToString();
    Machine machine(*program, initial, &oracle, options);
    bool quiescent = false;
    try {
      for (std::int64_t i = 0; i < args.steps; ++i) {
        if (!machine.Step()) {
          quiescent = true;
          break;
        }
        if (args.trace) {
          io.out << "step " << machine.step() - 1 << ": " << machine.last_updates().ToString()
                 << "\n";
        }
      }
    } catch (const RuntimeError& e) {
      io.out << "-- state before failing move " << machine.step() << "\n"
             << machine.state().ToString();
      throw RuntimeError("step " + std::to_string(machine.step()) + ": " + e.what());
    }
    io.out << "-- final state after " << machine.step() << " moves ("
           << (quiescent ? "quiescent" : "step limit") << ")\n"
           << machine.state().ToString();
    return kExitOk;
  });
}

int CmdBta(const BtaArgs& args, Io io) {
  return Guarded(io, [&] {
    std::string text = ReadFile(args.file);
    std::optional<Program> program = LoadProgram(args.file, text, io);
    if (!program) return kExitParse;
    Division marks;
    if (!args.division.empty()) marks = ParseDivision(ReadFile(args.division), args.division);
    Division division = AnalyzeBindingTimes(*program, marks);
    for (const std::string& w : division.warnings) io.err << WarningTag(io) << w << "\n";
    WriteOutput(args.output, PrintDivision(division), io);
    return kExitOk;
  });
}

int CmdSpecialize(const SpecializeArgs& args, Io io) {
  return Guarded(io, [&] {
    std::string text = ReadFile(args.file);
    std::optional<Program> program = LoadProgram(args.file, text, io);
    if (!program) return kExitParse;
    Division marks;
    if (!args.division.empty()) marks = ParseDivision(ReadFile(args.division), args.division);
    Division division = AnalyzeBindingTimes(*program, marks);
    for (const std::string& w : division.warnings) io.err << WarningTag(io) << w << "\n";
    State positive;
    if (!args.state.empty()) positive = LoadState(args.state);
    SpecializeOptions options;
    options.max_states = args.max_states;
    options.policy = PolicyOrThrow(args.policy);
    if (options.policy == ConflictPolicy::kSeededRandom) {
      throw Error(ErrorClass::kUsage,
                  "specialize accepts --policy error or first-in-rule-order");
    }
    ResidualProgram residual = SpecializeProgram(*program, positive, division, options);
    if (args.optimize) {
      OptimizeResult result = OptimizeWithReport(std::move(residual));
      if (args.report) io.err << FormatReport(result.report);
      residual = std::move(result.program);
    }
    WriteOutput(args.output, PrintResidual(residual), io);
    return kExitOk;
  });
}

int CmdOptimize(const OptimizeArgs& args, Io io) {
  return Guarded(io, [&] {
    ResidualProgram residual = ParseResidual(ReadFile(args.file), args.file);
    for (const std::string& problem : CheckResidual(residual)) {
      throw AnalysisError(args.file + ": " + problem);
    }
    if (args.budget < 1) throw Error(ErrorClass::kUsage, "--budget must be positive");
    OptimizeResult result = OptimizeWithReport(std::move(residual), args.budget);
    if (args.report) io.err << FormatReport(result.report);
    WriteOutput(args.output, PrintResidual(result.program), io);
    return kExitOk;
  });
}

int CmdDiffTest(const DiffTestArgs& args, Io io) {
  return Guarded(io, [&] {
    CorpusCase spec = LoadCase(args.case_file);
    spec.program = args.original;
    LoadedCase loaded = LoadCaseFiles(spec);
    ResidualProgram residual = ParseResidual(ReadFile(args.residual), args.residual);
    for (const std::string& problem : CheckResidual(residual)) {
      throw AnalysisError(args.residual + ": " + problem);
    }
    DiffOptions options;
    options.trials = args.trials >= 0 ? args.trials : spec.trials;
    options.steps = args.steps >= 0 ? args.steps : spec.steps;
    options.seed = args.seed;
    options.policy = PolicyOrThrow(args.policy);
    DiffReport report = DiffTestCase(loaded, residual, options);
    io.out << "mode: " << (residual.optimized ? "final-state" : "per-step") << "\n"
           << report.ToString();
    return report.ok() ? kExitOk : kExitMismatch;
  });
}

int CmdMini(const MiniArgs& args, Io io) {
  return Guarded(io, [&] {
    State state = CompileMini(ReadFile(args.file), args.file);
    WriteOutput(args.output, state.ToString(), io);
    return kExitOk;
  });
}

int Main(int argc, const char* const* argv, Io io) {
  CLI::App app{"Interpreter and partial evaluator for sequential evolving algebras", "easpec"};
  app.require_subcommand(1);

  ParseArgs parse;
  CLI::App* parse_cmd = app.add_subcommand("parse", "Parse, validate and pretty-print a program");
  parse_cmd->add_option("file", parse.file, "Program file")->required();
  parse_cmd->add_flag("--kinds", parse.kinds, "Also list the inferred function kinds");

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Execute a program");
  run_cmd->add_option("file", run.file, "Program file")->required();
  run_cmd->add_option("--state", run.states, "Initial state file (repeatable; .mini compiles)");
  run_cmd->add_option("--oracle", run.oracle, "Oracle trace for external functions");
  run_cmd->add_option("--steps", run.steps, "Maximum number of moves")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed for conflict resolution")->capture_default_str();
  run_cmd->add_option("--policy", run.policy, "seeded-random | first-in-rule-order | error")
      ->capture_default_str();
  run_cmd->add_flag("--trace", run.trace, "Print the updates of every move");

  BtaArgs bta;
  CLI::App* bta_cmd = app.add_subcommand("bta", "Complete a division by binding-time analysis");
  bta_cmd->add_option("file", bta.file, "Program file")->required();
  bta_cmd->add_option("--division", bta.division, "User marks");
  bta_cmd->add_option("-o,--output", bta.output, "Output file (default stdout)");

  SpecializeArgs spec;
  CLI::App* spec_cmd = app.add_subcommand("specialize", "Specialize a program to a positive state");
  spec_cmd->add_option("file", spec.file, "Program file")->required();
  spec_cmd->add_option("--division", spec.division, "User marks");
  spec_cmd->add_option("--state", spec.state, "Initial positive state (.est or .mini)");
  spec_cmd->add_flag("-O,--optimize", spec.optimize, "Optimize the residual program");
  spec_cmd->add_option("--max-states", spec.max_states, "Limit on positive states")
      ->capture_default_str();
  spec_cmd->add_option("--policy", spec.policy, "error | first-in-rule-order")
      ->capture_default_str();
  spec_cmd->add_option("-o,--output", spec.output, "Output file (default stdout)");
  spec_cmd->add_flag("--report", spec.report, "Print optimizer pass statistics to stderr");

  OptimizeArgs opt;
  CLI::App* opt_cmd = app.add_subcommand("optimize", "Optimize a residual program");
  opt_cmd->add_option("file", opt.file, "Residual program file")->required();
  opt_cmd->add_option("-o,--output", opt.output, "Output file (default stdout)");
  opt_cmd->add_option("--budget", opt.budget, "Maximum optimizer rounds")->capture_default_str();
  opt_cmd->add_flag("--report", opt.report, "Print pass statistics to stderr");

  DiffTestArgs diff;
  CLI::App* diff_cmd =
      app.add_subcommand("difftest", "Compare a program with a residual on random inputs");
  diff_cmd->add_option("original", diff.original, "Original program")->required();
  diff_cmd->add_option("residual", diff.residual, "Residual program")->required();
  diff_cmd->add_option("--case", diff.case_file, "Corpus case describing the inputs")
      ->required();
  diff_cmd->add_option("--trials", diff.trials, "Number of trials (default from case)");
  diff_cmd->add_option("--steps", diff.steps, "Moves per trial (default from case)");
  diff_cmd->add_option("--seed", diff.seed, "Base seed")->capture_default_str();
  diff_cmd->add_option("--policy", diff.policy, "Conflict policy for both runs")
      ->capture_default_str();

  MiniArgs mini;
  CLI::App* mini_cmd =
      app.add_subcommand("mini", "Compile a register-machine subject program to a state");
  mini_cmd->add_option("file", mini.file, "Subject program (.mini)")->required();
  mini_cmd->add_option("-o,--output", mini.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, io.out, io.err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*parse_cmd) return CmdParse(parse, io);
  if (*run_cmd) return CmdRun(run, io);
  if (*bta_cmd) return CmdBta(bta, io);
  if (*spec_cmd) return CmdSpecialize(spec, io);
  if (*opt_cmd) return CmdOptimize(opt, io);
  if (*diff_cmd) return CmdDiffTest(diff, io);
  if (*mini_cmd) return CmdMini(mini, io);
  return kExitUsage;
}

}  // namespace easpec::cli
