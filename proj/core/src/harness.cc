#include "easpec/harness.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "easpec/bta.h"
#include "easpec/errors.h"
#include "easpec/optimizer.h"
#include "easpec/specializer.h"
#include "easpec/syntax.h"
#include "json.hpp"

namespace easpec {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorClass::kUsage, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t Rng::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::Uniform(std::int64_t lo, std::int64_t hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(Next());
  return lo + static_cast<std::int64_t>(Next() % span);
}

double Rng::Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  rng.Next();
  return rng.Next();
}

std::vector<Value> ValueDomain::Enumerate() const {
  std::vector<Value> out = choices;
  if (is_range()) {
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(Value::Int(v));
  }
  return out;
}

Value ValueDomain::Sample(Rng& rng) const {
  if (is_range()) return Value::Int(rng.Uniform(lo, hi));
  if (choices.empty()) return Value::Undef();
  return choices[static_cast<std::size_t>(rng.Uniform(0, static_cast<std::int64_t>(choices.size()) - 1))];
}

namespace {

[[noreturn]] void BadCase(const fs::path& file, const std::string& message) {
  throw Error(ErrorClass::kUsage, file.string() + ": " + message);
}

constexpr std::int64_t kMaxEnumeratedRange = 4096;

ValueDomain ParseDomain(const json& j, const fs::path& file) {
  ValueDomain domain;
  if (!j.is_object()) BadCase(file, "domain must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "int") {
      if (!value.is_array() || value.size() != 2) BadCase(file, "\"int\" needs [lo, hi]");
      domain.lo = value[0].get<std::int64_t>();
      domain.hi = value[1].get<std::int64_t>();
      if (domain.lo > domain.hi) BadCase(file, "empty int range");
    } else if (key == "atoms") {
      for (const auto& a : value) {
        std::string name = a.get<std::string>();
        if (name.empty()) BadCase(file, "empty atom name");
        domain.choices.push_back(Value::Atom(name));
      }
    } else if (key == "strings") {
      for (const auto& s : value) domain.choices.push_back(Value::Str(s.get<std::string>()));
    } else if (key == "bool") {
      domain.choices.push_back(Value::True());
      domain.choices.push_back(Value::False());
    } else if (key == "undef") {
      if (value.get<bool>()) domain.choices.push_back(Value::Undef());
    } else {
      BadCase(file, "unknown domain key '" + key + "'");
    }
  }
  if (domain.is_range() && !domain.choices.empty()) {
    BadCase(file, "a domain is either an int range or a list of choices");
  }
  if (!domain.is_range() && domain.choices.empty()) BadCase(file, "empty domain");
  return domain;
}

std::vector<ValueDomain> ParseArgs(const json& j, const char* key, const fs::path& file) {
  std::vector<ValueDomain> args;
  if (!j.contains(key)) return args;
  for (const auto& d : j.at(key)) {
    ValueDomain domain = ParseDomain(d, file);
    if (domain.is_range() && domain.hi - domain.lo >= kMaxEnumeratedRange) {
      BadCase(file, "argument range too large to enumerate");
    }
    args.push_back(std::move(domain));
  }
  return args;
}

std::vector<Tuple> ArgumentTuples(const std::vector<ValueDomain>& args) {
  std::vector<Tuple> tuples = {Tuple{}};
  for (const ValueDomain& domain : args) {
    std::vector<Tuple> next;
    for (const Tuple& prefix : tuples) {
      for (const Value& v : domain.Enumerate()) {
        Tuple t = prefix;
        t.push_back(v);
        next.push_back(std::move(t));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

fs::path Resolve(const fs::path& base, const json& j, const char* key) {
  return base / j.at(key).get<std::string>();
}

}  // namespace

CorpusCase LoadCase(const fs::path& case_file) {
  json j;
  try {
    j = json::parse(ReadFile(case_file));
  } catch (const json::exception& e) {
    BadCase(case_file, e.what());
  }
  fs::path base = case_file.parent_path();
  CorpusCase c;
  try {
    c.name = j.value("name", case_file.stem().string());
    c.program = Resolve(base, j, "program");
    c.division = Resolve(base, j, "division");
    c.positive_state = Resolve(base, j, "positive_state");
    if (j.contains("fixed_negative")) c.fixed_negative = Resolve(base, j, "fixed_negative");
    if (j.contains("subject")) c.subject = Resolve(base, j, "subject");
    c.steps = j.value("steps", c.steps);
    c.trials = j.value("trials", c.trials);
    if (j.contains("specialize_policy")) {
      auto policy = ParsePolicy(j.at("specialize_policy").get<std::string>());
      if (!policy) BadCase(case_file, "unknown specialize_policy");
      c.specialize_policy = *policy;
    }
    for (const auto& g : j.value("negative", json::array())) {
      TableGenerator gen;
      gen.function = g.at("function").get<std::string>();
      gen.args = ParseArgs(g, "args", case_file);
      gen.value = ParseDomain(g.at("value"), case_file);
      gen.density = g.value("density", 1.0);
      c.negative.push_back(std::move(gen));
    }
    for (const auto& g : j.value("oracle", json::array())) {
      OracleGenerator gen;
      gen.function = g.at("function").get<std::string>();
      gen.args = ParseArgs(g, "args", case_file);
      gen.value = ParseDomain(g.at("value"), case_file);
      gen.steps = g.at("steps").get<std::int64_t>();
      gen.density = g.value("density", 1.0);
      c.oracle.push_back(std::move(gen));
    }
    if (j.contains("golden")) {
      const json& golden = j.at("golden");
      if (golden.contains("residual")) c.golden_residual = Resolve(base, golden, "residual");
      if (golden.contains("optimized")) c.golden_optimized = Resolve(base, golden, "optimized");
    }
  } catch (const json::exception& e) {
    BadCase(case_file, e.what());
  }
  return c;
}

std::vector<CorpusCase> LoadCorpus(const fs::path& directory) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > 10 &&
        name.compare(name.size() - 10, 10, ".case.json") == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusCase> cases;
  for (const fs::path& f : files) cases.push_back(LoadCase(f));
  return cases;
}

LoadedCase LoadCaseFiles(const CorpusCase& spec) {
  LoadedCase loaded;
  loaded.spec = spec;
  loaded.program = ParseProgram(ReadFile(spec.program), spec.program.string());
  std::vector<Diagnostic> problems = ValidateProgram(loaded.program);
  if (!problems.empty()) {
    throw AnalysisError(spec.program.string() + ": " + problems.front().ToString());
  }
  loaded.marks = ParseDivision(ReadFile(spec.division), spec.division.string());
  loaded.division = AnalyzeBindingTimes(loaded.program, loaded.marks);
  loaded.positive = ParseState(ReadFile(spec.positive_state), spec.positive_state.string());
  if (spec.fixed_negative) {
    loaded.fixed_negative =
        ParseState(ReadFile(*spec.fixed_negative), spec.fixed_negative->string());
  }
  auto require_negative = [&](const std::string& fname, const std::string& where) {
    if (!loaded.division.IsNegative(fname)) {
      throw Error(ErrorClass::kUsage, spec.name + ": " + where + " supplies '" + fname +
                                          "', which the division classifies " +
                                          std::string(BindingTimeName(loaded.division.Get(fname))));
    }
  };
  for (const TableGenerator& gen : spec.negative) require_negative(gen.function, "negative generator");
  for (const OracleGenerator& gen : spec.oracle) require_negative(gen.function, "oracle generator");
  for (const auto& [fname, table] : loaded.fixed_negative.tables()) {
    require_negative(fname, "fixed negative state");
  }
  return loaded;
}

ResidualProgram SpecializeCase(const LoadedCase& loaded, bool optimize) {
  SpecializeOptions options;
  options.policy = loaded.spec.specialize_policy;
  ResidualProgram residual =
      SpecializeProgram(loaded.program, loaded.positive, loaded.division, options);
  return optimize ? Optimize(std::move(residual)) : residual;
}

State GenerateNegativeState(const CorpusCase& spec, Rng& rng) {
  State state;
  for (const TableGenerator& gen : spec.negative) {
    for (const Tuple& args : ArgumentTuples(gen.args)) {
      if (gen.density < 1.0 && rng.Unit() >= gen.density) continue;
      state.Set(gen.function, args, gen.value.Sample(rng));
    }
  }
  return state;
}

OracleTrace GenerateOracle(const CorpusCase& spec, Rng& rng) {
  OracleTrace trace;
  for (const OracleGenerator& gen : spec.oracle) {
    std::vector<Tuple> tuples = ArgumentTuples(gen.args);
    for (std::int64_t step = 0; step < gen.steps; ++step) {
      for (const Tuple& args : tuples) {
        if (gen.density < 1.0 && rng.Unit() >= gen.density) continue;
        Value v = gen.value.Sample(rng);
        if (!v.is_undef()) trace.Insert(step, gen.function, args, v);
      }
    }
  }
  return trace;
}

std::string DescribeDifference(const State& left, const State& right, std::size_t limit) {
  std::set<std::pair<std::string, Tuple>> locations;
  for (const State* s : {&left, &right}) {
    for (const auto& [fname, table] : s->tables()) {
      for (const auto& [args, value] : table) locations.emplace(fname, args);
    }
  }
  std::string out;
  std::size_t shown = 0;
  for (const auto& [fname, args] : locations) {
    Value a = left.Get(fname, args);
    Value b = right.Get(fname, args);
    if (a == b) continue;
    if (shown == limit) {
      out += ", ...";
      break;
    }
    if (shown > 0) out += ", ";
    out += fname + TupleToString(args) + ": left " + a.ToString() + ", right " + b.ToString();
    ++shown;
  }
  return out;
}

namespace {

struct Outcome {
  bool quiescent = false;
  std::optional<std::string> error;
};

Outcome RunToEnd(Machine& machine, std::int64_t steps) {
  Outcome outcome;
  try {
    for (std::int64_t i = 0; i < steps; ++i) {
      if (!machine.Step()) {
        outcome.quiescent = true;
        break;
      }
    }
  } catch (const Error& e) {
    outcome.error = e.what();
  }
  return outcome;
}

std::optional<std::string> TryStep(Machine& machine, bool& moved) {
  try {
    moved = machine.Step();
  } catch (const Error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace

std::string DiffReport::ToString() const {
  std::string out = "trials: " + std::to_string(trials) + "\n";
  out += "mismatches: " + std::to_string(mismatches.size()) + "\n";
  out += "inconclusive: " + std::to_string(inconclusive) + "\n";
  out += "both failed: " + std::to_string(both_failed) + "\n";
  for (const std::string& w : warnings) out += "warning: " + w + "\n";
  for (const Mismatch& m : mismatches) {
    std::ostringstream seed;
    seed << std::hex << m.trial_seed;
    out += "trial " + std::to_string(m.trial) + " (seed 0x" + seed.str() + "): " + m.detail + "\n";
  }
  return out;
}

DiffReport DiffTest(const Executable& left, const Executable& right,
                    const std::set<std::string>& compared, const CorpusCase& spec,
                    const DiffOptions& options) {
  DiffReport report;
  report.trials = options.trials;
  if (options.trials <= 0) report.warnings.push_back("no trials run; the comparison is vacuous");
  for (int trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t trial_seed = MixSeed(options.seed, static_cast<std::uint64_t>(trial));
    Rng rng(trial_seed);
    State negative = GenerateNegativeState(spec, rng);
    OracleTrace oracle = GenerateOracle(spec, rng);
    RunOptions run;
    run.max_steps = options.steps;
    run.seed = trial_seed;
    run.policy = options.policy;
    State left_init = negative;
    left_init.Merge(left.base);
    State right_init = negative;
    right_init.Merge(right.base);
    Machine a(*left.program, left_init, &oracle, run);
    Machine b(*right.program, right_init, &oracle, run);
    auto mismatch = [&](std::string detail) {
      report.mismatches.push_back(Mismatch{trial, trial_seed, std::move(detail)});
    };

    if (options.mode == CompareMode::kFinalState) {
      Outcome oa = RunToEnd(a, options.steps);
      Outcome ob = RunToEnd(b, options.steps);
      if (oa.error && ob.error) {
        ++report.both_failed;
      } else if (oa.error || ob.error) {
        mismatch(oa.error ? "left fails: " + *oa.error : "right fails: " + *ob.error);
      } else if (!oa.quiescent || !ob.quiescent) {
        ++report.inconclusive;
      } else {
        State sa = a.state().RestrictTo(compared);
        State sb = b.state().RestrictTo(compared);
        if (sa != sb) mismatch("final states differ: " + DescribeDifference(sa, sb));
      }
      continue;
    }

    for (std::int64_t move = 0;; ++move) {
      State sa = a.state().RestrictTo(compared);
      State sb = b.state().RestrictTo(compared);
      if (sa != sb) {
        mismatch("after " + std::to_string(move) + " moves: " + DescribeDifference(sa, sb));
        break;
      }
      if (move == options.steps) break;
      bool ma = false;
      bool mb = false;
      std::optional<std::string> ea = TryStep(a, ma);
      std::optional<std::string> eb = TryStep(b, mb);
      if (ea && eb) {
        ++report.both_failed;
        break;
      }
      if (ea || eb) {
        mismatch("move " + std::to_string(move) + ": " +
                 (ea ? "left fails: " + *ea : "right fails: " + *eb));
        break;
      }
      if (ma != mb) {
        mismatch("move " + std::to_string(move) + ": " +
                 (ma ? "right is quiescent, left moves" : "left is quiescent, right moves"));
        break;
      }
      if (!ma) break;
    }
  }
  return report;
}

DiffReport DiffTestCase(const LoadedCase& loaded, const ResidualProgram& residual,
                        const DiffOptions& options) {
  Program residual_program = ToProgram(residual);
  Executable left{&loaded.program, loaded.positive};
  left.base.Merge(loaded.fixed_negative);
  Executable right{&residual_program, loaded.fixed_negative};
  right.base.Merge(EntryState(residual));
  std::set<std::string> compared = loaded.division.Names(BindingTime::kNegative);
  DiffOptions effective = options;
  effective.mode = residual.optimized ? CompareMode::kFinalState : CompareMode::kPerStep;
  return DiffTest(left, right, compared, loaded.spec, effective);
}

}  // namespace easpec
