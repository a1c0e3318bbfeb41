#include <algorithm>

#include <gtest/gtest.h>

#include "easpec/errors.h"
#include "easpec/interpreter.h"
#include "easpec/syntax.h"
#include "random_programs.h"

namespace easpec {
namespace {

constexpr char kNumList[] =
    "if Num > 0 then Num := Num + 1 endif\n"
    "if MyList != nil then MyList := Tail(MyList) endif\n";

Value EvalIn(const std::string& term, const std::string& state) {
  State s = ParseState(state);
  return EvalTerm(ParseTerm(term), EvalContext{s});
}

UpdateSet Conflict() {
  UpdateSet u;
  u.Add(Location{"X", {}}, Value::Int(1));
  u.Add(Location{"X", {}}, Value::Int(2));
  u.Add(Location{"Y", {}}, Value::Int(3));
  return u;
}

TEST(EvalTest, Examples) {
  EXPECT_EQ(EvalIn("Num + 1", "Num = 5"), Value::Int(6));
  EXPECT_EQ(EvalIn("undef = undef", ""), Value::True());
  EXPECT_EQ(EvalIn("3 = undef", ""), Value::False());
  EXPECT_EQ(EvalIn("Tail(MyList)", "MyList = cons1\nTail(cons1) = cons2"), Value::Atom("cons2"));
  EXPECT_TRUE(EvalIn("Missing(1)", "").is_undef());
}

TEST(EvalTest, AndOrShortCircuit) {
  // The second operand would overflow if evaluated.
  const std::string boom = "9223372036854775807 + 1 > 0";
  EXPECT_EQ(EvalIn("and(1 = 2, " + boom + ")", ""), Value::False());
  EXPECT_EQ(EvalIn("or(1 = 1, " + boom + ")", ""), Value::True());
  EXPECT_THROW(EvalIn("and(1 = 1, " + boom + ")", ""), RuntimeError);
}

TEST(EvalTest, OverflowNamesTheTerm) {
  try {
    EvalIn("Num * 2", "Num = 9223372036854775807");
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_NE(std::string(e.what()).find("Num * 2"), std::string::npos) << e.what();
  }
}

TEST(EvalTest, ExternalsReadTheOracleAtTheCurrentStep) {
  OracleTrace oracle = ParseOracle("step 3: Input() = 7\n");
  std::set<std::string> externals = {"Input"};
  State s = ParseState("Input = 99");
  EXPECT_EQ(EvalTerm(ParseTerm("Input"), EvalContext{s, 3, &oracle, &externals}), Value::Int(7));
  EXPECT_TRUE(EvalTerm(ParseTerm("Input"), EvalContext{s, 2, &oracle, &externals}).is_undef());
}

TEST(CollectTest, NumListWithEmptyList) {
  Program p = ParseProgram(kNumList);
  State s = ParseState("Num = 5\nMyList = nil");
  EXPECT_EQ(CollectUpdates(p.rules, EvalContext{s}).ToString(), "Num := 6");
}

TEST(CollectTest, UndefGuardDoesNothing) {
  Program p = ParseProgram("if Missing > 0 then X := 1 endif\n");
  State s;
  EXPECT_TRUE(CollectUpdates(p.rules, EvalContext{s}).empty());
}

TEST(CollectTest, ParallelRulesAllFire) {
  Program p = ParseProgram("X := 1\nY := 2\n");
  State s;
  EXPECT_EQ(CollectUpdates(p.rules, EvalContext{s}).ToString(), "X := 1, Y := 2");
}

TEST(CollectTest, TermsUseThePreState) {
  Program p = ParseProgram("A := B\nB := A\n");
  State s = ParseState("A = 1\nB = 2");
  State next = ApplyUpdates(s, CollectUpdates(p.rules, EvalContext{s}));
  EXPECT_EQ(next, ParseState("A = 2\nB = 1"));
}

TEST(ConflictTest, ErrorPolicyNamesTheLocation) {
  try {
    ResolveConflicts(Conflict(), 0, 0, ConflictPolicy::kError);
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_NE(std::string(e.what()).find("X <- {1, 2}"), std::string::npos) << e.what();
  }
}

TEST(ConflictTest, SeededChoiceIsDeterministic) {
  UpdateSet first = ResolveConflicts(Conflict(), 42, 0, ConflictPolicy::kSeededRandom);
  EXPECT_TRUE(first.IsConsistent());
  EXPECT_EQ(first.size(), 2u);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(ResolveConflicts(Conflict(), 42, 0, ConflictPolicy::kSeededRandom), first);
  }
}

TEST(ConflictTest, SeededChoiceIgnoresCollectionOrder) {
  UpdateSet forward = Conflict();
  UpdateSet reversed;
  for (auto it = forward.triples().rbegin(); it != forward.triples().rend(); ++it) {
    reversed.Add(*it);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(ResolveConflicts(Conflict(), seed, 3, ConflictPolicy::kSeededRandom),
              ResolveConflicts(reversed, seed, 3, ConflictPolicy::kSeededRandom));
  }
}

TEST(ConflictTest, SeededChoiceUsesBothCandidates) {
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    UpdateSet u = ResolveConflicts(Conflict(), seed, 0, ConflictPolicy::kSeededRandom);
    for (const UpdateTriple& t : u.triples()) {
      if (t.location.fname == "X" && t.value == Value::Int(1)) ++ones;
    }
  }
  EXPECT_GT(ones, 50);
  EXPECT_LT(ones, 150);
}

TEST(ConflictTest, FirstInRuleOrder) {
  UpdateSet u = ResolveConflicts(Conflict(), 0, 0, ConflictPolicy::kFirstInRuleOrder);
  EXPECT_EQ(u.ToString(), "X := 1, Y := 3");
}

TEST(ConflictTest, ConflictFreeSetsPassThrough) {
  UpdateSet u;
  u.Add(Location{"X", {}}, Value::Int(1));
  u.Add(Location{"X", {}}, Value::Int(1));
  for (auto policy : {ConflictPolicy::kSeededRandom, ConflictPolicy::kFirstInRuleOrder,
                      ConflictPolicy::kError}) {
    EXPECT_EQ(ResolveConflicts(u, 9, 9, policy), u);
  }
}

TEST(ApplyTest, Examples) {
  UpdateSet u;
  u.Add(Location{"Num", {}}, Value::Int(6));
  EXPECT_EQ(ApplyUpdates(ParseState("Num = 5"), u), ParseState("Num = 6"));
  UpdateSet erase;
  erase.Add(Location{"Num", {}}, Value::Undef());
  EXPECT_TRUE(ApplyUpdates(ParseState("Num = 5"), erase).empty());
}

TEST(RunTest, NumGrowsForever) {
  RunOptions options;
  options.max_steps = 3;
  RunTrace trace = easpec::Run(ParseProgram(kNumList), ParseState("Num = 5\nMyList = nil"), options);
  EXPECT_FALSE(trace.quiescent);
  EXPECT_EQ(FormatTrace(trace), "step 0: Num := 6\nstep 1: Num := 7\nstep 2: Num := 8\n");
}

TEST(RunTest, QuiescentImmediately) {
  RunTrace trace = easpec::Run(ParseProgram(kNumList), ParseState("Num = 0\nMyList = nil"), {});
  EXPECT_TRUE(trace.quiescent);
  EXPECT_TRUE(trace.steps.empty());
}

TEST(RunTest, ListReachesNilAfterTwoMoves) {
  RunTrace trace = easpec::Run(ParseProgram(kNumList),
                       ParseState("Num = 0\nMyList = c1\nTail(c1) = c2\nTail(c2) = nil"), {});
  EXPECT_TRUE(trace.quiescent);
  EXPECT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.final_state().Get("MyList", {}), Value::Atom("nil"));
}

TEST(RunTest, IdempotentUpdatesAreQuiescent) {
  RunTrace trace = easpec::Run(ParseProgram("X := 1\n"), ParseState("X = 1"), {});
  EXPECT_TRUE(trace.quiescent);
  EXPECT_TRUE(trace.steps.empty());
}

TEST(RunTest, ErrorsCarryTheStepNumber) {
  RunOptions options;
  options.policy = ConflictPolicy::kError;
  Program p = ParseProgram("X := X + 1\nif X = 2 then X := 0 endif\n");
  try {
    easpec::Run(p, ParseState("X = 0"), options);
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("step 2: ", 0), 0u) << e.what();
  }
}

TEST(RunTest, OracleStepsCountMoves) {
  Program p = ParseProgram("external Input/0\nif Input != undef then Sum := Sum + Input endif\n");
  OracleTrace oracle = ParseOracle("step 0: Input() = 5\nstep 1: Input() = 7\n");
  RunTrace trace = easpec::Run(p, ParseState("Sum = 0"), {}, oracle);
  EXPECT_TRUE(trace.quiescent);
  EXPECT_EQ(trace.final_state().Get("Sum", {}), Value::Int(12));
}

// Properties over random programs.

TEST(InterpreterPropertyTest, FrameProperty) {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    Program p = testing::RandomProgram(rng);
    State s = testing::RandomState(rng);
    OracleTrace oracle = testing::RandomOracle(rng, 10);
    RunOptions options;
    options.max_steps = 10;
    options.seed = rng.Next();
    RunTrace trace;
    try {
      trace = easpec::Run(p, s, options, oracle);
    } catch (const RuntimeError&) {
      continue;
    }
    State prev = trace.initial;
    for (const TraceStep& step : trace.steps) {
      std::set<std::pair<std::string, Tuple>> written;
      for (const UpdateTriple& t : step.updates.triples()) {
        written.emplace(t.location.fname, t.location.args);
      }
      for (const State* st : std::initializer_list<const State*>{&prev, &step.state}) {
        for (const auto& [fname, table] : st->tables()) {
          for (const auto& [args, value] : table) {
            if (written.count({fname, args}) > 0) continue;
            EXPECT_EQ(prev.Get(fname, args), step.state.Get(fname, args));
          }
        }
      }
      prev = step.state;
    }
  }
}

TEST(InterpreterPropertyTest, RuleOrderDoesNotMatter) {
  Rng rng(102);
  for (int i = 0; i < 200; ++i) {
    Program p = testing::RandomProgram(rng);
    State s = testing::RandomState(rng);
    OracleTrace oracle = testing::RandomOracle(rng, 1);
    std::set<std::string> externals = {"In"};
    EvalContext ctx{s, 0, &oracle, &externals};
    UpdateSet base = CollectUpdates(p.rules, ctx);
    Block shuffled = p.rules;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(CollectUpdates(shuffled, ctx), base);
    if (shuffled.size() > 1) std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
    EXPECT_EQ(CollectUpdates(shuffled, ctx), base);
  }
}

// Outcome of a run that may overflow: the trace text or the error.
std::string Outcome(const Program& p, const State& s, const RunOptions& options,
                    const OracleTrace& oracle = {}) {
  try {
    RunTrace trace = easpec::Run(p, s, options, oracle);
    return FormatTrace(trace) + trace.final_state().ToString() +
           (trace.quiescent ? "quiescent" : "running");
  } catch (const RuntimeError& e) {
    return std::string("error: ") + e.what();
  }
}

TEST(InterpreterPropertyTest, RunsAreDeterministic) {
  Rng rng(103);
  for (int i = 0; i < 100; ++i) {
    Program p = testing::RandomProgram(rng);
    State s = testing::RandomState(rng);
    OracleTrace oracle = testing::RandomOracle(rng, 20);
    RunOptions options;
    options.max_steps = 20;
    options.seed = rng.Next();
    EXPECT_EQ(Outcome(p, s, options, oracle), Outcome(p, s, options, oracle));
  }
}

TEST(InterpreterPropertyTest, QuiescenceIsStable) {
  Rng rng(104);
  int quiescent_runs = 0;
  for (int i = 0; i < 200; ++i) {
    Program p = testing::RandomProgram(rng);
    OracleTrace oracle = testing::RandomOracle(rng, 30);
    RunOptions options;
    options.seed = rng.Next();
    Machine machine(p, testing::RandomState(rng), &oracle, options);
    try {
      int moves = 0;
      while (moves < 30 && machine.Step()) ++moves;
      if (moves == 30) continue;
    } catch (const RuntimeError&) {
      continue;
    }
    ++quiescent_runs;
    State frozen = machine.state();
    std::int64_t step = machine.step();
    for (int k = 0; k < 5; ++k) {
      EXPECT_FALSE(machine.Step());
      EXPECT_EQ(machine.state(), frozen);
      EXPECT_EQ(machine.step(), step);
    }
  }
  EXPECT_GT(quiescent_runs, 20);
}

// Without externals and with a policy independent of the move number, a
// quiescent state is quiescent from scratch too.
TEST(InterpreterPropertyTest, QuiescentStatesRestartQuiescent) {
  Rng rng(105);
  int quiescent_runs = 0;
  for (int i = 0; i < 200; ++i) {
    Program p = testing::RandomProgram(rng, {.externals = false});
    RunOptions options;
    options.max_steps = 30;
    options.policy = ConflictPolicy::kFirstInRuleOrder;
    RunTrace trace;
    try {
      trace = easpec::Run(p, testing::RandomState(rng), options);
    } catch (const RuntimeError&) {
      continue;
    }
    if (!trace.quiescent) continue;
    ++quiescent_runs;
    RunTrace again = easpec::Run(p, trace.final_state(), options);
    EXPECT_TRUE(again.quiescent);
    EXPECT_TRUE(again.steps.empty());
  }
  EXPECT_GT(quiescent_runs, 20);
}

}  // namespace
}  // namespace easpec
