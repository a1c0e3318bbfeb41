#include <gtest/gtest.h>

#include "easpec/bta.h"
#include "easpec/errors.h"
#include "easpec/harness.h"
#include "easpec/interpreter.h"
#include "easpec/optimizer.h"
#include "easpec/specializer.h"
#include "random_programs.h"

namespace easpec {
namespace {

// Updates collected by `block`, or the error message it raised.
std::string Collect(const Block& block, const EvalContext& ctx) {
  try {
    return CollectUpdates(block, ctx).ToString();
  } catch (const RuntimeError& e) {
    return std::string("error: ") + e.what();
  }
}

TEST(FlattenPropertyTest, PreservesCollectedUpdates) {
  Rng rng(501);
  for (int i = 0; i < 500; ++i) {
    Program p = testing::RandomProgram(rng, {.max_depth = 3, .max_block = 3});
    State s = testing::RandomState(rng);
    OracleTrace oracle = testing::RandomOracle(rng, 1);
    std::set<std::string> externals = {"In"};
    EvalContext ctx{s, 0, &oracle, &externals};
    Block flat = FlattenToBasicRules(p);
    for (const Rule& rule : flat) {
      if (!rule.is_update()) {
        ASSERT_EQ(rule.cond().branches.size(), 1u);
        ASSERT_TRUE(rule.cond().else_body.empty());
        ASSERT_EQ(rule.cond().branches[0].body.size(), 1u);
        ASSERT_TRUE(rule.cond().branches[0].body[0].is_update());
      }
    }
    EXPECT_EQ(Collect(flat, ctx), Collect(p.rules, ctx));
  }
}

struct RandomSpecialization {
  LoadedCase loaded;
  ResidualProgram residual;
};

std::optional<RandomSpecialization> Specialize(Rng& rng) {
  RandomSpecialization out;
  out.loaded.program = testing::RandomProgram(rng);
  out.loaded.marks = testing::RandomMarks(rng);
  out.loaded.division = AnalyzeBindingTimes(out.loaded.program, out.loaded.marks);
  const Division& d = out.loaded.division;
  out.loaded.positive =
      testing::RandomState(rng).Restrict([&](const std::string& f) { return d.IsPositive(f); });
  out.loaded.spec = testing::RandomCase(d);
  try {
    out.residual = SpecializeProgram(out.loaded.program, out.loaded.positive, d,
                                     SpecializeOptions{300, ConflictPolicy::kError});
  } catch (const Error&) {
    return std::nullopt;
  }
  return out;
}

TEST(SpecializerPropertyTest, RandomResidualsBisimulate) {
  Rng rng(502);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    std::optional<RandomSpecialization> s = Specialize(rng);
    if (!s) continue;
    ++checked;
    DiffOptions options;
    options.trials = 10;
    options.steps = 40;
    options.seed = rng.Next();
    DiffReport report = DiffTestCase(s->loaded, s->residual, options);
    EXPECT_TRUE(report.ok()) << PrintResidual(s->residual) << report.ToString();
  }
  EXPECT_GT(checked, 75);
}

TEST(OptimizerPropertyTest, RandomOptimizedResidualsAgreeOnFinalStates) {
  Rng rng(503);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    std::optional<RandomSpecialization> s = Specialize(rng);
    if (!s) continue;
    ++checked;
    ResidualProgram optimized = Optimize(s->residual);
    DiffOptions options;
    options.trials = 10;
    options.steps = 40;
    options.seed = rng.Next();
    DiffReport report = DiffTestCase(s->loaded, optimized, options);
    EXPECT_TRUE(report.ok()) << PrintResidual(optimized) << report.ToString();
  }
  EXPECT_GT(checked, 75);
}

}  // namespace
}  // namespace easpec
