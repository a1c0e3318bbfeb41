#include <gtest/gtest.h>

#include "easpec/harness.h"
#include "easpec/optimizer.h"
#include "easpec/residual.h"

namespace easpec {
namespace {

class CorpusTest : public ::testing::TestWithParam<CorpusCase> {};

std::string CaseName(const ::testing::TestParamInfo<CorpusCase>& info) {
  std::string name;
  for (char c : info.param.name) name += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return name;
}

TEST_P(CorpusTest, ResidualMatchesGolden) {
  const CorpusCase& c = GetParam();
  ASSERT_TRUE(c.golden_residual.has_value());
  LoadedCase loaded = LoadCaseFiles(c);
  EXPECT_EQ(PrintResidual(SpecializeCase(loaded, false)), ReadFile(*c.golden_residual));
}

TEST_P(CorpusTest, OptimizedMatchesGolden) {
  const CorpusCase& c = GetParam();
  ASSERT_TRUE(c.golden_optimized.has_value());
  LoadedCase loaded = LoadCaseFiles(c);
  EXPECT_EQ(PrintResidual(SpecializeCase(loaded, true)), ReadFile(*c.golden_optimized));
}

TEST_P(CorpusTest, GoldensRoundTrip) {
  const CorpusCase& c = GetParam();
  for (const auto& path : {c.golden_residual, c.golden_optimized}) {
    std::string text = ReadFile(*path);
    ResidualProgram r = ParseResidual(text);
    EXPECT_EQ(PrintResidual(r), text);
    EXPECT_TRUE(CheckResidual(r).empty());
  }
}

TEST_P(CorpusTest, ResidualBisimulatesOriginal) {
  const CorpusCase& c = GetParam();
  LoadedCase loaded = LoadCaseFiles(c);
  DiffOptions options;
  options.trials = c.trials;
  options.steps = c.steps;
  DiffReport report = DiffTestCase(loaded, SpecializeCase(loaded, false), options);
  EXPECT_TRUE(report.ok()) << report.ToString();
  EXPECT_EQ(report.trials, c.trials);
}

TEST_P(CorpusTest, OptimizedReachesTheSameFinalState) {
  const CorpusCase& c = GetParam();
  LoadedCase loaded = LoadCaseFiles(c);
  DiffOptions options;
  options.trials = c.trials;
  options.steps = c.steps;
  DiffReport report = DiffTestCase(loaded, SpecializeCase(loaded, true), options);
  EXPECT_TRUE(report.ok()) << report.ToString();
  EXPECT_LE(report.inconclusive_rate(), 0.05) << report.ToString();
}

TEST_P(CorpusTest, OptimizingNeverAddsRules) {
  LoadedCase loaded = LoadCaseFiles(GetParam());
  EXPECT_LE(SpecializeCase(loaded, true).rules.size(), SpecializeCase(loaded, false).rules.size());
}

INSTANTIATE_TEST_SUITE_P(Cases, CorpusTest,
                         ::testing::ValuesIn(LoadCorpus(EASPEC_CORPUS_DIR)), CaseName);

TEST(CorpusContentsTest, CoversTheRequiredShapes) {
  std::vector<CorpusCase> cases = LoadCorpus(EASPEC_CORPUS_DIR);
  EXPECT_GE(cases.size(), 6u);
  int subjects = 0;
  bool strcpy = false;
  bool externals = false;
  bool conflicts = false;
  for (const CorpusCase& c : cases) {
    LoadedCase loaded = LoadCaseFiles(c);
    if (c.subject) {
      ++subjects;
      strcpy = strcpy || c.subject->filename() == "strcpy.mini";
    }
    externals = externals || !loaded.program.externals.empty();
    conflicts = conflicts || MayConflict(SpecializeCase(loaded, false));
  }
  EXPECT_GE(subjects, 3);
  EXPECT_TRUE(strcpy);
  EXPECT_TRUE(externals);
  EXPECT_TRUE(conflicts);
}

}  // namespace
}  // namespace easpec
