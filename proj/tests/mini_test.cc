#include <gtest/gtest.h>

#include "easpec/errors.h"
#include "easpec/harness.h"
#include "easpec/interpreter.h"
#include "easpec/mini.h"
#include "easpec/syntax.h"

namespace easpec {
namespace {

std::string Corpus(const std::string& rel) {
  return ReadFile(std::string(EASPEC_CORPUS_DIR) + "/" + rel);
}

TEST(MiniTest, CheckedInTablesAreUpToDate) {
  for (const char* name : {"strcpy", "sum", "swap", "echo"}) {
    State compiled = CompileMini(Corpus(std::string("mini/") + name + ".mini"));
    EXPECT_EQ(compiled, ParseState(Corpus(std::string("mini/") + name + ".est"))) << name;
  }
}

TEST(MiniTest, Tables) {
  State s = CompileMini("top: addi x, -2\n  bnz x, top\n  halt\n");
  EXPECT_EQ(s.Get("CurTask", {}), Value::Atom("l0"));
  EXPECT_EQ(s.Get("TaskType", {Value::Atom("l0")}), Value::Atom("addi"));
  EXPECT_EQ(s.Get("A", {Value::Atom("l0")}), Value::Atom("x"));
  EXPECT_EQ(s.Get("Imm", {Value::Atom("l0")}), Value::Int(-2));
  EXPECT_EQ(s.Get("NextTask", {Value::Atom("l0")}), Value::Atom("l1"));
  EXPECT_EQ(s.Get("Target", {Value::Atom("l1")}), Value::Atom("l0"));
  EXPECT_TRUE(s.Get("NextTask", {Value::Atom("l2")}).is_undef());
}

TEST(MiniTest, Errors) {
  EXPECT_THROW(CompileMini("frob x\n"), ParseError);
  EXPECT_THROW(CompileMini("bnz x, nowhere\n"), ParseError);
  EXPECT_THROW(CompileMini("a: halt\na: halt\n"), ParseError);
  EXPECT_THROW(CompileMini("addi x\n"), ParseError);
  EXPECT_THROW(CompileMini("addi x, y\n"), ParseError);
}

TEST(MiniTest, StripComments) {
  EXPECT_EQ(StripComments("-- header\n\nhalt   -- stop\n  \n"), "halt\n");
}

// The interpreter runs compiled subjects: strcpy copies up to the zero.
TEST(MiniTest, InterpreterRunsStrcpy) {
  Program interp = ParseProgram(Corpus("mini/interp.eal"));
  State s = CompileMini(Corpus("mini/strcpy.mini"));
  s.Merge(ParseState(
      "Var(t) = 100\nVar(s) = 200\n"
      "Memory(100) = 5\nMemory(101) = 6\nMemory(102) = 0\nMemory(103) = 9\n"));
  RunOptions options;
  options.max_steps = 1000;
  RunTrace trace = easpec::Run(interp, s, options);
  ASSERT_TRUE(trace.quiescent);
  const State& out = trace.final_state();
  EXPECT_EQ(out.Get("Memory", {Value::Int(200)}), Value::Int(5));
  EXPECT_EQ(out.Get("Memory", {Value::Int(201)}), Value::Int(6));
  EXPECT_EQ(out.Get("Memory", {Value::Int(202)}), Value::Int(0));
  EXPECT_TRUE(out.Get("Memory", {Value::Int(203)}).is_undef());
}

}  // namespace
}  // namespace easpec
