#include "random_programs.h"

#include <set>
#include <vector>

namespace easpec::testing {

namespace {

const char* const kAtoms[] = {"a", "b", "c"};

Value RandomAtom(Rng& rng) { return Value::Atom(kAtoms[rng.Uniform(0, 2)]); }

Term Apply(std::string f, std::vector<Term> args = {}) { return Term::Apply(std::move(f), std::move(args)); }

Block RandomBlock(Rng& rng, const ProgramShape& shape, int depth);

Rule RandomUpdate(Rng& rng, const ProgramShape& shape) {
  const int td = shape.max_term_depth;
  switch (rng.Uniform(0, 4)) {
    case 0:
      return Rule::Update("P", {}, RandomAtomTerm(rng, td));
    case 1:
      return Rule::Update("Q", {}, RandomAtomTerm(rng, td));
    case 2:
      return Rule::Update("X", {}, RandomIntTerm(rng, td, shape.externals));
    case 3:
      return Rule::Update("Y", {}, RandomIntTerm(rng, td, shape.externals));
    default:
      return Rule::Update("Z", {RandomAtomTerm(rng, 1)}, RandomIntTerm(rng, td, shape.externals));
  }
}

Rule RandomRule(Rng& rng, const ProgramShape& shape, int depth) {
  if (depth >= shape.max_depth || rng.Uniform(0, 2) == 0) return RandomUpdate(rng, shape);
  CondRule cond;
  const int branches = static_cast<int>(rng.Uniform(1, 3));
  for (int i = 0; i < branches; ++i) {
    cond.branches.push_back(
        CondBranch{RandomGuard(rng, shape.max_term_depth, shape.externals),
                   RandomBlock(rng, shape, depth + 1)});
  }
  if (rng.Uniform(0, 1) == 0) cond.else_body = RandomBlock(rng, shape, depth + 1);
  return Rule{std::move(cond)};
}

Block RandomBlock(Rng& rng, const ProgramShape& shape, int depth) {
  Block block;
  const int n = static_cast<int>(rng.Uniform(1, shape.max_block));
  for (int i = 0; i < n; ++i) block.push_back(RandomRule(rng, shape, depth));
  return block;
}

}  // namespace

Value RandomValue(Rng& rng) {
  switch (rng.Uniform(0, 6)) {
    case 0:
      return Value::Undef();
    case 1:
      return Value::True();
    case 2:
      return Value::False();
    case 3:
      return Value::Str(rng.Uniform(0, 1) == 0 ? "x" : "y z");
    case 4:
      return RandomAtom(rng);
    default:
      return Value::Int(rng.Uniform(-3, 3));
  }
}

Term RandomAtomTerm(Rng& rng, int depth) {
  const std::int64_t pick = rng.Uniform(0, depth > 0 ? 3 : 2);
  switch (pick) {
    case 0:
      return Term::Lit(RandomAtom(rng));
    case 1:
      return Apply("P", {});
    case 2:
      return Apply("Q", {});
    default:
      return Apply("Next", {RandomAtomTerm(rng, depth - 1)});
  }
}

Term RandomIntTerm(Rng& rng, int depth, bool externals) {
  const std::int64_t leaves = externals ? 4 : 3;
  const std::int64_t pick = rng.Uniform(0, depth > 0 ? leaves + 3 : leaves);
  switch (pick) {
    case 0:
      return Term::Lit(Value::Int(rng.Uniform(-3, 3)));
    case 1:
      return Apply("X", {});
    case 2:
      return Apply("Y", {});
    case 3:
      return Apply("Z", {RandomAtomTerm(rng, 0)});
  }
  if (pick == 4 && externals) return Apply("In", {});
  static const char* const kOps[] = {"+", "-", "*"};
  const char* op = kOps[rng.Uniform(0, 2)];
  return Apply(op, {RandomIntTerm(rng, depth - 1, externals),
                    RandomIntTerm(rng, depth - 1, externals)});
}

Term RandomGuard(Rng& rng, int depth, bool externals) {
  const std::int64_t pick = rng.Uniform(0, depth > 0 ? 8 : 3);
  switch (pick) {
    case 0:
      return Apply("=", {RandomAtomTerm(rng, 1), RandomAtomTerm(rng, 1)});
    case 1: {
      static const char* const kCmp[] = {"<", "<=", ">", ">=", "=", "!="};
      return Apply(kCmp[rng.Uniform(0, 5)],
                   {RandomIntTerm(rng, 1, externals), RandomIntTerm(rng, 0, externals)});
    }
    case 2:
      return Apply("!=", {RandomAtomTerm(rng, 1), Term::Lit(RandomAtom(rng))});
    case 3:
      return Term::Lit(rng.Uniform(0, 3) == 0 ? Value::Undef() : Value::True());
    case 4:
    case 5:
      return Apply(pick == 4 ? "and" : "or",
                   {RandomGuard(rng, depth - 1, externals), RandomGuard(rng, depth - 1, externals)});
    case 6:
      return Apply("not", {RandomGuard(rng, depth - 1, externals)});
    case 7:
      return Apply("not-true", {RandomGuard(rng, depth - 1, externals)});
    default:
      // Not a boolean: guards on it never fire.
      return Apply("P", {});
  }
}

Program RandomProgram(Rng& rng, const ProgramShape& shape) {
  Program program;
  if (shape.externals) program.externals.push_back(FunctionDecl{"In", 0});
  program.rules = RandomBlock(rng, shape, 0);
  return program;
}

State RandomState(Rng& rng) {
  State s;
  if (rng.Uniform(0, 4) > 0) s.Set("P", {}, RandomAtom(rng));
  if (rng.Uniform(0, 4) > 0) s.Set("Q", {}, RandomAtom(rng));
  if (rng.Uniform(0, 4) > 0) s.Set("X", {}, Value::Int(rng.Uniform(-3, 3)));
  if (rng.Uniform(0, 4) > 0) s.Set("Y", {}, Value::Int(rng.Uniform(-3, 3)));
  for (const char* a : kAtoms) {
    if (rng.Uniform(0, 2) > 0) s.Set("Z", {Value::Atom(a)}, Value::Int(rng.Uniform(-3, 3)));
    if (rng.Uniform(0, 3) > 0) s.Set("Next", {Value::Atom(a)}, RandomAtom(rng));
  }
  return s;
}

OracleTrace RandomOracle(Rng& rng, std::int64_t steps) {
  OracleTrace trace;
  for (std::int64_t i = 0; i < steps; ++i) {
    if (rng.Uniform(0, 4) > 0) trace.Insert(i, "In", {}, Value::Int(rng.Uniform(-3, 3)));
  }
  return trace;
}

Division RandomMarks(Rng& rng) {
  Division marks;
  for (const char* name : {"P", "Q", "X", "Y", "Z", "Next"}) {
    switch (rng.Uniform(0, 3)) {
      case 0:
        marks.Set(name, BindingTime::kPositive, "user");
        break;
      case 1:
        marks.Set(name, BindingTime::kNegative, "user");
        break;
      default:
        break;
    }
    if (rng.Uniform(0, 1) == 0) marks.bounded.insert(name);
  }
  return marks;
}

CorpusCase RandomCase(const Division& division) {
  CorpusCase c;
  c.name = "random";
  ValueDomain ints;
  ints.lo = -3;
  ints.hi = 3;
  ValueDomain atoms;
  for (const char* a : kAtoms) atoms.choices.push_back(Value::Atom(a));
  auto add = [&](const std::string& f, std::vector<ValueDomain> args, const ValueDomain& value) {
    if (!division.IsNegative(f)) return;
    c.negative.push_back(TableGenerator{f, std::move(args), value, 0.8});
  };
  add("P", {}, atoms);
  add("Q", {}, atoms);
  add("X", {}, ints);
  add("Y", {}, ints);
  add("Z", {atoms}, ints);
  add("Next", {atoms}, atoms);
  c.oracle.push_back(OracleGenerator{"In", {}, ints, 60, 0.8});
  return c;
}

namespace {

UpdateRule RandomResidualUpdate(Rng& rng) {
  switch (rng.Uniform(0, 4)) {
    case 0:
      return UpdateRule{"X", {}, Term::Lit(Value::Int(rng.Uniform(0, 1)))};
    case 1:
      return UpdateRule{"Y", {}, Apply("+", {Apply("Y"), Term::Lit(Value::Int(1))})};
    case 2:
      return UpdateRule{"Y", {}, Apply("X")};
    case 3:
      return UpdateRule{"X", {}, Apply("-", {Apply("X"), Term::Lit(Value::Int(1))})};
    default:
      return UpdateRule{"W", {}, Apply("In")};
  }
}

DecisionTree RandomLeaf(Rng& rng, int labels) {
  std::vector<UpdateRule> updates;
  const int n = static_cast<int>(rng.Uniform(0, 2));
  std::set<std::string> heads;
  for (int i = 0; i < n; ++i) {
    UpdateRule u = RandomResidualUpdate(rng);
    if (heads.insert(u.head).second) updates.push_back(std::move(u));
  }
  return DecisionTree::MakeLeaf(std::move(updates), "r" + std::to_string(rng.Uniform(0, labels - 1)));
}

}  // namespace

ResidualProgram RandomResidual(Rng& rng, int max_rules) {
  ResidualProgram r;
  const int n = static_cast<int>(rng.Uniform(1, max_rules));
  r.entry = "r0";
  if (rng.Uniform(0, 1) == 0) r.externals.push_back(FunctionDecl{"In", 0});
  for (int i = 0; i < n; ++i) {
    DecisionTree body = RandomLeaf(rng, n);
    if (rng.Uniform(0, 2) == 0) {
      Term guard = Apply(">", {Apply("X"), Term::Lit(Value::Int(0))});
      body = DecisionTree::MakeBranch(std::move(guard), std::move(body), RandomLeaf(rng, n));
    }
    r.rules.push_back(KRule{"r" + std::to_string(i), std::move(body), ""});
  }
  return r;
}

}  // namespace easpec::testing
