#include "easpec/program.h"

#include <set>
#include <utility>

#include "easpec/builtins.h"
#include "easpec/syntax.h"

namespace easpec {

Rule Rule::Update(std::string head, std::vector<Term> args, Term rhs) {
  return Rule{UpdateRule{std::move(head), std::move(args), std::move(rhs)}};
}

Rule Rule::If(Term guard, Block then_body, Block else_body) {
  CondRule cond;
  cond.branches.push_back(CondBranch{std::move(guard), std::move(then_body)});
  cond.else_body = std::move(else_body);
  return Rule{std::move(cond)};
}

bool Program::IsExternal(const std::string& name) const {
  for (const FunctionDecl& decl : externals) {
    if (decl.name == name) return true;
  }
  return false;
}

std::string_view KindName(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kDynamic:
      return "dynamic";
    case FunctionKind::kStatic:
      return "static";
    case FunctionKind::kExternal:
      return "external";
  }
  return "static";
}

std::string Diagnostic::ToString() const {
  std::string out = function + ": " + message;
  if (!rule.empty()) out += " (in rule: " + rule + ")";
  return out;
}

std::set<std::string> ReadNames(const UpdateRule& update) {
  std::set<std::string> names;
  for (const Term& arg : update.args) CollectFunctionNames(arg, names);
  CollectFunctionNames(update.rhs, names);
  return names;
}

namespace {

std::string Summarize(const Rule& rule) {
  if (rule.is_update()) {
    const UpdateRule& u = rule.update();
    return Term::Apply(u.head, u.args).ToString() + " := " + u.rhs.ToString();
  }
  return "if " + rule.cond().branches.front().guard.ToString() + " then ...";
}

class Validator {
 public:
  explicit Validator(const Program& program) : program_(program) {}

  std::vector<Diagnostic> Run() {
    for (const FunctionDecl& decl : program_.externals) Declare(decl, "external");
    for (const FunctionDecl& decl : program_.statics) Declare(decl, "static");
    for (const Rule& rule : program_.rules) VisitRule(rule, rule);
    if (auto cycle = FindMacroCycle(program_.macros)) {
      diagnostics_.push_back({cycle->front(), "", "cyclic macro definition"});
    }
    return std::move(diagnostics_);
  }

 private:
  void Declare(const FunctionDecl& decl, const std::string& what) {
    if (IsBuiltin(decl.name)) {
      Report(decl.name, "", "built-in name declared " + what);
      return;
    }
    if (program_.IsExternal(decl.name) && what == "static") {
      Report(decl.name, "", "declared both external and static");
    }
    NoteArity(decl.name, decl.arity, "");
  }

  void NoteArity(const std::string& name, std::size_t arity, const std::string& rule) {
    auto [it, inserted] = arities_.emplace(name, arity);
    if (!inserted && it->second != arity) {
      Report(name, rule,
             "arity mismatch: used with " + std::to_string(it->second) +
                 " and " + std::to_string(arity) + " arguments");
    }
  }

  void VisitTerm(const Term& term, const Rule& top) {
    if (term.is_literal()) return;
    if (auto info = LookupBuiltin(term.fname())) {
      if (static_cast<std::size_t>(info->arity) != term.arity()) {
        Report(term.fname(), Summarize(top),
               "built-in expects " + std::to_string(info->arity) + " arguments");
      }
    } else {
      NoteArity(term.fname(), term.arity(), Summarize(top));
    }
    for (const Term& arg : term.args()) VisitTerm(arg, top);
  }

  void VisitRule(const Rule& rule, const Rule& top) {
    if (rule.is_update()) {
      const UpdateRule& u = rule.update();
      std::string text = Summarize(top);
      if (IsBuiltin(u.head)) {
        Report(u.head, text, "built-in function updated");
      } else {
        if (program_.IsExternal(u.head)) {
          Report(u.head, text, "external function updated");
        }
        NoteArity(u.head, u.args.size(), text);
      }
      for (const Term& arg : u.args) VisitTerm(arg, top);
      VisitTerm(u.rhs, top);
      return;
    }
    for (const CondBranch& branch : rule.cond().branches) {
      VisitTerm(branch.guard, top);
      for (const Rule& r : branch.body) VisitRule(r, top);
    }
    for (const Rule& r : rule.cond().else_body) VisitRule(r, top);
  }

  void Report(const std::string& fname, const std::string& rule,
              const std::string& message) {
    diagnostics_.push_back({fname, rule, message});
  }

  const Program& program_;
  std::map<std::string, std::size_t> arities_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

std::vector<Diagnostic> ValidateProgram(const Program& program) {
  return Validator(program).Run();
}

std::map<std::string, FunctionInfo> InferKinds(const Program& program,
                                               const State* initial) {
  std::map<std::string, FunctionInfo> kinds;
  for (const BuiltinInfo& b : AllBuiltins()) {
    kinds[std::string(b.name)] =
        FunctionInfo{std::string(b.name), b.arity, FunctionKind::kStatic, true};
  }
  auto note = [&](const std::string& name, std::size_t arity) {
    if (IsBuiltin(name)) return;
    auto [it, inserted] = kinds.emplace(name, FunctionInfo{name, static_cast<int>(arity)});
    (void)it;
    (void)inserted;
  };
  for (const FunctionDecl& d : program.externals) note(d.name, d.arity);
  for (const FunctionDecl& d : program.statics) note(d.name, d.arity);
  ForEachTerm(program.rules, [&](const Term& t) {
    std::vector<const Term*> stack = {&t};
    while (!stack.empty()) {
      const Term* cur = stack.back();
      stack.pop_back();
      if (cur->is_literal()) continue;
      note(cur->fname(), cur->arity());
      for (const Term& a : cur->args()) stack.push_back(&a);
    }
  });
  ForEachUpdate(program.rules, [&](const UpdateRule& u) {
    note(u.head, u.args.size());
    kinds[u.head].kind = FunctionKind::kDynamic;
  });
  if (initial != nullptr) {
    for (const auto& [fname, table] : initial->tables()) {
      std::size_t arity = table.empty() ? 0 : table.begin()->first.size();
      note(fname, arity);
    }
  }
  for (const FunctionDecl& d : program.externals) {
    if (kinds[d.name].kind != FunctionKind::kDynamic) {
      kinds[d.name].kind = FunctionKind::kExternal;
    }
  }
  return kinds;
}

namespace {

Term Conjoin(const std::optional<Term>& path, Term local) {
  if (!path) return local;
  return Term::Apply("and", {*path, std::move(local)});
}

Term NotTrue(Term t) { return Term::Apply("not-true", {std::move(t)}); }

void Flatten(const Block& block, const std::optional<Term>& path, Block& out) {
  for (const Rule& rule : block) {
    if (rule.is_update()) {
      Term guard = path ? *path : Term::Lit(Value::True());
      out.push_back(Rule::If(std::move(guard), {rule}));
      continue;
    }
    // Branch i fires when guards 0..i-1 are not true and guard i is.
    std::optional<Term> earlier_failed;
    for (const CondBranch& branch : rule.cond().branches) {
      Term local = earlier_failed ? Term::Apply("and", {*earlier_failed, branch.guard})
                                  : branch.guard;
      Flatten(branch.body, Conjoin(path, std::move(local)), out);
      Term failed = NotTrue(branch.guard);
      earlier_failed = earlier_failed
                           ? Term::Apply("and", {*earlier_failed, std::move(failed)})
                           : std::move(failed);
    }
    if (!rule.cond().else_body.empty()) {
      Flatten(rule.cond().else_body, Conjoin(path, *earlier_failed), out);
    }
  }
}

}  // namespace

Block FlattenToBasicRules(const Program& program) {
  Block out;
  Flatten(program.rules, std::nullopt, out);
  return out;
}

}  // namespace easpec
