#include "easpec/specializer.h"

#include <algorithm>

#include "easpec/builtins.h"
#include "easpec/errors.h"

namespace easpec {

std::pair<std::string, bool> LabelRegistry::Intern(const State& positive_state) {
  auto it = labels_.find(positive_state);
  if (it != labels_.end()) return {it->second, false};
  std::string label = "s" + std::to_string(labels_.size());
  labels_.emplace(positive_state, label);
  return {label, true};
}

Specializer::Specializer(const Program& program, const Division& division,
                         const State& initial_positive, SpecializeOptions options)
    : program_(program), division_(division), options_(options) {
  std::map<std::string, FunctionInfo> kinds = InferKinds(program);
  if (kinds.count(std::string(kControlName)) > 0) {
    throw AnalysisError("program already uses the reserved name 'K'");
  }
  for (const auto& [name, info] : kinds) {
    if (info.kind == FunctionKind::kExternal) externals_.insert(name);
    if (info.kind == FunctionKind::kDynamic) dynamic_.insert(name);
    if (division.Get(name) == BindingTime::kUnclassified) {
      throw AnalysisError("division leaves '" + name + "' unclassified");
    }
  }
  for (const auto& [fname, table] : initial_positive.tables()) {
    if (!division.IsPositive(fname)) {
      throw AnalysisError("initial positive state assigns '" + fname +
                          "', which is not classified positive");
    }
    State& target = dynamic_.count(fname) > 0 ? initial_ : statics_;
    for (const auto& [args, value] : table) target.Set(fname, args, value);
  }
}

Term Specializer::Fold(const Term& term, const State& positive) const {
  if (term.is_literal()) return term;
  const std::string& f = term.fname();
  auto fail_overflow = [&](const RuntimeError& e) {
    throw AnalysisError(std::string("while folding ") + term.ToString() + " in positive state {" +
                        positive.ToInlineString() + "}: " + e.what());
  };
  if (f == "and" || f == "or") {
    Term first = Fold(term.args()[0], positive);
    if (first.is_literal()) {
      if (auto decided = ShortCircuit(f, first.literal())) return Term::Lit(*decided);
    }
    Term second = Fold(term.args()[1], positive);
    if (first.is_literal() && second.is_literal()) {
      Value args[] = {first.literal(), second.literal()};
      return Term::Lit(EvalBuiltin(f, args));
    }
    return Term::Apply(f, {std::move(first), std::move(second)});
  }
  std::vector<Term> args;
  args.reserve(term.arity());
  bool all_literal = true;
  for (const Term& a : term.args()) {
    args.push_back(Fold(a, positive));
    all_literal = all_literal && args.back().is_literal();
  }
  if (IsBuiltin(f)) {
    if (!all_literal) return Term::Apply(f, std::move(args));
    std::vector<Value> values;
    for (const Term& a : args) values.push_back(a.literal());
    try {
      return Term::Lit(EvalBuiltin(f, values));
    } catch (const RuntimeError& e) {
      fail_overflow(e);
    }
  }
  if (!division_.IsPositive(f)) return Term::Apply(f, std::move(args));
  if (!all_literal) {
    throw AnalysisError("binding-time violation: positive function '" + f +
                        "' applied to unknown argument in " + term.ToString());
  }
  Tuple tuple;
  for (const Term& a : args) tuple.push_back(a.literal());
  const State& source = dynamic_.count(f) > 0 ? positive : statics_;
  return Term::Lit(source.Get(f, tuple));
}

DecisionTree Specializer::SpecializeBlock(const Block& block, const State& positive) {
  Agenda agenda;
  for (auto it = block.rbegin(); it != block.rend(); ++it) agenda.push_back({&*it, 0});
  return Build(std::move(agenda), {}, {}, {}, positive);
}

DecisionTree Specializer::Build(Agenda agenda, std::vector<const UpdateRule*> pending,
                                Assumptions assumptions, std::vector<std::string> path,
                                const State& positive) {
  while (!agenda.empty()) {
    AgendaItem item = agenda.back();
    agenda.pop_back();
    if (item.rule->is_update()) {
      pending.push_back(&item.rule->update());
      continue;
    }
    const CondRule& cond = item.rule->cond();
    if (item.branch == cond.branches.size()) {
      for (auto it = cond.else_body.rbegin(); it != cond.else_body.rend(); ++it) {
        agenda.push_back({&*it, 0});
      }
      continue;
    }
    const CondBranch& branch = cond.branches[item.branch];
    Term guard = Fold(branch.guard, positive);
    std::optional<bool> decided;
    std::string key;
    if (guard.is_literal()) {
      decided = guard.literal().is_true();
    } else {
      key = guard.ToString();
      auto known = assumptions.find(key);
      if (known != assumptions.end()) decided = known->second;
    }
    auto take_branch = [&](Agenda& a) {
      for (auto it = branch.body.rbegin(); it != branch.body.rend(); ++it) {
        a.push_back({&*it, 0});
      }
    };
    if (decided) {
      if (*decided) {
        take_branch(agenda);
      } else {
        agenda.push_back({item.rule, item.branch + 1});
      }
      continue;
    }
    Agenda then_agenda = agenda;
    take_branch(then_agenda);
    Assumptions then_assumptions = assumptions;
    then_assumptions[key] = true;
    std::vector<std::string> then_path = path;
    then_path.push_back(key);
    DecisionTree then_tree = Build(std::move(then_agenda), pending,
                                   std::move(then_assumptions), std::move(then_path), positive);

    agenda.push_back({item.rule, item.branch + 1});
    assumptions[key] = false;
    path.push_back("not-true(" + key + ")");
    DecisionTree else_tree = Build(std::move(agenda), std::move(pending),
                                   std::move(assumptions), std::move(path), positive);
    return DecisionTree::MakeBranch(std::move(guard), std::move(then_tree),
                                    std::move(else_tree));
  }
  return MakeLeaf(pending, path, positive);
}

DecisionTree Specializer::MakeLeaf(const std::vector<const UpdateRule*>& pending,
                                   const std::vector<std::string>& path,
                                   const State& positive) {
  UpdateSet known;
  std::vector<UpdateRule> residual;
  for (const UpdateRule* u : pending) {
    if (division_.IsPositive(u->head)) {
      Tuple args;
      for (const Term& a : u->args) {
        Term folded = Fold(a, positive);
        if (!folded.is_literal()) {
          throw AnalysisError("binding-time violation: unknown argument in update of '" +
                              u->head + "'");
        }
        args.push_back(folded.literal());
      }
      Term value = Fold(u->rhs, positive);
      if (!value.is_literal()) {
        throw AnalysisError("binding-time violation: unknown value assigned to '" +
                            u->head + "'");
      }
      known.Add(Location{u->head, std::move(args)}, value.literal());
      continue;
    }
    UpdateRule r{u->head, {}, Fold(u->rhs, positive)};
    for (const Term& a : u->args) r.args.push_back(Fold(a, positive));
    if (std::find(residual.begin(), residual.end(), r) == residual.end()) {
      residual.push_back(std::move(r));
    }
  }
  if (!known.IsConsistent()) {
    if (options_.policy != ConflictPolicy::kFirstInRuleOrder) {
      std::string where;
      for (const std::string& p : path) where += (where.empty() ? "" : " and ") + p;
      try {
        ResolveConflicts(known, 0, 0, ConflictPolicy::kError);
      } catch (const RuntimeError& e) {
        throw AnalysisError(std::string("positive state {") + positive.ToInlineString() +
                            "}, path [" + where + "]: " + e.what());
      }
    }
    known = ResolveConflicts(known, 0, 0, ConflictPolicy::kFirstInRuleOrder);
  }
  State successor = ApplyUpdates(positive, known);
  auto [label, is_new] = labels_.Intern(successor);
  if (is_new) {
    if (labels_.size() > options_.max_states) ReportGrowth();
    queue_.emplace_back(label, successor);
    discovered_.emplace_back(label, successor);
  }
  return DecisionTree::MakeLeaf(std::move(residual), label);
}

void Specializer::ReportGrowth() const {
  std::string message = "specialization exceeded " + std::to_string(options_.max_states) +
                        " positive states";
  std::size_t n = discovered_.size();
  std::size_t first = n > 3 ? n - 3 : 0;
  std::set<std::string> growing;
  for (std::size_t i = first; i < n; ++i) {
    message += "\n  " + discovered_[i].first + ": {" + discovered_[i].second.ToInlineString() + "}";
    if (i > first) {
      for (const auto& [fname, table] : discovered_[i].second.tables()) {
        const auto& prev = discovered_[i - 1].second.tables();
        auto p = prev.find(fname);
        if (p == prev.end() || p->second != table) growing.insert(fname);
      }
    }
  }
  if (!growing.empty()) {
    message += "\nvalues keep changing for:";
    for (const std::string& g : growing) message += " " + g;
    message += "; consider classifying them negative (remove their bounded or positive marks)";
  }
  throw AnalysisError(message);
}

ResidualProgram Specializer::Run() {
  ResidualProgram residual;
  auto [entry, fresh] = labels_.Intern(initial_);
  (void)fresh;
  residual.entry = entry;
  queue_.emplace_back(entry, initial_);
  discovered_.emplace_back(entry, initial_);
  while (!queue_.empty()) {
    auto [label, state] = std::move(queue_.front());
    queue_.pop_front();
    DecisionTree body = SpecializeBlock(program_.rules, state);
    residual.rules.push_back(KRule{label, std::move(body), state.ToInlineString()});
  }
  residual.externals = program_.externals;

  auto join = [](const std::set<std::string>& names) {
    std::string out;
    for (const std::string& n : names) {
      if (IsBuiltin(n)) continue;
      out += (out.empty() ? "" : ", ") + n;
    }
    return out.empty() ? std::string("(none)") : out;
  };
  residual.header.push_back("residual program over the negative functions and K");
  residual.header.push_back("positive: " + join(division_.Names(BindingTime::kPositive)));
  residual.header.push_back("negative: " + join(division_.Names(BindingTime::kNegative)));
  residual.header.push_back("initial positive state: " + initial_.ToInlineString());
  return residual;
}

ResidualProgram SpecializeProgram(const Program& program, const State& initial_positive,
                                  const Division& division, const SpecializeOptions& options) {
  Specializer specializer(program, division, initial_positive, options);
  return specializer.Run();
}

}  // namespace easpec
