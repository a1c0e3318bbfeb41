#include "easpec/bta.h"

#include <map>

#include "easpec/builtins.h"
#include "easpec/errors.h"

namespace easpec {

namespace {

using UpdateIndex = std::map<std::string, std::vector<const UpdateRule*>>;

UpdateIndex IndexUpdates(const Program& program) {
  UpdateIndex index;
  ForEachUpdate(program.rules,
                [&](const UpdateRule& u) { index[u.head].push_back(&u); });
  return index;
}

bool SelfReferential(const std::string& f, const UpdateIndex& index) {
  auto it = index.find(f);
  if (it == index.end()) return false;
  for (const UpdateRule* u : it->second) {
    if (ReadNames(*u).count(f) > 0) return true;
  }
  return false;
}

// The shape a bounded mark vouches for: every update of `f` reads only `f`
// and positive static functions.
bool BoundedShape(const std::string& f, const UpdateIndex& index,
                  const std::map<std::string, FunctionInfo>& kinds,
                  const Division& division) {
  for (const UpdateRule* u : index.at(f)) {
    for (const std::string& name : ReadNames(*u)) {
      if (name == f) continue;
      auto info = kinds.find(name);
      if (info == kinds.end() || info->second.kind != FunctionKind::kStatic) return false;
      if (!division.IsPositive(name)) return false;
    }
  }
  return true;
}

bool AcceptedBounded(const std::string& f, const UpdateIndex& index,
                     const std::map<std::string, FunctionInfo>& kinds,
                     const Division& division) {
  return division.bounded.count(f) > 0 && BoundedShape(f, index, kinds, division);
}

Division SelfReference(const UpdateIndex& index,
                       const std::map<std::string, FunctionInfo>& kinds,
                       Division division) {
  for (const auto& [f, updates] : index) {
    if (division.IsNegative(f) || !SelfReferential(f, index)) continue;
    if (division.bounded.count(f) == 0) {
      division.Set(f, BindingTime::kNegative, "self-referential");
    } else if (!BoundedShape(f, index, kinds, division)) {
      division.Set(f, BindingTime::kNegative, "bounded mark rejected");
    }
  }
  return division;
}

bool MentionsNegative(const Term& t, const Division& division) {
  if (t.is_literal()) return false;
  if (division.IsNegative(t.fname())) return true;
  for (const Term& a : t.args()) {
    if (MentionsNegative(a, division)) return true;
  }
  return false;
}

void DemoteUses(const Term& t, Division& division) {
  if (t.is_literal()) return;
  for (const Term& a : t.args()) DemoteUses(a, division);
  if (t.arity() == 0 || IsBuiltin(t.fname()) || !division.IsPositive(t.fname())) return;
  for (const Term& a : t.args()) {
    if (MentionsNegative(a, division)) {
      division.Set(t.fname(), BindingTime::kNegative, "read at unknown point");
      return;
    }
  }
}

Division UseSiteDemotion(const Program& program, Division division) {
  ForEachTerm(program.rules, [&](const Term& t) { DemoteUses(t, division); });
  return division;
}

// One round of the dependency bullets. Returns true if anything changed.
bool DependencyRound(const UpdateIndex& index,
                     const std::map<std::string, FunctionInfo>& kinds,
                     Division& division) {
  bool changed = false;
  for (const auto& [f, updates] : index) {
    if (division.IsNegative(f)) continue;
    bool bounded = AcceptedBounded(f, index, kinds, division);
    std::string negative_read;
    bool all_positive = true;
    for (const UpdateRule* u : updates) {
      for (const std::string& name : ReadNames(*u)) {
        if (name == f && bounded) continue;
        BindingTime bt = division.Get(name);
        if (bt == BindingTime::kNegative && negative_read.empty()) negative_read = name;
        if (bt != BindingTime::kPositive) all_positive = false;
      }
    }
    if (!negative_read.empty()) {
      division.Set(f, BindingTime::kNegative, "references " + negative_read);
      changed = true;
    } else if (all_positive && division.Get(f) == BindingTime::kUnclassified) {
      division.Set(f, BindingTime::kPositive,
                   bounded ? "bounded self-reference" : "all updates read positive functions");
      changed = true;
    }
  }
  return changed;
}

}  // namespace

Division InitialDivision(const Division& user_marks, const Program& program) {
  std::map<std::string, FunctionInfo> kinds = InferKinds(program);
  Division division;
  auto marked = [&](const std::string& name) {
    return user_marks.Get(name) != BindingTime::kUnclassified;
  };
  for (const auto& [name, bt] : user_marks.classes) {
    if (name == kControlName) {
      throw AnalysisError("'K' is reserved for residual programs and cannot be marked");
    }
    if (kinds.count(name) == 0) {
      division.warnings.push_back("mark on unknown function '" + name + "' ignored");
    }
  }
  for (const std::string& name : user_marks.bounded) {
    if (name == kControlName) {
      throw AnalysisError("'K' is reserved for residual programs and cannot be marked");
    }
    if (kinds.count(name) == 0) {
      division.warnings.push_back("bounded mark on unknown function '" + name + "' ignored");
    } else {
      division.bounded.insert(name);
    }
  }
  for (const auto& [name, info] : kinds) {
    if (info.kind == FunctionKind::kExternal) {
      if (user_marks.IsPositive(name)) {
        division.warnings.push_back("external function '" + name +
                                    "' cannot be positive; classified negative");
      }
      division.Set(name, BindingTime::kNegative, "external");
    } else if (info.builtin) {
      division.Set(name, BindingTime::kPositive, "built-in");
    } else if (marked(name)) {
      division.Set(name, user_marks.Get(name), "user");
    } else if (info.kind == FunctionKind::kStatic) {
      division.Set(name, BindingTime::kPositive, "static");
    }
  }
  return division;
}

Division ApplySelfReferenceRule(const Program& program, Division division) {
  return SelfReference(IndexUpdates(program), InferKinds(program), std::move(division));
}

Division ApplyUseSiteDemotion(const Program& program, Division division) {
  return UseSiteDemotion(program, std::move(division));
}

Division BtaFixpoint(const Program& program, Division division) {
  UpdateIndex index = IndexUpdates(program);
  std::map<std::string, FunctionInfo> kinds = InferKinds(program);
  auto iterate = [&] {
    while (true) {
      Division before = division;
      division = SelfReference(index, kinds, std::move(division));
      DependencyRound(index, kinds, division);
      division = UseSiteDemotion(program, std::move(division));
      if (division.classes == before.classes) break;
    }
  };
  while (true) {
    iterate();
    bool defaulted = false;
    for (const auto& [name, info] : kinds) {
      if (division.Get(name) == BindingTime::kUnclassified) {
        division.Set(name, BindingTime::kNegative, "unresolved dependency");
        defaulted = true;
      }
    }
    if (!defaulted) break;
  }
  return division;
}

Division AnalyzeBindingTimes(const Program& program, const Division& user_marks) {
  return BtaFixpoint(program, InitialDivision(user_marks, program));
}

}  // namespace easpec
