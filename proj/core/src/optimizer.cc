#include "easpec/optimizer.h"

#include <deque>

namespace easpec {

KGraph KGraph::Build(const ResidualProgram& residual) {
  KGraph g;
  g.entry = residual.entry;
  for (const KRule& r : residual.rules) {
    g.successors[r.label];
    g.predecessors[r.label];
  }
  for (const KRule& r : residual.rules) {
    r.body.ForEachLeaf([&](const DecisionTree::Leaf& leaf) {
      g.successors[r.label].insert(leaf.successor);
      g.predecessors[leaf.successor].insert(r.label);
    });
  }
  return g;
}

std::set<std::string> KGraph::Reachable() const {
  std::set<std::string> seen = {entry};
  std::deque<std::string> queue = {entry};
  while (!queue.empty()) {
    std::string label = queue.front();
    queue.pop_front();
    auto it = successors.find(label);
    if (it == successors.end()) continue;
    for (const std::string& next : it->second) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

namespace {

void Rename(ResidualProgram& residual, const std::string& from, const std::string& to) {
  auto rename = [&](const std::string& label) { return label == from ? to : label; };
  for (KRule& r : residual.rules) r.body = r.body.MapSuccessors(rename);
  residual.entry = rename(residual.entry);
}

void Erase(ResidualProgram& residual, const std::string& label) {
  std::erase_if(residual.rules, [&](const KRule& r) { return r.label == label; });
}

std::set<std::string> WrittenNames(const std::vector<UpdateRule>& updates) {
  std::set<std::string> names;
  for (const UpdateRule& u : updates) names.insert(u.head);
  return names;
}

std::set<std::string> ReadNamesOf(const std::vector<UpdateRule>& updates) {
  std::set<std::string> names;
  for (const UpdateRule& u : updates) {
    std::set<std::string> r = ReadNames(u);
    names.insert(r.begin(), r.end());
  }
  return names;
}

bool Intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const std::string& x : a) {
    if (b.count(x) > 0) return true;
  }
  return false;
}

}  // namespace

ResidualProgram EliminateAliases(ResidualProgram residual) {
  while (true) {
    const KRule* alias = nullptr;
    for (const KRule& r : residual.rules) {
      if (r.body.is_leaf() && r.body.leaf().updates.empty() &&
          r.body.leaf().successor != r.label) {
        alias = &r;
        break;
      }
    }
    if (alias == nullptr) return residual;
    std::string from = alias->label;
    std::string to = alias->body.leaf().successor;
    Erase(residual, from);
    Rename(residual, from, to);
  }
}

ResidualProgram MergeIdenticalBodies(ResidualProgram residual) {
  while (true) {
    std::map<std::string, std::string> first_with_key;
    std::optional<std::pair<std::string, std::string>> merge;
    for (const KRule& r : residual.rules) {
      std::string key = r.body.CanonicalKey();
      auto [it, inserted] = first_with_key.emplace(key, r.label);
      if (!inserted) {
        merge = std::make_pair(r.label, it->second);
        break;
      }
    }
    if (!merge) return residual;
    Erase(residual, merge->first);
    Rename(residual, merge->first, merge->second);
  }
}

ResidualProgram CombineConsecutive(ResidualProgram residual) {
  while (true) {
    KGraph graph = KGraph::Build(residual);
    bool combined = false;
    for (KRule& a : residual.rules) {
      if (!a.body.is_leaf()) continue;
      const std::string& b_label = a.body.leaf().successor;
      if (b_label == a.label || b_label == residual.entry) continue;
      if (graph.predecessors[b_label] != std::set<std::string>{a.label}) continue;
      const KRule* b = residual.Find(b_label);
      if (b == nullptr || !b->body.is_leaf()) continue;
      const std::string& c_label = b->body.leaf().successor;
      if (c_label == a.label) continue;
      const std::vector<UpdateRule>& ua = a.body.leaf().updates;
      const std::vector<UpdateRule>& ub = b->body.leaf().updates;
      std::set<std::string> wa = WrittenNames(ua);
      std::set<std::string> wb = WrittenNames(ub);
      std::set<std::string> rb = ReadNamesOf(ub);
      if (Intersects(wa, rb) || Intersects(wb, ReadNamesOf(ua)) || Intersects(wa, wb)) continue;
      std::vector<UpdateRule> merged = ua;
      merged.insert(merged.end(), ub.begin(), ub.end());
      std::string c = c_label;
      std::string b_name = b_label;
      a.body = DecisionTree::MakeLeaf(std::move(merged), c);
      Erase(residual, b_name);
      combined = true;
      break;
    }
    if (!combined) return residual;
  }
}

ResidualProgram EliminateUnreachable(ResidualProgram residual) {
  std::set<std::string> reachable = KGraph::Build(residual).Reachable();
  std::erase_if(residual.rules,
                [&](const KRule& r) { return reachable.count(r.label) == 0; });
  return residual;
}

namespace {

struct Fingerprint {
  std::string entry;
  std::vector<std::pair<std::string, std::string>> rules;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint TakeFingerprint(const ResidualProgram& r) {
  Fingerprint f{r.entry, {}};
  for (const KRule& k : r.rules) f.rules.emplace_back(k.label, k.body.CanonicalKey());
  return f;
}

}  // namespace

bool ReadsExternals(const ResidualProgram& residual) {
  std::set<std::string> externals;
  for (const FunctionDecl& d : residual.externals) externals.insert(d.name);
  if (externals.empty()) return false;
  bool reads = false;
  for (const KRule& r : residual.rules) {
    ForEachTerm(r.body.ToBlock(), [&](const Term& t) {
      if (Intersects(FunctionNames(t), externals)) reads = true;
    });
  }
  return reads;
}

bool MayConflict(const ResidualProgram& residual) {
  bool may = false;
  for (const KRule& r : residual.rules) {
    r.body.ForEachLeaf([&](const DecisionTree::Leaf& leaf) {
      std::set<std::string> heads;
      for (const UpdateRule& u : leaf.updates) {
        if (!heads.insert(u.head).second) may = true;
      }
    });
  }
  return may;
}

OptimizeResult OptimizeWithReport(ResidualProgram residual, int pass_budget) {
  OptimizeResult result;
  // Oracle values and seeded conflict choices depend on the move number.
  // Aliases and combining delete moves; merging can make a K-only move
  // idempotent, so the residual quiesces where the original keeps going.
  // When the move number matters, only unreachable rules are dropped.
  auto identity = [](ResidualProgram r) { return r; };
  for (int round = 1; round <= pass_budget; ++round) {
    Fingerprint before = TakeFingerprint(residual);
    auto run = [&](const char* name, auto pass) {
      std::size_t n = residual.rules.size();
      residual = pass(std::move(residual));
      result.report.push_back(PassReport{round, name, n, residual.rules.size()});
    };
    run("eliminate-unreachable", EliminateUnreachable);
    // Judged on the reachable rules only, and again each round.
    const bool keep_moves = ReadsExternals(residual) || MayConflict(residual);
    auto pass = [&](const char* name, ResidualProgram (*fn)(ResidualProgram)) {
      if (keep_moves) {
        run(name, identity);
      } else {
        run(name, fn);
      }
    };
    pass("eliminate-aliases", EliminateAliases);
    pass("merge-identical-bodies", MergeIdenticalBodies);
    pass("combine-consecutive", CombineConsecutive);
    result.rounds = round;
    if (TakeFingerprint(residual) == before) break;
  }
  residual.optimized = true;
  result.program = std::move(residual);
  return result;
}

ResidualProgram Optimize(ResidualProgram residual, int pass_budget) {
  return OptimizeWithReport(std::move(residual), pass_budget).program;
}

std::string FormatReport(const std::vector<PassReport>& report) {
  std::string out;
  for (const PassReport& p : report) {
    out += "round " + std::to_string(p.round) + " " + p.pass + ": " +
           std::to_string(p.rules_before) + " -> " + std::to_string(p.rules_after) + "\n";
  }
  return out;
}

}  // namespace easpec
