#include "easpec/residual.h"

#include <algorithm>

#include "easpec/builtins.h"
#include "easpec/errors.h"
#include "easpec/syntax.h"

namespace easpec {

DecisionTree DecisionTree::MakeLeaf(std::vector<UpdateRule> updates, std::string successor) {
  DecisionTree t;
  t.node_ = Leaf{std::move(updates), std::move(successor)};
  return t;
}

DecisionTree DecisionTree::MakeBranch(Term guard, DecisionTree then_tree,
                                      DecisionTree else_tree) {
  DecisionTree t;
  t.node_ = BranchNode{std::move(guard),
                       std::make_shared<const DecisionTree>(std::move(then_tree)),
                       std::make_shared<const DecisionTree>(std::move(else_tree))};
  return t;
}

std::size_t DecisionTree::LeafCount() const {
  std::size_t n = 0;
  ForEachLeaf([&](const Leaf&) { ++n; });
  return n;
}

UpdateRule ControlUpdate(const std::string& label) {
  return UpdateRule{std::string(kControlName), {}, Term::Lit(Value::Atom(label))};
}

Block DecisionTree::ToBlock() const {
  Block block;
  if (is_leaf()) {
    for (const UpdateRule& u : leaf().updates) block.push_back(Rule{u});
    block.push_back(Rule{ControlUpdate(leaf().successor)});
    return block;
  }
  block.push_back(Rule::If(guard(), then_tree().ToBlock(), else_tree().ToBlock()));
  return block;
}

namespace {

std::string UpdateKey(const UpdateRule& u) {
  return Term::Apply(u.head, u.args).ToString() + " := " + u.rhs.ToString();
}

}  // namespace

std::string DecisionTree::CanonicalKey() const {
  if (is_leaf()) {
    std::vector<std::string> updates;
    for (const UpdateRule& u : leaf().updates) updates.push_back(UpdateKey(u));
    std::sort(updates.begin(), updates.end());
    std::string key = "[";
    for (const std::string& u : updates) key += u + ";";
    return key + "]->" + leaf().successor;
  }
  return "(" + guard().ToString() + "?" + then_tree().CanonicalKey() + ":" +
         else_tree().CanonicalKey() + ")";
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) {
    return a.leaf().updates == b.leaf().updates && a.leaf().successor == b.leaf().successor;
  }
  return a.guard() == b.guard() && a.then_tree() == b.then_tree() &&
         a.else_tree() == b.else_tree();
}

const KRule* ResidualProgram::Find(const std::string& label) const {
  for (const KRule& r : rules) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

std::set<std::string> ResidualProgram::Labels() const {
  std::set<std::string> labels;
  for (const KRule& r : rules) labels.insert(r.label);
  return labels;
}

namespace {

Term ControlGuard(const std::string& label) {
  return Term::Apply("=", {Term::Apply(std::string(kControlName)),
                           Term::Lit(Value::Atom(label))});
}

bool IsControlUpdate(const Rule& r) {
  return r.is_update() && r.update().head == kControlName && r.update().args.empty();
}

DecisionTree TreeFromBlock(const Block& block) {
  if (block.size() == 1 && !block.front().is_update()) {
    const CondRule& cond = block.front().cond();
    if (cond.branches.size() != 1) {
      throw AnalysisError("residual conditionals must have exactly one branch");
    }
    return DecisionTree::MakeBranch(cond.branches.front().guard,
                                    TreeFromBlock(cond.branches.front().body),
                                    TreeFromBlock(cond.else_body));
  }
  std::vector<UpdateRule> updates;
  std::optional<std::string> successor;
  for (const Rule& r : block) {
    if (!r.is_update()) {
      throw AnalysisError("residual leaf mixes updates and conditionals");
    }
    if (IsControlUpdate(r)) {
      const Term& rhs = r.update().rhs;
      if (!rhs.is_literal() || !rhs.literal().is_atom() || successor) {
        throw AnalysisError("each residual leaf must assign K exactly one label");
      }
      successor = rhs.literal().text();
      continue;
    }
    updates.push_back(r.update());
  }
  if (!successor) throw AnalysisError("residual leaf without an assignment to K");
  return DecisionTree::MakeLeaf(std::move(updates), *successor);
}

}  // namespace

Program ToProgram(const ResidualProgram& residual) {
  Program program;
  program.externals = residual.externals;
  for (const KRule& r : residual.rules) {
    program.rules.push_back(Rule::If(ControlGuard(r.label), r.body.ToBlock()));
  }
  return program;
}

State EntryState(const ResidualProgram& residual) {
  State s;
  s.Set(std::string(kControlName), {}, Value::Atom(residual.entry));
  return s;
}

std::string PrintResidual(const ResidualProgram& residual) {
  std::string out;
  for (const std::string& line : residual.header) out += "-- " + line + "\n";
  out += "-- entry: " + residual.entry + "\n";
  out += std::string("-- optimized: ") + (residual.optimized ? "true" : "false") + "\n";
  for (const FunctionDecl& d : residual.externals) {
    out += "external " + d.name + "/" + std::to_string(d.arity) + "\n";
  }
  for (const KRule& r : residual.rules) {
    out += "\n";
    if (!r.state_comment.empty()) out += "-- " + r.label + ": " + r.state_comment + "\n";
    out += PrintRule(Rule::If(ControlGuard(r.label), r.body.ToBlock()));
  }
  return out;
}

std::optional<std::string> ReadHeaderField(std::string_view text, std::string_view key) {
  std::string prefix = "-- " + std::string(key) + ":";
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (line.starts_with(prefix)) {
      std::string value(line.substr(prefix.size()));
      while (!value.empty() && value.front() == ' ') value.erase(value.begin());
      while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.pop_back();
      return value;
    }
    pos = end + 1;
  }
  return std::nullopt;
}

ResidualProgram ResidualFromProgram(const Program& program, std::string entry) {
  ResidualProgram residual;
  residual.entry = std::move(entry);
  residual.externals = program.externals;
  for (const Rule& rule : program.rules) {
    if (rule.is_update() || rule.cond().branches.size() != 1 ||
        !rule.cond().else_body.empty()) {
      throw AnalysisError("top-level rules of a residual program must be K-rules");
    }
    const Term& guard = rule.cond().branches.front().guard;
    bool shaped = !guard.is_literal() && guard.fname() == "=" && guard.arity() == 2 &&
                  guard.args()[0] == Term::Apply(std::string(kControlName)) &&
                  guard.args()[1].is_literal() && guard.args()[1].literal().is_atom();
    if (!shaped) throw AnalysisError("K-rule guard must have the form K = label");
    residual.rules.push_back(KRule{guard.args()[1].literal().text(),
                                   TreeFromBlock(rule.cond().branches.front().body), ""});
  }
  return residual;
}

ResidualProgram ParseResidual(std::string_view text, std::string_view origin) {
  Program program = ParseProgram(text, origin);
  auto entry = ReadHeaderField(text, "entry");
  if (!entry) {
    // Without a header the first K-rule is the entry.
    ResidualProgram shape = ResidualFromProgram(program, "");
    if (shape.rules.empty()) {
      throw AnalysisError(std::string(origin) + ": missing '-- entry:' header");
    }
    entry = shape.rules.front().label;
  }
  ResidualProgram residual = ResidualFromProgram(program, *entry);
  residual.optimized = ReadHeaderField(text, "optimized") == std::optional<std::string>("true");

  // Recover the comments PrintResidual writes: leading header lines up to
  // the first blank line, and "-- label: state" right above each K-rule.
  std::map<std::string, std::string> comments;
  bool in_header = true;
  std::string previous;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) in_header = false;
    if (in_header) {
      if (!line.starts_with("-- ")) {
        in_header = false;
      } else if (!line.starts_with("-- entry:") && !line.starts_with("-- optimized:")) {
        residual.header.push_back(line.substr(3));
      }
    }
    const std::string opener = "if K = ";
    if (line.starts_with(opener) && previous.starts_with("-- ")) {
      std::string label = line.substr(opener.size());
      label = label.substr(0, label.find(' '));
      std::string prefix = "-- " + label + ": ";
      if (previous.starts_with(prefix)) comments[label] = previous.substr(prefix.size());
    }
    previous = line;
  }
  for (KRule& r : residual.rules) {
    auto it = comments.find(r.label);
    if (it != comments.end()) r.state_comment = it->second;
  }
  return residual;
}

std::vector<std::string> CheckResidual(const ResidualProgram& residual) {
  std::vector<std::string> problems;
  std::set<std::string> labels;
  for (const KRule& r : residual.rules) {
    if (!labels.insert(r.label).second) problems.push_back("duplicate label " + r.label);
  }
  if (labels.count(residual.entry) == 0) {
    problems.push_back("entry label " + residual.entry + " has no K-rule");
  }
  for (const KRule& r : residual.rules) {
    r.body.ForEachLeaf([&](const DecisionTree::Leaf& leaf) {
      if (labels.count(leaf.successor) == 0) {
        problems.push_back("label " + r.label + " jumps to undefined " + leaf.successor);
      }
      for (const UpdateRule& u : leaf.updates) {
        if (u.head == kControlName) problems.push_back("K updated inside leaf of " + r.label);
      }
    });
  }
  return problems;
}

}  // namespace easpec
