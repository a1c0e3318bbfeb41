#include <string>

#include "easpec/builtins.h"
#include "easpec/syntax.h"

namespace easpec {

namespace {

constexpr std::size_t kMaxInlineWidth = 100;

std::string Indent(int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); }

std::string UpdateText(const UpdateRule& u) {
  return Term::Apply(u.head, u.args).ToString() + " := " + u.rhs.ToString();
}

// "if g then u1, u2 endif" when the rule is a single guarded list of
// updates that fits on one line.
std::optional<std::string> InlineCond(const CondRule& cond, int indent) {
  if (cond.branches.size() != 1 || !cond.else_body.empty()) return std::nullopt;
  const Block& body = cond.branches.front().body;
  if (body.empty()) return std::nullopt;
  std::string line = Indent(indent) + "if " + cond.branches.front().guard.ToString() + " then ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (!body[i].is_update()) return std::nullopt;
    if (i > 0) line += ", ";
    line += UpdateText(body[i].update());
  }
  line += " endif";
  if (line.size() > kMaxInlineWidth) return std::nullopt;
  return line;
}

void AppendRule(const Rule& rule, int indent, std::string& out) {
  if (rule.is_update()) {
    out += Indent(indent) + UpdateText(rule.update()) + "\n";
    return;
  }
  const CondRule& cond = rule.cond();
  if (auto line = InlineCond(cond, indent)) {
    out += *line + "\n";
    return;
  }
  for (std::size_t i = 0; i < cond.branches.size(); ++i) {
    out += Indent(indent) + (i == 0 ? "if " : "elseif ") +
           cond.branches[i].guard.ToString() + " then\n";
    for (const Rule& r : cond.branches[i].body) AppendRule(r, indent + 1, out);
  }
  if (!cond.else_body.empty()) {
    out += Indent(indent) + "else\n";
    for (const Rule& r : cond.else_body) AppendRule(r, indent + 1, out);
  }
  out += Indent(indent) + "endif\n";
}

}  // namespace

std::string PrintRule(const Rule& rule, int indent) {
  std::string out;
  AppendRule(rule, indent, out);
  return out;
}

std::string PrintBlock(const Block& block, int indent) {
  std::string out;
  for (const Rule& r : block) AppendRule(r, indent, out);
  return out;
}

std::string PrettyPrint(const Program& program) {
  std::string out;
  for (const FunctionDecl& d : program.externals) {
    out += "external " + d.name + "/" + std::to_string(d.arity) + "\n";
  }
  for (const FunctionDecl& d : program.statics) {
    out += "static " + d.name + "/" + std::to_string(d.arity) + "\n";
  }
  for (const MacroDef& m : program.macros) {
    out += "macro " + m.name;
    if (m.has_params) {
      out += "(";
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += m.params[i];
      }
      out += ")";
    }
    out += " = " + m.body + "\n";
  }
  bool has_header =
      !program.externals.empty() || !program.statics.empty() || !program.macros.empty();
  if (has_header && !program.rules.empty()) out += "\n";
  out += PrintBlock(program.rules);
  return out;
}

std::string PrintDivision(const Division& division) {
  std::string out;
  std::string positive;
  std::string negative;
  for (const auto& [name, bt] : division.classes) {
    if (IsBuiltin(name)) continue;
    auto reason = division.provenance.find(name);
    out += "-- " + name + ": " + std::string(BindingTimeName(bt));
    if (reason != division.provenance.end() && !reason->second.empty()) {
      out += " (" + reason->second + ")";
    }
    out += "\n";
    std::string& list = bt == BindingTime::kPositive ? positive : negative;
    if (bt == BindingTime::kUnclassified) continue;
    if (!list.empty()) list += ", ";
    list += name;
  }
  out += "positive:" + (positive.empty() ? "" : " " + positive) + "\n";
  out += "negative:" + (negative.empty() ? "" : " " + negative) + "\n";
  std::string bounded;
  for (const std::string& name : division.bounded) {
    if (!bounded.empty()) bounded += ", ";
    bounded += name;
  }
  out += "bounded:" + (bounded.empty() ? "" : " " + bounded) + "\n";
  return out;
}

}  // namespace easpec
