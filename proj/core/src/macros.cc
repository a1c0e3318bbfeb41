#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "easpec/errors.h"
#include "easpec/syntax.h"
#include "lexer.h"

namespace easpec {

using internal::IsIdentChar;
using internal::IsIdentStart;

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Length of the string literal starting at text[i] (which is '"').
std::size_t StringLiteralLength(std::string_view text, std::size_t i) {
  std::size_t j = i + 1;
  while (j < text.size() && text[j] != '"' && text[j] != '\n') {
    if (text[j] == '\\') ++j;
    ++j;
  }
  return std::min(j + 1, text.size()) - i;
}

// Identifiers occurring in `text` outside strings and comments.
std::set<std::string> Identifiers(std::string_view text) {
  std::set<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '"') {
      i += StringLiteralLength(text, i);
    } else if (text.substr(i).starts_with("--")) {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '\'') {
      ++i;
      while (i < text.size() && (IsIdentChar(text[i]) || text[i] == '-')) ++i;
    } else if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < text.size() && IsIdentChar(text[j])) ++j;
      out.insert(std::string(text.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

// Strips a trailing "--" comment that is not inside a string literal.
std::string_view StripComment(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '"') {
      i += StringLiteralLength(line, i);
    } else if (line.substr(i).starts_with("--")) {
      return line.substr(0, i);
    } else {
      ++i;
    }
  }
  return line;
}

class Expander {
 public:
  Expander(const std::vector<MacroDef>& macros, std::string_view origin)
      : origin_(origin) {
    for (const MacroDef& m : macros) defs_.emplace(m.name, &m);
  }

  std::string Expand(std::string_view text, int line, std::vector<std::string>& stack) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == '"') {
        std::size_t n = StringLiteralLength(text, i);
        out.append(text.substr(i, n));
        i += n;
      } else if (text.substr(i).starts_with("--")) {
        std::size_t j = text.find('\n', i);
        if (j == std::string_view::npos) j = text.size();
        out.append(text.substr(i, j - i));
        i = j;
      } else if (c == '\'') {
        std::size_t j = i + 1;
        while (j < text.size() && (IsIdentChar(text[j]) || text[j] == '-')) ++j;
        out.append(text.substr(i, j - i));
        i = j;
      } else if (IsIdentStart(c)) {
        std::size_t j = i;
        while (j < text.size() && IsIdentChar(text[j])) ++j;
        std::string name(text.substr(i, j - i));
        auto def = defs_.find(name);
        if (def == defs_.end()) {
          out += name;
          i = j;
          continue;
        }
        i = j;
        out += Invoke(*def->second, text, i, line, stack);
      } else {
        if (c == '\n') ++line;
        out += c;
        ++i;
      }
    }
    return out;
  }

 private:
  std::string Invoke(const MacroDef& def, std::string_view text, std::size_t& i,
                     int line, std::vector<std::string>& stack) {
    if (std::find(stack.begin(), stack.end(), def.name) != stack.end()) {
      std::string cycle;
      for (const std::string& s : stack) cycle += s + " -> ";
      Fail(line, "cyclic macro expansion: " + cycle + def.name);
    }
    std::map<std::string, std::string> bindings;
    if (def.has_params) {
      std::size_t j = i;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j >= text.size() || text[j] != '(') {
        Fail(line, "macro '" + def.name + "' expects arguments");
      }
      std::vector<std::string> args = SplitArgs(text, j, line);
      i = j;
      if (args.size() != def.params.size()) {
        Fail(line, "macro '" + def.name + "' expects " +
                       std::to_string(def.params.size()) + " arguments, got " +
                       std::to_string(args.size()));
      }
      for (std::size_t k = 0; k < args.size(); ++k) {
        bindings[def.params[k]] = Expand(args[k], line, stack);
      }
    }
    std::string body = Substitute(def.body, bindings);
    stack.push_back(def.name);
    std::string expanded = Expand(body, line, stack);
    stack.pop_back();
    return expanded;
  }

  // Parses "(a, b(c, d), e)" starting at text[j] == '('; leaves j past ')'.
  std::vector<std::string> SplitArgs(std::string_view text, std::size_t& j, int line) {
    std::vector<std::string> args;
    std::string current;
    int depth = 0;
    ++j;
    while (j < text.size()) {
      char c = text[j];
      if (c == '"') {
        std::size_t n = StringLiteralLength(text, j);
        current.append(text.substr(j, n));
        j += n;
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) {
          ++j;
          std::string arg = Trim(current);
          if (!arg.empty() || !args.empty()) args.push_back(arg);
          return args;
        }
        --depth;
      }
      if (c == ',' && depth == 0) {
        args.push_back(Trim(current));
        current.clear();
      } else {
        current += c;
      }
      ++j;
    }
    Fail(line, "unterminated macro argument list");
    return args;
  }

  static std::string Substitute(std::string_view body,
                                const std::map<std::string, std::string>& bindings) {
    if (bindings.empty()) return std::string(body);
    std::string out;
    std::size_t i = 0;
    while (i < body.size()) {
      char c = body[i];
      if (c == '"') {
        std::size_t n = StringLiteralLength(body, i);
        out.append(body.substr(i, n));
        i += n;
      } else if (c == '\'') {
        std::size_t j = i + 1;
        while (j < body.size() && (IsIdentChar(body[j]) || body[j] == '-')) ++j;
        out.append(body.substr(i, j - i));
        i = j;
      } else if (IsIdentStart(c)) {
        std::size_t j = i;
        while (j < body.size() && IsIdentChar(body[j])) ++j;
        std::string name(body.substr(i, j - i));
        auto b = bindings.find(name);
        out += b == bindings.end() ? name : b->second;
        i = j;
      } else {
        out += c;
        ++i;
      }
    }
    return out;
  }

  [[noreturn]] void Fail(int line, const std::string& message) const {
    throw ParseError(origin_, line, 1, message);
  }

  std::string origin_;
  std::map<std::string, const MacroDef*> defs_;
};

// Parses "macro NAME(p, q) = body" (the text after the keyword).
MacroDef ParseDefinition(std::string_view rest, std::string_view origin, int line) {
  auto fail = [&](const std::string& message) {
    throw ParseError(std::string(origin), line, 1, message);
  };
  std::string_view s = rest;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  };
  auto read_ident = [&]() {
    skip_space();
    std::size_t j = i;
    if (j >= s.size() || !IsIdentStart(s[j])) fail("expected identifier in macro definition");
    while (j < s.size() && IsIdentChar(s[j])) ++j;
    std::string id(s.substr(i, j - i));
    i = j;
    return id;
  };
  MacroDef def;
  def.name = read_ident();
  skip_space();
  if (i < s.size() && s[i] == '(') {
    def.has_params = true;
    ++i;
    skip_space();
    if (i < s.size() && s[i] == ')') {
      ++i;
    } else {
      while (true) {
        def.params.push_back(read_ident());
        skip_space();
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ')') {
          ++i;
          break;
        }
        fail("malformed macro parameter list");
      }
    }
    skip_space();
  }
  if (i >= s.size() || s[i] != '=' || (i + 1 < s.size() && s[i + 1] == '=')) {
    fail("expected '=' in macro definition");
  }
  def.body = Trim(StripComment(s.substr(i + 1)));
  return def;
}

}  // namespace

std::optional<std::vector<std::string>> FindMacroCycle(
    const std::vector<MacroDef>& macros) {
  std::map<std::string, std::set<std::string>> edges;
  for (const MacroDef& m : macros) edges[m.name];
  for (const MacroDef& m : macros) {
    for (const std::string& id : Identifiers(m.body)) {
      if (edges.count(id) > 0) edges[m.name].insert(id);
    }
  }
  // 0 = unvisited, 1 = on stack, 2 = done.
  std::map<std::string, int> color;
  std::vector<std::string> path;
  std::optional<std::vector<std::string>> found;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    color[n] = 1;
    path.push_back(n);
    for (const std::string& next : edges[n]) {
      if (found) return;
      if (color[next] == 1) {
        auto start = std::find(path.begin(), path.end(), next);
        std::vector<std::string> cycle(start, path.end());
        cycle.push_back(next);
        found = cycle;
        return;
      }
      if (color[next] == 0) visit(next);
    }
    path.pop_back();
    color[n] = 2;
  };
  for (const auto& [name, _] : edges) {
    if (found) break;
    if (color[name] == 0) visit(name);
  }
  return found;
}

ExpandedSource ExpandMacroDefinitions(std::string_view text, std::string_view origin) {
  ExpandedSource result;
  std::vector<std::string> lines;
  std::vector<int> def_lines;
  std::size_t pos = 0;
  int line_no = 1;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    bool last = end == std::string_view::npos;
    std::string_view line = text.substr(pos, last ? std::string_view::npos : end - pos);
    std::string trimmed = Trim(line);
    if (trimmed.starts_with("macro") && trimmed.size() > 5 &&
        (trimmed[5] == ' ' || trimmed[5] == '\t')) {
      MacroDef def = ParseDefinition(std::string_view(trimmed).substr(6), origin, line_no);
      for (const MacroDef& existing : result.macros) {
        if (existing.name == def.name) {
          throw ParseError(std::string(origin), line_no, 1,
                           "macro '" + def.name + "' defined twice");
        }
      }
      result.macros.push_back(std::move(def));
      lines.emplace_back();
    } else {
      lines.emplace_back(line);
    }
    if (last) break;
    pos = end + 1;
    ++line_no;
  }
  if (auto cycle = FindMacroCycle(result.macros)) {
    std::string names;
    for (std::size_t k = 0; k < cycle->size(); ++k) {
      if (k > 0) names += " -> ";
      names += (*cycle)[k];
    }
    throw ParseError(std::string(origin), 1, 1, "cyclic macro definition: " + names);
  }
  Expander expander(result.macros, origin);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::vector<std::string> stack;
    if (k > 0) result.text += '\n';
    result.text += expander.Expand(lines[k], static_cast<int>(k) + 1, stack);
  }
  return result;
}

std::string ExpandMacros(std::string_view text) {
  return ExpandMacroDefinitions(text).text;
}

}  // namespace easpec
