#include "easpec/mini.h"

#include <map>
#include <vector>

#include "easpec/errors.h"
#include "lexer.h"

namespace easpec {

using internal::Lex;
using internal::Token;
using internal::TokenKind;

namespace {

enum class Operand { kReg, kImm, kLabel };

const std::map<std::string, std::vector<Operand>>& OpTable() {
  static const std::map<std::string, std::vector<Operand>> kOps = {
      {"load", {Operand::kReg, Operand::kReg}},
      {"store", {Operand::kReg, Operand::kReg}},
      {"copy", {Operand::kReg, Operand::kReg}},
      {"mov", {Operand::kReg, Operand::kReg}},
      {"add", {Operand::kReg, Operand::kReg}},
      {"addi", {Operand::kReg, Operand::kImm}},
      {"set", {Operand::kReg, Operand::kImm}},
      {"in", {Operand::kReg}},
      {"bnz", {Operand::kReg, Operand::kLabel}},
      {"jmp", {Operand::kLabel}},
      {"halt", {}},
  };
  return kOps;
}

struct Instruction {
  std::string op;
  std::vector<Token> operands;
  int line;
};

std::string TaskName(std::size_t index) { return "l" + std::to_string(index); }

}  // namespace

std::string StripComments(std::string_view text) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    std::size_t comment = line.find("--");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      out.append(line);
      out += '\n';
    }
    pos = end + 1;
  }
  return out;
}

State CompileMini(std::string_view source, std::string_view origin) {
  std::vector<Token> tokens = Lex(source, origin);
  std::vector<Instruction> program;
  std::map<std::string, std::size_t> labels;
  auto fail = [&](const Token& t, const std::string& message) {
    throw ParseError(std::string(origin), t.line, t.column, message);
  };
  std::size_t i = 0;
  while (tokens[i].kind != TokenKind::kEof) {
    if (tokens[i].kind == TokenKind::kNewline) {
      ++i;
      continue;
    }
    if (tokens[i].kind == TokenKind::kWord && tokens[i + 1].kind == TokenKind::kSymbol &&
        tokens[i + 1].text == ":") {
      if (!labels.emplace(tokens[i].text, program.size()).second) {
        fail(tokens[i], "duplicate label '" + tokens[i].text + "'");
      }
      i += 2;
      continue;
    }
    const Token& op = tokens[i];
    auto spec = OpTable().find(op.text);
    if (op.kind != TokenKind::kWord || spec == OpTable().end()) {
      fail(op, "unknown instruction '" + op.text + "'");
    }
    Instruction inst{op.text, {}, op.line};
    ++i;
    for (std::size_t k = 0; k < spec->second.size(); ++k) {
      if (k > 0) {
        if (tokens[i].kind != TokenKind::kSymbol || tokens[i].text != ",") {
          fail(tokens[i], "expected ',' between operands");
        }
        ++i;
      }
      Token operand = tokens[i];
      if (spec->second[k] == Operand::kImm && operand.kind == TokenKind::kSymbol &&
          operand.text == "-" && tokens[i + 1].kind == TokenKind::kInt) {
        operand = tokens[i + 1];
        operand.text = "-" + operand.text;
        ++i;
      }
      bool ok = spec->second[k] == Operand::kImm ? operand.kind == TokenKind::kInt
                                                 : operand.kind == TokenKind::kWord;
      if (!ok) fail(operand, "bad operand for '" + inst.op + "'");
      inst.operands.push_back(operand);
      ++i;
    }
    if (tokens[i].kind != TokenKind::kNewline && tokens[i].kind != TokenKind::kEof) {
      fail(tokens[i], "expected end of line after instruction");
    }
    program.push_back(std::move(inst));
  }

  State state;
  if (program.empty()) return state;
  state.Set("CurTask", {}, Value::Atom(TaskName(0)));
  for (std::size_t k = 0; k < program.size(); ++k) {
    const Instruction& inst = program[k];
    Tuple task = {Value::Atom(TaskName(k))};
    state.Set("TaskType", task, Value::Atom(inst.op));
    if (k + 1 < program.size()) state.Set("NextTask", task, Value::Atom(TaskName(k + 1)));
    const std::vector<Operand>& shape = OpTable().at(inst.op);
    int reg_index = 0;
    for (std::size_t j = 0; j < shape.size(); ++j) {
      const Token& t = inst.operands[j];
      switch (shape[j]) {
        case Operand::kReg:
          state.Set(reg_index++ == 0 ? "A" : "B", task, Value::Atom(t.text));
          break;
        case Operand::kImm:
          state.Set("Imm", task, Value::Int(std::stoll(t.text)));
          break;
        case Operand::kLabel: {
          auto target = labels.find(t.text);
          if (target == labels.end()) fail(t, "undefined label '" + t.text + "'");
          if (target->second >= program.size()) fail(t, "label '" + t.text + "' has no instruction");
          state.Set("Target", task, Value::Atom(TaskName(target->second)));
          break;
        }
      }
    }
  }
  return state;
}

}  // namespace easpec
