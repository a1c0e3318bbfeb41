#include "easpec/interpreter.h"

#include <map>

#include "easpec/builtins.h"
#include "easpec/errors.h"

namespace easpec {

std::string_view PolicyName(ConflictPolicy policy) {
  switch (policy) {
    case ConflictPolicy::kSeededRandom:
      return "seeded-random";
    case ConflictPolicy::kFirstInRuleOrder:
      return "first-in-rule-order";
    case ConflictPolicy::kError:
      return "error";
  }
  return "error";
}

std::optional<ConflictPolicy> ParsePolicy(std::string_view name) {
  for (ConflictPolicy p : {ConflictPolicy::kSeededRandom,
                           ConflictPolicy::kFirstInRuleOrder, ConflictPolicy::kError}) {
    if (PolicyName(p) == name) return p;
  }
  return std::nullopt;
}

Value EvalTerm(const Term& term, const EvalContext& ctx) {
  if (term.is_literal()) return term.literal();
  const std::string& f = term.fname();
  if (IsBuiltin(f)) {
    std::vector<Value> args;
    args.reserve(term.arity());
    for (const Term& arg : term.args()) {
      args.push_back(EvalTerm(arg, ctx));
      if (args.size() == 1) {
        if (auto decided = ShortCircuit(f, args.front())) return *decided;
      }
    }
    try {
      return EvalBuiltin(f, args);
    } catch (const RuntimeError& e) {
      throw RuntimeError(std::string(e.what()) + " evaluating " + term.ToString());
    }
  }
  Tuple args;
  args.reserve(term.arity());
  for (const Term& arg : term.args()) args.push_back(EvalTerm(arg, ctx));
  if (ctx.externals != nullptr && ctx.externals->count(f) > 0) {
    return ctx.oracle == nullptr ? Value::Undef() : ctx.oracle->Get(ctx.step, f, args);
  }
  return ctx.state.Get(f, args);
}

namespace {

void Collect(const Block& block, const EvalContext& ctx, UpdateSet& out) {
  for (const Rule& rule : block) {
    if (rule.is_update()) {
      const UpdateRule& u = rule.update();
      Tuple args;
      args.reserve(u.args.size());
      for (const Term& a : u.args) args.push_back(EvalTerm(a, ctx));
      out.Add(Location{u.head, std::move(args)}, EvalTerm(u.rhs, ctx));
      continue;
    }
    const CondRule& cond = rule.cond();
    const Block* taken = &cond.else_body;
    for (const CondBranch& branch : cond.branches) {
      if (EvalTerm(branch.guard, ctx).is_true()) {
        taken = &branch.body;
        break;
      }
    }
    Collect(*taken, ctx, out);
  }
}

// 64-bit FNV-1a.
std::uint64_t Fnv(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

UpdateSet CollectUpdates(const Block& block, const EvalContext& ctx) {
  UpdateSet out;
  Collect(block, ctx, out);
  return out;
}

UpdateSet ResolveConflicts(const UpdateSet& updates, std::uint64_t seed,
                           std::int64_t step, ConflictPolicy policy) {
  std::vector<Location> conflicts = updates.ConflictingLocations();
  if (conflicts.empty()) return updates;
  std::map<Location, std::vector<Value>> candidates;
  for (const UpdateTriple& t : updates.triples()) {
    candidates[t.location].push_back(t.value);
  }
  if (policy == ConflictPolicy::kError) {
    std::string message = "conflicting updates:";
    for (const Location& loc : conflicts) {
      message += " " + loc.ToString() + " <- {";
      std::vector<Value> values = candidates[loc];
      std::sort(values.begin(), values.end());
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) message += ", ";
        message += values[i].ToString();
      }
      message += "}";
    }
    throw RuntimeError(message);
  }
  std::map<Location, Value> chosen;
  for (const Location& loc : conflicts) {
    std::vector<Value>& values = candidates[loc];
    if (policy == ConflictPolicy::kFirstInRuleOrder) {
      chosen[loc] = values.front();
      continue;
    }
    std::sort(values.begin(), values.end());
    std::uint64_t h = Fnv(loc.ToString());
    for (const Value& v : values) h = Fnv(v.ToString() + "\x1f", h);
    h = SplitMix(h ^ SplitMix(seed ^ SplitMix(static_cast<std::uint64_t>(step))));
    chosen[loc] = values[h % values.size()];
  }
  UpdateSet out;
  for (const UpdateTriple& t : updates.triples()) {
    auto c = chosen.find(t.location);
    if (c != chosen.end() && !(c->second == t.value)) continue;
    out.Add(t);
  }
  return out;
}

State ApplyUpdates(const State& state, const UpdateSet& updates) {
  State next = state;
  for (const UpdateTriple& t : updates.triples()) {
    next.Set(t.location.fname, t.location.args, t.value);
  }
  return next;
}

bool ChangesState(const State& state, const UpdateSet& updates) {
  for (const UpdateTriple& t : updates.triples()) {
    if (!(state.Get(t.location.fname, t.location.args) == t.value)) return true;
  }
  return false;
}

Machine::Machine(const Program& program, State initial, const OracleTrace* oracle,
                 RunOptions options)
    : program_(program), oracle_(oracle), options_(options), state_(std::move(initial)) {
  for (const FunctionDecl& d : program.externals) externals_.insert(d.name);
}

bool Machine::Step() {
  EvalContext ctx{state_, step_, oracle_, &externals_};
  UpdateSet collected = CollectUpdates(program_.rules, ctx);
  UpdateSet resolved = ResolveConflicts(collected, options_.seed, step_, options_.policy);
  if (!ChangesState(state_, resolved)) {
    last_updates_ = UpdateSet();
    return false;
  }
  // In place: the updates were all computed from the pre-state above.
  for (const UpdateTriple& t : resolved.triples()) {
    state_.Set(t.location.fname, t.location.args, t.value);
  }
  last_updates_ = std::move(resolved);
  ++step_;
  return true;
}

RunTrace Run(const Program& program, const State& initial, const RunOptions& options,
             const OracleTrace& oracle) {
  RunTrace trace;
  trace.initial = initial;
  Machine machine(program, initial, &oracle, options);
  while (machine.step() < options.max_steps) {
    std::int64_t step = machine.step();
    bool moved = false;
    try {
      moved = machine.Step();
    } catch (const RuntimeError& e) {
      throw RuntimeError("step " + std::to_string(step) + ": " + e.what());
    }
    if (!moved) {
      trace.quiescent = true;
      break;
    }
    trace.steps.push_back(TraceStep{step, machine.last_updates(), machine.state()});
  }
  return trace;
}

std::string FormatTrace(const RunTrace& trace) {
  std::string out;
  for (const TraceStep& s : trace.steps) {
    out += "step " + std::to_string(s.step) + ": " + s.updates.ToString() + "\n";
  }
  return out;
}

}  // namespace easpec
