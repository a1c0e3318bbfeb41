#include "easpec/state.h"

#include <algorithm>

namespace easpec {

Value State::Get(const std::string& fname, const Tuple& args) const {
  auto table = tables_.find(fname);
  if (table == tables_.end()) return Value::Undef();
  auto entry = table->second.find(args);
  if (entry == table->second.end()) return Value::Undef();
  return entry->second;
}

void State::Set(const std::string& fname, const Tuple& args, Value value) {
  if (value.is_undef()) {
    auto table = tables_.find(fname);
    if (table == tables_.end()) return;
    table->second.erase(args);
    if (table->second.empty()) tables_.erase(table);
    return;
  }
  tables_[fname][args] = std::move(value);
}

std::size_t State::size() const {
  std::size_t n = 0;
  for (const auto& [fname, table] : tables_) n += table.size();
  return n;
}

State State::RestrictTo(const std::set<std::string>& names) const {
  return Restrict([&](const std::string& f) { return names.count(f) > 0; });
}

void State::Merge(const State& other) {
  for (const auto& [fname, table] : other.tables_) {
    for (const auto& [args, value] : table) Set(fname, args, value);
  }
}

std::string State::ToString() const {
  std::string out;
  for (const auto& [fname, table] : tables_) {
    for (const auto& [args, value] : table) {
      out += fname + TupleToString(args) + " = " + value.ToString() + "\n";
    }
  }
  return out;
}

std::string State::ToInlineString() const {
  std::string out;
  for (const auto& [fname, table] : tables_) {
    for (const auto& [args, value] : table) {
      if (!out.empty()) out += ", ";
      out += fname + TupleToString(args) + " = " + value.ToString();
    }
  }
  return out.empty() ? "{}" : out;
}

std::string UpdateTriple::ToString() const {
  return location.ToString() + " := " + value.ToString();
}

void UpdateSet::Add(UpdateTriple triple) {
  if (std::find(triples_.begin(), triples_.end(), triple) != triples_.end()) {
    return;
  }
  triples_.push_back(std::move(triple));
}

std::vector<Location> UpdateSet::ConflictingLocations() const {
  std::map<Location, Value> first;
  std::set<Location> conflicts;
  for (const UpdateTriple& t : triples_) {
    auto [it, inserted] = first.emplace(t.location, t.value);
    if (!inserted && !(it->second == t.value)) conflicts.insert(t.location);
  }
  return {conflicts.begin(), conflicts.end()};
}

bool UpdateSet::IsConsistent() const { return ConflictingLocations().empty(); }

std::vector<UpdateTriple> UpdateSet::Sorted() const {
  std::vector<UpdateTriple> sorted = triples_;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

std::string UpdateSet::ToString() const {
  std::string out;
  for (const UpdateTriple& t : Sorted()) {
    if (!out.empty()) out += ", ";
    out += t.ToString();
  }
  return out;
}

Value OracleTrace::Get(std::int64_t step, const std::string& fname,
                       const Tuple& args) const {
  auto it = entries_.find(Key{step, fname, args});
  return it == entries_.end() ? Value::Undef() : it->second;
}

bool OracleTrace::Insert(std::int64_t step, const std::string& fname,
                         const Tuple& args, Value value) {
  return entries_.emplace(Key{step, fname, args}, std::move(value)).second;
}

std::string OracleTrace::ToString() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += "step " + std::to_string(key.step) + ": " + key.fname + "(";
    for (std::size_t i = 0; i < key.args.size(); ++i) {
      if (i > 0) out += ", ";
      out += key.args[i].ToString();
    }
    out += ") = " + value.ToString() + "\n";
  }
  return out;
}

}  // namespace easpec
