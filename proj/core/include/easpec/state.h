#ifndef EASPEC_STATE_H_
#define EASPEC_STATE_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "easpec/value.h"

namespace easpec {

// Interpretations of the basic functions. Each function is a finite table
// from argument tuples to values; locations missing from the table are
// undef, and undef is never stored.
class State {
 public:
  using Table = std::map<Tuple, Value>;

  Value Get(const std::string& fname, const Tuple& args) const;
  // Assigning undef removes the entry.
  void Set(const std::string& fname, const Tuple& args, Value value);

  const std::map<std::string, Table>& tables() const { return tables_; }
  bool empty() const { return tables_.empty(); }
  std::size_t size() const;

  // Entries whose function name satisfies `keep`.
  template <typename Pred>
  State Restrict(Pred keep) const {
    State out;
    for (const auto& [fname, table] : tables_) {
      if (keep(fname)) out.tables_.emplace(fname, table);
    }
    return out;
  }
  State RestrictTo(const std::set<std::string>& names) const;

  // Adds all entries of `other`, overwriting on collision.
  void Merge(const State& other);

  // One "f(args) = v" line per entry, sorted by function then arguments.
  std::string ToString() const;
  // Single-line rendering used in comments and diagnostics.
  std::string ToInlineString() const;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;

 private:
  std::map<std::string, Table> tables_;
};

struct Location {
  std::string fname;
  Tuple args;

  std::string ToString() const { return fname + TupleToString(args); }
  friend bool operator==(const Location&, const Location&) = default;
  friend auto operator<=>(const Location&, const Location&) = default;
};

struct UpdateTriple {
  Location location;
  Value value;

  std::string ToString() const;
  friend bool operator==(const UpdateTriple&, const UpdateTriple&) = default;
  friend auto operator<=>(const UpdateTriple&, const UpdateTriple&) = default;
};

// A set of updates in collection (rule) order. Identical triples are stored
// once; the first occurrence keeps its position.
class UpdateSet {
 public:
  void Add(UpdateTriple triple);
  void Add(Location location, Value value) {
    Add(UpdateTriple{std::move(location), std::move(value)});
  }

  const std::vector<UpdateTriple>& triples() const { return triples_; }
  bool empty() const { return triples_.empty(); }
  std::size_t size() const { return triples_.size(); }

  bool IsConsistent() const;
  // Locations written with more than one distinct value.
  std::vector<Location> ConflictingLocations() const;

  // Same triples, sorted canonically.
  std::vector<UpdateTriple> Sorted() const;
  // "f(args) := v, ..." in canonical order.
  std::string ToString() const;

  // Equality ignores order.
  friend bool operator==(const UpdateSet& a, const UpdateSet& b) {
    return a.Sorted() == b.Sorted();
  }

 private:
  std::vector<UpdateTriple> triples_;
};

// Values of external functions as supplied by the environment, keyed by
// move number. Reads missing from the trace yield undef.
class OracleTrace {
 public:
  struct Key {
    std::int64_t step;
    std::string fname;
    Tuple args;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  Value Get(std::int64_t step, const std::string& fname, const Tuple& args) const;
  // Returns false if the key already holds a value.
  bool Insert(std::int64_t step, const std::string& fname, const Tuple& args,
              Value value);

  const std::map<Key, Value>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // One "step N: f(args) = v" line per entry.
  std::string ToString() const;

 private:
  std::map<Key, Value> entries_;
};

}  // namespace easpec

#endif  // EASPEC_STATE_H_
