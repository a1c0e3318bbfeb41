#include <gtest/gtest.h>

#include "easpec/state.h"
#include "random_programs.h"

namespace easpec {
namespace {

TEST(StateTest, MissingLocationsAreUndef) {
  State s;
  EXPECT_TRUE(s.Get("Num", {}).is_undef());
  s.Set("Memory", {Value::Int(100)}, Value::Int(104));
  EXPECT_EQ(s.Get("Memory", {Value::Int(100)}), Value::Int(104));
  EXPECT_TRUE(s.Get("Memory", {Value::Int(101)}).is_undef());
}

TEST(StateTest, AssigningUndefDeletes) {
  State s;
  s.Set("Num", {}, Value::Int(5));
  s.Set("Num", {}, Value::Undef());
  EXPECT_TRUE(s.Get("Num", {}).is_undef());
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s, State());
}

TEST(StateTest, SetThenDeleteRestoresLookups) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    State s = testing::RandomState(rng);
    const State before = s;
    Tuple args = {Value::Atom("q")};
    s.Set("Z", args, Value::Int(9));
    s.Set("Z", args, Value::Undef());
    EXPECT_EQ(s, before);
  }
}

TEST(StateTest, RestrictAndMerge) {
  State s;
  s.Set("A", {}, Value::Int(1));
  s.Set("B", {}, Value::Int(2));
  State only_a = s.RestrictTo({"A"});
  EXPECT_EQ(only_a.size(), 1u);
  State other;
  other.Set("A", {}, Value::Int(7));
  s.Merge(other);
  EXPECT_EQ(s.Get("A", {}), Value::Int(7));
  EXPECT_EQ(s.Get("B", {}), Value::Int(2));
}

TEST(StateTest, Rendering) {
  State s;
  s.Set("Tail", {Value::Atom("c1")}, Value::Atom("c2"));
  s.Set("MyList", {}, Value::Atom("c1"));
  EXPECT_EQ(s.ToString(), "MyList = c1\nTail(c1) = c2\n");
  EXPECT_EQ(s.ToInlineString(), "MyList = c1, Tail(c1) = c2");
  EXPECT_EQ(State().ToInlineString(), "{}");
}

TEST(UpdateSetTest, ConflictsAreSameLocationDifferentValue) {
  UpdateSet u;
  u.Add(Location{"X", {}}, Value::Int(1));
  u.Add(Location{"X", {}}, Value::Int(1));
  EXPECT_EQ(u.size(), 1u);
  EXPECT_TRUE(u.IsConsistent());
  u.Add(Location{"Y", {}}, Value::Int(2));
  EXPECT_TRUE(u.IsConsistent());
  u.Add(Location{"X", {}}, Value::Int(2));
  EXPECT_FALSE(u.IsConsistent());
  ASSERT_EQ(u.ConflictingLocations().size(), 1u);
  EXPECT_EQ(u.ConflictingLocations()[0].fname, "X");
}

TEST(UpdateSetTest, EqualityIgnoresOrder) {
  UpdateSet a;
  a.Add(Location{"X", {}}, Value::Int(1));
  a.Add(Location{"Y", {}}, Value::Int(2));
  UpdateSet b;
  b.Add(Location{"Y", {}}, Value::Int(2));
  b.Add(Location{"X", {}}, Value::Int(1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.ToString(), "X := 1, Y := 2");
}

TEST(OracleTraceTest, OneValuePerKey) {
  OracleTrace t;
  EXPECT_TRUE(t.Insert(3, "Input", {}, Value::Int(7)));
  EXPECT_FALSE(t.Insert(3, "Input", {}, Value::Int(8)));
  EXPECT_EQ(t.Get(3, "Input", {}), Value::Int(7));
  EXPECT_TRUE(t.Get(4, "Input", {}).is_undef());
  EXPECT_EQ(t.ToString(), "step 3: Input() = 7\n");
}

}  // namespace
}  // namespace easpec
