// Copyright 2026 The synspace Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "support.hpp"
#include "synspace/dendrogram.hpp"

namespace synspace {
namespace {

using testing::Rng;

Dendrogram leaf(const char* s) { return Dendrogram::leaf(s); }

Dendrogram the_man_ate_a_dog() {
  Dendrogram subj = Dendrogram::join(1, {leaf("the"), leaf("man")}, "NP_subj");
  Dendrogram obj = Dendrogram::join(1, {leaf("a"), leaf("dog")}, "NP_obj");
  return Dendrogram::join(2, {subj, leaf("ate"), obj}, "S");
}

TEST(Dendrogram, ValidationRejectsMalformedTrees) {
  auto malformed = [](std::vector<DendrogramNode> nodes, NodeId root) {
    try {
      Dendrogram(std::move(nodes), root);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::MalformedDendrogram;
    }
    return false;
  };
  EXPECT_TRUE(malformed({}, 0));
  EXPECT_TRUE(malformed({{0, {}, ""}}, 0));                                  // unlabeled leaf
  EXPECT_TRUE(malformed({{1, {}, "a"}}, 0));                                 // leaf above 0
  EXPECT_TRUE(malformed({{0, {}, "a"}, {1, {0}, ""}}, 1));                   // unary node
  EXPECT_TRUE(malformed({{0, {}, "a"}, {0, {}, "b"}, {0, {0, 1}, "r"}}, 2)); // no height drop
  EXPECT_TRUE(malformed({{0, {}, "a"}, {0, {}, "a"}, {1, {0, 1}, ""}}, 2));  // duplicate label
  EXPECT_TRUE(malformed({{0, {}, "a"}, {0, {}, "b"}, {1, {0, 1}, ""}, {2, {0, 2}, ""}}, 3));  // two mothers
  EXPECT_TRUE(malformed({{0, {}, "a"}, {0, {}, "b"}, {0, {}, "c"}, {1, {0, 1}, ""}}, 3));     // unreachable
  EXPECT_FALSE(malformed({{0, {}, "a"}, {0, {}, "b"}, {1, {0, 1}, ""}}, 2));
}

TEST(XBar, MatrixShapeAndClass) {
  DistanceMatrix m = xbar_matrix(0);
  EXPECT_EQ(m("Spec", "X"), 2);
  EXPECT_EQ(m("Spec", "YP"), 2);
  EXPECT_EQ(m("X", "YP"), 1);
  DistanceMatrix five = xbar_matrix(5);
  EXPECT_EQ(five("Spec", "X"), 7);
  EXPECT_EQ(five("X", "YP"), 6);
  for (unsigned i = 0; i < 20; ++i) {
    DistanceMatrix x = xbar_matrix(i);
    EXPECT_EQ(classify_space(x).kind, SpaceKind::Ultrametric);
    TriangleCensus c = triangle_census(x);
    EXPECT_EQ(c.equilateral, 0u);
    EXPECT_EQ(c.isosceles_top_two_equal, 1u);
  }
}

TEST(BuildDendrogram, XBarTree) {
  Dendrogram t = build_dendrogram(xbar_matrix(0));
  EXPECT_EQ(t.node(t.root()).height, 2);
  EXPECT_EQ(t.canonical(), Dendrogram::join(2, {leaf("Spec"), Dendrogram::join(1, {leaf("X"), leaf("YP")})}).canonical());
  std::multiset<Rational> internal;
  for (const auto& [id, h] : leaf_heights(t))
    if (t.node(id).is_leaf())
      EXPECT_EQ(h, 0);
    else
      internal.insert(h);
  EXPECT_EQ(internal, (std::multiset<Rational>{1, 2}));
}

TEST(BuildDendrogram, TiesMergeIntoOneNode) {
  Dendrogram t = build_dendrogram(make_ultrametric_field(5, 3));
  EXPECT_EQ(t.node(t.root()).children.size(), 5u);
  EXPECT_EQ(t.node(t.root()).height, 3);
  EXPECT_EQ(t.nodes().size(), 6u);
  Dendrogram single = build_dendrogram(make_ultrametric_field(1, 3));
  EXPECT_EQ(single.nodes().size(), 1u);
  EXPECT_EQ(cophenetic_matrix(single).size(), 1u);
}

TEST(BuildDendrogram, NonUltrametricInputReportsWitness) {
  DistanceMatrix m({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  try {
    build_dendrogram(m);
    FAIL() << "expected NotUltrametric";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUltrametric);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"a", "b", "c"}));
  }
}

TEST(RoundTrip, RandomTreesBothDirections) {
  Rng rng(1234);
  int cases = 0;
  for (int trial = 0; trial < 150; ++trial) {
    testing::RandomTree rt = testing::random_tree(rng, testing::uniform(rng, 3, 12));
    DistanceMatrix coph = cophenetic_matrix(rt.tree);
    ASSERT_TRUE(same_space(coph, rt.distances));
    EXPECT_TRUE(testing::ultrametric_holds(coph));
    EXPECT_EQ(triangle_census(coph).other, 0u);
    EXPECT_EQ(build_dendrogram(coph), rt.tree);
    EXPECT_EQ(build_dendrogram(rt.distances), rt.tree);
    EXPECT_TRUE(same_space(cophenetic_matrix(build_dendrogram(rt.distances)), rt.distances));
    ++cases;
  }
  EXPECT_GE(cases, 100);
}

TEST(RoundTrip, CanonicalFormIgnoresChildOrder) {
  Dendrogram a = Dendrogram::join(3, {Dendrogram::join(1, {leaf("x"), leaf("y")}), leaf("z")});
  Dendrogram b = Dendrogram::join(3, {leaf("z"), Dendrogram::join(1, {leaf("y"), leaf("x")}, "inner")});
  Dendrogram c = Dendrogram::join(3, {leaf("z"), Dendrogram::join(2, {leaf("y"), leaf("x")})});
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
}

// Oracle: in a tree, a walk that descends except for one upward edge can
// only use that edge first, so b must sit below a or below a's mother.
bool dominates_oracle(const Dendrogram& t, NodeId a, NodeId b) {
  if (t.node(a).height < t.node(b).height) return false;
  std::function<bool(NodeId)> below = [&](NodeId x) {
    if (x == b) return true;
    for (NodeId c : t.node(x).children)
      if (below(c)) return true;
    return false;
  };
  if (below(a)) return true;
  auto p = t.parent(a);
  return p && below(*p);
}

TEST(Roberts, SubjectAndObjectDominateEachOther) {
  Dendrogram t = the_man_ate_a_dog();
  EXPECT_TRUE(roberts_dominates(t, "NP_subj", "NP_obj"));
  EXPECT_TRUE(roberts_dominates(t, "NP_obj", "NP_subj"));
  EXPECT_TRUE(roberts_dominates(t, "NP_subj", "ate"));
  EXPECT_FALSE(roberts_dominates(t, "the", "S"));
  EXPECT_FALSE(roberts_dominates(t, "ate", "NP_obj"));
  // Two upward steps are never allowed.
  EXPECT_FALSE(roberts_dominates(t, "the", "dog"));
  for (NodeId id = 0; id < t.nodes().size(); ++id) {
    EXPECT_TRUE(roberts_dominates(t, t.root(), id));
    EXPECT_TRUE(roberts_dominates(t, id, id));
  }
  EXPECT_THROW(roberts_dominates(t, "S", "cat"), Error);
}

TEST(Roberts, AgreesWithOracleOnRandomTrees) {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    Dendrogram t = testing::random_tree(rng, testing::uniform(rng, 2, 9)).tree;
    for (NodeId a = 0; a < t.nodes().size(); ++a)
      for (NodeId b = 0; b < t.nodes().size(); ++b)
        ASSERT_EQ(roberts_dominates(t, a, b), dominates_oracle(t, a, b)) << t.canonical() << " " << a << " " << b;
  }
}

TEST(Heights, LeavesAtZeroAndConstantFieldRoot) {
  Dendrogram t = the_man_ate_a_dog();
  auto h = leaf_heights(t);
  EXPECT_EQ(h.size(), t.nodes().size());
  EXPECT_EQ(h.at(t.require("the")), 0);
  EXPECT_EQ(h.at(t.require("NP_obj")), 1);
  EXPECT_EQ(h.at(t.root()), 2);
  Dendrogram flat = build_dendrogram(make_ultrametric_field(4, Rational(5, 2)));
  std::size_t internal = 0;
  for (const auto& [id, height] : leaf_heights(flat))
    if (!flat.node(id).is_leaf()) {
      ++internal;
      EXPECT_EQ(height, Rational(5, 2));
    }
  EXPECT_EQ(internal, 1u);
}

TEST(Dot, StableUnderChildOrder) {
  Dendrogram a = Dendrogram::join(3, {Dendrogram::join(1, {leaf("x"), leaf("y")}), leaf("z")});
  Dendrogram b = Dendrogram::join(3, {leaf("z"), Dendrogram::join(1, {leaf("y"), leaf("x")})});
  EXPECT_EQ(to_dot(a), to_dot(b));
  EXPECT_NE(to_dot(a).find("h=3"), std::string::npos);
}

}  // namespace
}  // namespace synspace
