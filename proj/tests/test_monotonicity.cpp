// Copyright 2026 The synspace Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support.hpp"
#include "synspace/bundle.hpp"
#include "synspace/io.hpp"

namespace synspace {
namespace {

using testing::Rng;
using T = PlainTree;

std::vector<std::string> joined(const Segmentation& s) {
  std::vector<std::string> out;
  for (const auto& seg : s.segments) out.insert(out.end(), seg.frontier.begin(), seg.frontier.end());
  return out;
}

TEST(Growth, AllTerminals) {
  GrowthHistory h{Terminal{"her"}, Terminal{"saw"}, Terminal{"he"}};
  EXPECT_EQ(classify_steps(h), std::vector<Growth>(3, Growth::Monotonic));
  PlainTree t = build_tree(h);
  EXPECT_EQ(bracketing(t), "[he [saw [her]]]");
  EXPECT_TRUE(is_fs_describable(t));
}

TEST(Growth, ComplexSubject) {
  GrowthHistory h{Terminal{"her"}, Terminal{"saw"}, ComplexObject{T::node({T::leaf("the"), T::leaf("man")})}};
  auto steps = classify_steps(h);
  EXPECT_EQ(steps, (std::vector<Growth>{Growth::Monotonic, Growth::Monotonic, Growth::NonMonotonic}));
  PlainTree t = build_tree(h);
  EXPECT_EQ(bracketing(t), "[[the man] [saw [her]]]");
  EXPECT_FALSE(is_fs_describable(t));
  EXPECT_EQ(segment_max_monotonic(t).joints.size(), 1u);
}

TEST(Growth, SingleStepAndSingleLeafObject) {
  EXPECT_EQ(classify_steps({Terminal{"go"}}), std::vector<Growth>{Growth::Monotonic});
  EXPECT_EQ(classify_steps({ComplexObject{T::leaf("go")}}), std::vector<Growth>{Growth::Monotonic});
  EXPECT_THROW(build_tree({}), Error);
}

TEST(Growth, BundledHistories) {
  auto files = bundle_files();
  auto chain = io::growth_from_json(io::parse_json(files.at("growth_who_shows.json"), "g"));
  EXPECT_EQ(bracketing(build_tree(chain)), "[who [shows [he [deserves [it]]]]]");
  auto hman = io::growth_from_json(io::parse_json(files.at("growth_the_man.json"), "g"));
  EXPECT_EQ(classify_steps(hman).back(), Growth::NonMonotonic);
}

TEST(FiniteState, Examples) {
  EXPECT_TRUE(is_fs_describable(detail::who_shows_tree()));
  EXPECT_FALSE(is_fs_describable(detail::the_man_saw_her_tree()));
  EXPECT_TRUE(is_fs_describable(T::leaf("it")));
  // Mixed directions still count, as does a unary chain.
  EXPECT_TRUE(is_fs_describable(T::node({T::node({T::leaf("a"), T::node({T::leaf("b")})}), T::leaf("c")})));
}

TEST(FiniteState, NotBinary) {
  PlainTree wide = T::node({T::leaf("a"), T::node({T::leaf("b"), T::leaf("c"), T::leaf("d")})});
  try {
    is_fs_describable(wide);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotBinary);
    EXPECT_EQ(e.witness(), std::vector<std::string>{"1"});
  }
  EXPECT_THROW(segment_max_monotonic(wide), Error);
}

TEST(Segments, Examples) {
  auto one = segment_max_monotonic(detail::who_shows_tree());
  ASSERT_EQ(one.segments.size(), 1u);
  EXPECT_TRUE(one.joints.empty());

  auto two = segment_max_monotonic(detail::the_man_saw_her_tree());
  ASSERT_EQ(two.segments.size(), 2u);
  EXPECT_EQ(two.segments[0].frontier, (std::vector<std::string>{"the", "man"}));
  EXPECT_EQ(two.segments[1].frontier, (std::vector<std::string>{"saw", "her"}));
  EXPECT_EQ(two.joints, std::vector<NodePath>{NodePath{}});

  PlainTree left = T::leaf("e");
  for (const char* w : {"d", "c", "b", "a"}) left = T::node({left, T::leaf(w)});
  EXPECT_EQ(segment_max_monotonic(left).segments.size(), 1u);
}

TEST(Bracketing, Examples) {
  EXPECT_EQ(bracketing(detail::who_shows_tree()), "[who [shows [he [deserves [it]]]]]");
  EXPECT_EQ(bracketing(T::leaf("it")), "[it]");
  EXPECT_EQ(bracketing(detail::the_man_saw_her_tree()), "[[the man] [saw her]]");
}

PlainTree random_binary(Rng& rng, int depth, int& counter) {
  if (depth == 0 || testing::uniform(rng, 0, 2) == 0) return T::leaf("w" + std::to_string(counter++));
  if (testing::uniform(rng, 0, 5) == 0) return T::node({random_binary(rng, depth - 1, counter)});
  PlainTree a = random_binary(rng, depth - 1, counter);
  PlainTree b = random_binary(rng, depth - 1, counter);
  return T::node({std::move(a), std::move(b)});
}

// Brute force: a node with two non-leaf daughters anywhere in the tree.
bool has_joint(const PlainTree& t) {
  std::size_t complex = 0;
  for (const auto& c : t.children) {
    complex += c.is_leaf() ? 0 : 1;
    if (has_joint(c)) return true;
  }
  return complex >= 2;
}

TEST(Segments, RandomTreesAreLossless) {
  Rng rng(4242);
  for (int round = 0; round < 400; ++round) {
    int counter = 0;
    PlainTree t = random_binary(rng, 6, counter);
    auto seg = segment_max_monotonic(t);
    EXPECT_EQ(joined(seg), frontier(t));
    const bool fs = is_fs_describable(t);
    EXPECT_EQ(fs, !has_joint(t));
    EXPECT_EQ(fs, seg.segments.size() == 1);
    EXPECT_EQ(fs, seg.joints.empty());
  }
}

TEST(Growth, RandomHistories) {
  Rng rng(8);
  for (int round = 0; round < 300; ++round) {
    int counter = 0;
    GrowthHistory h;
    const std::size_t n = testing::uniform(rng, 1, 8);
    bool multi_leaf_after_first = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (testing::uniform(rng, 0, 3) == 0) {
        PlainTree sub = random_binary(rng, 3, counter);
        if (i > 0 && frontier(sub).size() >= 2) multi_leaf_after_first = true;
        h.push_back(ComplexObject{std::move(sub)});
      } else {
        h.push_back(Terminal{"t" + std::to_string(counter++)});
      }
    }
    auto steps = classify_steps(h);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_EQ(steps[i] == Growth::NonMonotonic,
                std::holds_alternative<ComplexObject>(h[i]) &&
                    std::get<ComplexObject>(h[i]).tree.node_count() >= 2);

    PlainTree t = build_tree(h);
    bool all_terminal = std::all_of(h.begin(), h.end(), [](const GrowthStep& s) {
      return std::holds_alternative<Terminal>(s);
    });
    if (all_terminal) {
      EXPECT_TRUE(is_fs_describable(t));
    }
    if (multi_leaf_after_first) {
      EXPECT_FALSE(segment_max_monotonic(t).joints.empty());
    }
  }
}

}  // namespace
}  // namespace synspace
