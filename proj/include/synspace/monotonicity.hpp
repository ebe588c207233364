// Copyright 2026 The synspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Monotonic (one terminal at a time) versus non-monotonic phrase-marker
// growth, and the structural finite-state criterion: no node bifurcates
// into two complex daughters.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "synspace/error.hpp"

namespace synspace {

/// Rooted ordered tree; leaves carry forms, internal nodes are unlabeled.
struct PlainTree {
  std::string form;
  std::vector<PlainTree> children;

  static PlainTree leaf(std::string form) { return PlainTree{std::move(form), {}}; }
  static PlainTree node(std::vector<PlainTree> children) {
    return PlainTree{{}, std::move(children)};
  }

  bool is_leaf() const noexcept { return children.empty(); }
  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.node_count();
    return n;
  }
  bool operator==(const PlainTree&) const = default;
};

inline std::vector<std::string> frontier(const PlainTree& t) {
  std::vector<std::string> out;
  std::function<void(const PlainTree&)> walk = [&](const PlainTree& n) {
    if (n.is_leaf()) out.push_back(n.form);
    for (const auto& c : n.children) walk(c);
  };
  walk(t);
  return out;
}

/// "[who [shows [he [deserves [it]]]]]". A bare leaf renders as "[it]".
inline std::string bracketing(const PlainTree& t) {
  std::function<std::string(const PlainTree&)> render = [&](const PlainTree& n) -> std::string {
    if (n.is_leaf()) return n.form;
    std::string out = "[";
    for (std::size_t i = 0; i < n.children.size(); ++i)
      out += (i ? " " : "") + render(n.children[i]);
    return out + "]";
  };
  return t.is_leaf() ? "[" + t.form + "]" : render(t);
}

struct Terminal {
  std::string form;
};

struct ComplexObject {
  PlainTree tree;
};

using GrowthStep = std::variant<Terminal, ComplexObject>;

/// Steps in derivational order: the first step is the most deeply embedded
/// item, and each later item is merged on the left of what exists so far.
using GrowthHistory = std::vector<GrowthStep>;

enum class Growth { Monotonic, NonMonotonic };

constexpr std::string_view growth_name(Growth g) noexcept {
  return g == Growth::Monotonic ? "Monotonic" : "NonMonotonic";
}

/// A complex object only counts as non-monotonic when it has >= 2 nodes.
inline std::vector<Growth> classify_steps(const GrowthHistory& h) {
  std::vector<Growth> out;
  for (const auto& step : h) {
    const auto* complex = std::get_if<ComplexObject>(&step);
    out.push_back(complex && complex->tree.node_count() >= 2 ? Growth::NonMonotonic
                                                             : Growth::Monotonic);
  }
  return out;
}

/// [he, saw, her] grown from "her" up yields [he [saw [her]]].
inline PlainTree build_tree(const GrowthHistory& h) {
  if (h.empty()) throw Error(ErrorKind::MalformedTerm, "a growth history needs at least one step");
  auto item = [](const GrowthStep& s) {
    if (const auto* t = std::get_if<Terminal>(&s)) return PlainTree::leaf(t->form);
    return std::get<ComplexObject>(s).tree;
  };
  PlainTree first = item(h.front());
  PlainTree current = first.is_leaf() ? PlainTree::node({first}) : first;
  for (std::size_t i = 1; i < h.size(); ++i) current = PlainTree::node({item(h[i]), current});
  return current;
}

/// Child indices from the root.
using NodePath = std::vector<std::size_t>;

inline std::string path_name(const NodePath& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "." : "") + std::to_string(p[i]);
  return out;
}

namespace detail {
inline void require_binary(const PlainTree& t, NodePath& path) {
  if (t.children.size() > 2)
    throw Error(ErrorKind::NotBinary,
                "node " + path_name(path) + " has " + std::to_string(t.children.size()) + " children",
                {path_name(path)});
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(i);
    require_binary(t.children[i], path);
    path.pop_back();
  }
}

inline bool is_joint(const PlainTree& t) {
  std::size_t complex = 0;
  for (const auto& c : t.children) complex += c.is_leaf() ? 0 : 1;
  return complex >= 2;
}
}  // namespace detail

/// Every internal node has at most one non-leaf daughter.
inline bool is_fs_describable(const PlainTree& t) {
  NodePath path;
  detail::require_binary(t, path);
  std::function<bool(const PlainTree&)> ok = [&](const PlainTree& n) {
    if (detail::is_joint(n)) return false;
    for (const auto& c : n.children)
      if (!ok(c)) return false;
    return true;
  };
  return ok(t);
}

struct Segment {
  /// Top node of the finite-state region the segment belongs to.
  NodePath top;
  std::vector<std::string> frontier;
};

struct Segmentation {
  std::vector<Segment> segments;
  std::vector<NodePath> joints;
};

/// Cuts the tree below every joint (a node with two complex daughters);
/// each remaining region is finite-state describable. Segments are the
/// maximal runs of consecutive leaves that fall in one region, so their
/// frontiers concatenate to the frontier of t.
inline Segmentation segment_max_monotonic(const PlainTree& t) {
  NodePath path;
  detail::require_binary(t, path);

  Segmentation out;
  std::vector<NodePath> region_tops{NodePath{}};
  std::size_t last_region = static_cast<std::size_t>(-1);
  std::function<void(const PlainTree&, std::size_t)> walk = [&](const PlainTree& n,
                                                                std::size_t region) {
    if (n.is_leaf()) {
      if (out.segments.empty() || region != last_region)
        out.segments.push_back({region_tops[region], {}});
      out.segments.back().frontier.push_back(n.form);
      last_region = region;
      return;
    }
    const bool joint = detail::is_joint(n);
    if (joint) out.joints.push_back(path);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      path.push_back(i);
      std::size_t child_region = region;
      if (joint) {
        region_tops.push_back(path);
        child_region = region_tops.size() - 1;
      }
      walk(n.children[i], child_region);
      path.pop_back();
    }
  };
  walk(t, 0);
  return out;
}

}  // namespace synspace
