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

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "synspace/dot.hpp"
#include "synspace/error.hpp"
#include "synspace/rational.hpp"
#include "synspace/space.hpp"

namespace synspace {

using NodeId = std::size_t;

struct DendrogramNode {
  Rational height;
  std::vector<NodeId> children;
  /// Required on leaves (the point label); optional on internal nodes.
  std::string label;

  bool is_leaf() const noexcept { return children.empty(); }
};

/// Rooted tree with leaf set and strictly decreasing heights towards the
/// leaves (leaves sit at 0). Every node has one mother, except the root.
class Dendrogram {
 public:
  Dendrogram(std::vector<DendrogramNode> nodes, NodeId root)
      : nodes_(std::move(nodes)), root_(root) {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedDendrogram, why); };
    if (nodes_.empty()) bad("no nodes");
    if (root_ >= nodes_.size()) bad("root index out of range");
    parent_.assign(nodes_.size(), std::nullopt);
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      const auto& n = nodes_[id];
      if (!n.label.empty() && !by_label_.emplace(n.label, id).second)
        bad("duplicate label '" + n.label + "'");
      if (n.is_leaf()) {
        if (n.label.empty()) bad("leaf " + std::to_string(id) + " has no label");
        if (n.height != 0) bad("leaf '" + n.label + "' must sit at height 0");
        continue;
      }
      if (n.children.size() < 2) bad("internal node " + name(id) + " has fewer than 2 children");
      for (NodeId c : n.children) {
        if (c >= nodes_.size()) bad("child index out of range under " + name(id));
        if (parent_[c]) bad("node " + name(c) + " has more than one mother");
        if (!(nodes_[c].height < n.height))
          bad("height must strictly decrease from " + name(id) + " to " + name(c));
        parent_[c] = id;
      }
    }
    if (parent_[root_]) bad("root has a mother");
    std::size_t reached = 0;
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      ++reached;
      for (NodeId c : nodes_[id].children) stack.push_back(c);
    }
    if (reached != nodes_.size()) bad("some nodes are not reachable from the root");
  }

  static Dendrogram leaf(PointId label) {
    return Dendrogram({DendrogramNode{0, {}, std::move(label)}}, 0);
  }

  /// New root at `height` over copies of the given trees.
  static Dendrogram join(const Rational& height, const std::vector<Dendrogram>& parts,
                         std::string label = {}) {
    std::vector<DendrogramNode> nodes;
    std::vector<NodeId> roots;
    for (const auto& part : parts) {
      const NodeId offset = nodes.size();
      for (auto n : part.nodes_) {
        for (auto& c : n.children) c += offset;
        nodes.push_back(std::move(n));
      }
      roots.push_back(part.root_ + offset);
    }
    nodes.push_back(DendrogramNode{height, roots, std::move(label)});
    const NodeId root = nodes.size() - 1;
    return Dendrogram(std::move(nodes), root);
  }

  const std::vector<DendrogramNode>& nodes() const noexcept { return nodes_; }
  const DendrogramNode& node(NodeId id) const { return nodes_.at(check(id)); }
  NodeId root() const noexcept { return root_; }
  std::optional<NodeId> parent(NodeId id) const { return parent_.at(check(id)); }

  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < nodes_.size(); ++id)
      if (nodes_[id].is_leaf()) out.push_back(id);
    return out;
  }

  std::optional<NodeId> find(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
  }

  NodeId require(const std::string& label) const {
    if (auto id = find(label)) return *id;
    throw Error(ErrorKind::UnknownNode, "no node labeled '" + label + "'", {label});
  }

  /// Display name: the label, or "n<id>" for unlabeled internal nodes.
  std::string name(NodeId id) const {
    const auto& l = nodes_.at(id).label;
    return l.empty() ? "n" + std::to_string(id) : l;
  }

  /// Order-free encoding; two dendrograms are equal iff these match.
  std::string canonical(NodeId id) const {
    const auto& n = nodes_.at(check(id));
    if (n.is_leaf()) return n.label;
    std::vector<std::string> parts;
    for (NodeId c : n.children) parts.push_back(canonical(c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(" + to_string(n.height) + ":";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out + ")";
  }
  std::string canonical() const { return canonical(root_); }

  /// Children ordered by canonical encoding, for deterministic output.
  std::vector<NodeId> sorted_children(NodeId id) const {
    auto kids = node(id).children;
    std::vector<std::pair<std::string, NodeId>> keyed;
    for (NodeId c : kids) keyed.emplace_back(canonical(c), c);
    std::sort(keyed.begin(), keyed.end());
    kids.clear();
    for (auto& [_, c] : keyed) kids.push_back(c);
    return kids;
  }

  /// Equality up to child reordering; internal labels are ignored.
  bool operator==(const Dendrogram& o) const { return canonical() == o.canonical(); }

 private:
  NodeId check(NodeId id) const {
    if (id >= nodes_.size())
      throw Error(ErrorKind::UnknownNode, "node " + std::to_string(id) + " does not exist");
    return id;
  }

  std::vector<DendrogramNode> nodes_;
  NodeId root_;
  std::vector<std::optional<NodeId>> parent_;
  std::unordered_map<std::string, NodeId> by_label_;
};

/// Agglomerative construction. Clusters at the current minimal linkage are
/// merged together into one node, so ties give multi-child nodes.
inline Dendrogram build_dendrogram(const DistanceMatrix& m) {
  SpaceClass cls = classify_space(m);
  if (cls.kind != SpaceKind::Ultrametric) {
    std::string why = cls.witness ? cls.witness->detail : "not ultrametric";
    throw Error(ErrorKind::NotUltrametric, why,
                cls.witness ? cls.witness->points : std::vector<std::string>{});
  }

  struct Cluster {
    NodeId node;
    std::vector<std::size_t> members;
  };
  std::vector<DendrogramNode> nodes;
  std::vector<Cluster> clusters;
  for (std::size_t i = 0; i < m.size(); ++i) {
    nodes.push_back(DendrogramNode{0, {}, m.points()[i]});
    clusters.push_back({i, {i}});
  }

  auto linkage = [&](const Cluster& a, const Cluster& b) {
    Rational best = m.at(a.members.front(), b.members.front());
    for (auto i : a.members)
      for (auto j : b.members) best = std::min(best, m.at(i, j));
    return best;
  };

  while (clusters.size() > 1) {
    const std::size_t c = clusters.size();
    std::vector<std::vector<Rational>> link(c, std::vector<Rational>(c));
    Rational h = linkage(clusters[0], clusters[1]);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j) {
        link[i][j] = linkage(clusters[i], clusters[j]);
        h = std::min(h, link[i][j]);
      }

    std::vector<std::size_t> comp(c);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return comp[x] == x ? x : comp[x] = find(comp[x]);
    };
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = i + 1; j < c; ++j)
        if (link[i][j] == h) comp[find(j)] = find(i);

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < c; ++i) groups[find(i)].push_back(i);

    std::vector<Cluster> next;
    for (auto& [_, group] : groups) {
      if (group.size() == 1) {
        next.push_back(std::move(clusters[group.front()]));
        continue;
      }
      DendrogramNode merged{h, {}, {}};
      Cluster joined{nodes.size(), {}};
      for (auto g : group) {
        merged.children.push_back(clusters[g].node);
        joined.members.insert(joined.members.end(), clusters[g].members.begin(),
                              clusters[g].members.end());
      }
      nodes.push_back(std::move(merged));
      next.push_back(std::move(joined));
    }
    clusters = std::move(next);
  }
  const NodeId root = clusters.front().node;
  return Dendrogram(std::move(nodes), root);
}

/// d(x,y) = height of the lowest common ancestor. Points sorted by label.
inline DistanceMatrix cophenetic_matrix(const Dendrogram& t) {
  std::vector<NodeId> leaves = t.leaves();
  std::sort(leaves.begin(), leaves.end(),
            [&](NodeId a, NodeId b) { return t.node(a).label < t.node(b).label; });

  auto ancestors = [&](NodeId id) {
    std::vector<NodeId> chain{id};
    while (auto p = t.parent(chain.back())) chain.push_back(*p);
    return chain;
  };
  const std::size_t n = leaves.size();
  std::vector<std::vector<NodeId>> chains;
  for (NodeId l : leaves) chains.push_back(ancestors(l));

  std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // The chains share a suffix ending at the root; walk it from the top.
      auto a = chains[i].rbegin();
      auto b = chains[j].rbegin();
      NodeId lca = *a;
      while (a != chains[i].rend() && b != chains[j].rend() && *a == *b) {
        lca = *a;
        ++a;
        ++b;
      }
      r[i][j] = r[j][i] = t.node(lca).height;
    }
  std::vector<PointId> labels;
  for (NodeId l : leaves) labels.push_back(t.node(l).label);
  return DistanceMatrix(std::move(labels), r);
}

/// X-bar template over {Spec, X, YP}: the head is closer to its complement
/// (base + 1) than to its specifier (base + 2).
inline DistanceMatrix xbar_matrix(unsigned base) {
  const Rational i(base);
  return DistanceMatrix({"Spec", "X", "YP"}, {{0, i + 2, i + 2},
                                              {i + 2, 0, i + 1},
                                              {i + 2, i + 1, 0}});
}

/// a dominates b iff h(a) >= h(b) and b is reachable from a by a walk that
/// goes downward except for at most one upward edge.
inline bool roberts_dominates(const Dendrogram& t, NodeId a, NodeId b) {
  const auto& na = t.node(a);
  const auto& nb = t.node(b);
  if (na.height < nb.height) return false;
  if (a == b) return true;

  const std::size_t n = t.nodes().size();
  std::vector<std::array<bool, 2>> seen(n, {false, false});
  std::deque<std::pair<NodeId, int>> queue{{a, 0}};
  seen[a][0] = true;
  while (!queue.empty()) {
    auto [v, ups] = queue.front();
    queue.pop_front();
    if (v == b) return true;
    for (NodeId c : t.node(v).children)
      if (!seen[c][ups]) {
        seen[c][ups] = true;
        queue.emplace_back(c, ups);
      }
    if (ups == 0)
      if (auto p = t.parent(v); p && !seen[*p][1]) {
        seen[*p][1] = true;
        queue.emplace_back(*p, 1);
      }
  }
  return false;
}

inline bool roberts_dominates(const Dendrogram& t, const std::string& a, const std::string& b) {
  return roberts_dominates(t, t.require(a), t.require(b));
}

/// Heights of all nodes, leaves included.
inline std::map<NodeId, Rational> leaf_heights(const Dendrogram& t) {
  std::map<NodeId, Rational> out;
  for (NodeId id = 0; id < t.nodes().size(); ++id) out.emplace(id, t.node(id).height);
  return out;
}

inline std::string to_dot(const Dendrogram& t) {
  std::ostringstream os;
  os << "digraph dendrogram {\n";
  std::vector<NodeId> order;
  std::vector<NodeId> stack{t.root()};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    order.push_back(id);
    auto kids = t.sorted_children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  // Renumber in traversal order so output does not depend on storage order.
  std::unordered_map<NodeId, std::size_t> seq;
  for (std::size_t i = 0; i < order.size(); ++i) seq[order[i]] = i;
  for (NodeId id : order) {
    const auto& n = t.node(id);
    os << "  d" << seq[id] << " [label=\"";
    if (n.is_leaf())
      os << detail::dot_escape(n.label) << "\", shape=plaintext];\n";
    else
      os << (n.label.empty() ? "" : detail::dot_escape(n.label) + " ") << "h=" << to_string(n.height) << "\"];\n";
  }
  for (NodeId id : order)
    for (NodeId c : t.sorted_children(id)) os << "  d" << seq[id] << " -> d" << seq[c] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace synspace
