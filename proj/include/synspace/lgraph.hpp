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

// Directed graphs as structural descriptions. Vertices carry an address
// (the referent they point to); multidominance is allowed, so a vertex can
// have several mothers.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <tuple>
#include <utility>
#include <vector>

#include "synspace/dot.hpp"
#include "synspace/error.hpp"
#include "synspace/rational.hpp"

namespace synspace {

using VertexId = std::string;

struct Vertex {
  VertexId vid;
  std::string address;
  std::string form;
  bool predicative = false;

  bool operator==(const Vertex&) const = default;
};

struct Edge {
  VertexId from;
  VertexId to;
  std::optional<Rational> weight;
};

class LGraph {
 public:
  LGraph() = default;

  /// Duplicate edges collapse into one (the first weight wins).
  LGraph(std::vector<Vertex> vertices, const std::vector<Edge>& edges)
      : vertices_(std::move(vertices)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (vertices_[i].vid.empty())
        throw Error(ErrorKind::MalformedGraph, "vertex " + std::to_string(i) + " has an empty vid");
      if (!index_.emplace(vertices_[i].vid, i).second)
        throw Error(ErrorKind::MalformedGraph, "duplicate vid '" + vertices_[i].vid + "'",
                    {vertices_[i].vid});
    }
    for (const auto& e : edges) {
      const std::size_t a = require(e.from);
      const std::size_t b = require(e.to);
      if (a == b)
        throw Error(ErrorKind::MalformedGraph, "self-loop on '" + e.from + "'", {e.from});
      if (edges_.emplace(a, b).second && e.weight) weights_.emplace(std::pair{a, b}, *e.weight);
    }
  }

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Vertex& vertex(const VertexId& v) const { return vertices_[require(v)]; }
  bool contains(const VertexId& v) const { return index_.count(v) != 0; }

  std::size_t require(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end())
      throw Error(ErrorKind::UnknownVertex, "no vertex '" + v + "'", {v});
    return it->second;
  }

  bool has_edge(const VertexId& a, const VertexId& b) const {
    return edges_.count({require(a), require(b)}) != 0;
  }

  /// Edges in (from, to) index order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (auto [a, b] : edges_) {
      auto w = weights_.find({a, b});
      out.push_back({vertices_[a].vid, vertices_[b].vid,
                     w == weights_.end() ? std::nullopt : std::optional<Rational>(w->second)});
    }
    return out;
  }

  std::vector<VertexId> mothers(const VertexId& v) const {
    const std::size_t i = require(v);
    std::vector<VertexId> out;
    for (auto [a, b] : edges_)
      if (b == i) out.push_back(vertices_[a].vid);
    return out;
  }

  std::vector<VertexId> daughters(const VertexId& v) const {
    const std::size_t i = require(v);
    std::vector<VertexId> out;
    for (auto it = edges_.lower_bound({i, 0}); it != edges_.end() && it->first == i; ++it)
      out.push_back(vertices_[it->second].vid);
    return out;
  }

  /// Vertices in `group` become one vertex `merged` that inherits every
  /// incident edge. Edges inside the group would be self-loops and are dropped;
  /// parallel edges collapse.
  LGraph merge(const std::vector<VertexId>& group, Vertex merged) const {
    std::set<std::size_t> members;
    for (const auto& v : group) members.insert(require(v));
    std::vector<Vertex> vs;
    std::vector<VertexId> rename(vertices_.size());
    bool placed = false;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (members.count(i)) {
        rename[i] = merged.vid;
        if (!placed) {
          vs.push_back(merged);
          placed = true;
        }
      } else {
        rename[i] = vertices_[i].vid;
        vs.push_back(vertices_[i]);
      }
    }
    std::vector<Edge> es;
    for (const auto& e : edges()) {
      const auto& a = rename[require(e.from)];
      const auto& b = rename[require(e.to)];
      if (a != b) es.push_back({a, b, e.weight});
    }
    return LGraph(std::move(vs), es);
  }

 private:
  std::vector<Vertex> vertices_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
  std::map<std::pair<std::size_t, std::size_t>, Rational> weights_;
};

/// rho: an edge from v1 to v2.
inline bool immediately_dominates(const LGraph& g, const VertexId& v1, const VertexId& v2) {
  return g.has_edge(v1, v2);
}

/// rho*: a directed walk from v1 to v2, v1 != v2 (irreflexive).
inline bool dominates(const LGraph& g, const VertexId& v1, const VertexId& v2) {
  g.require(v1);
  g.require(v2);
  if (v1 == v2) return false;
  std::set<VertexId> seen{v1};
  std::deque<VertexId> queue{v1};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& d : g.daughters(v)) {
      if (d == v2) return true;
      if (seen.insert(d).second) queue.push_back(d);
    }
  }
  return false;
}

inline bool is_ordered(const LGraph& g, const VertexId& v1, const VertexId& v2) {
  return immediately_dominates(g, v1, v2) || immediately_dominates(g, v2, v1) ||
         dominates(g, v1, v2) || dominates(g, v2, v1);
}

enum class WalkClass { Invalid, Walk, Trail, Path };

constexpr std::string_view walk_name(WalkClass w) noexcept {
  switch (w) {
    case WalkClass::Invalid: return "Invalid";
    case WalkClass::Walk: return "Walk";
    case WalkClass::Trail: return "Trail";
    case WalkClass::Path: return "Path";
  }
  return "Unknown";
}

/// Consecutive vertices must be adjacent (an edge in either direction). A
/// step u-v uses edge (u,v) when it exists, otherwise (v,u).
inline WalkClass classify_walk(const LGraph& g, const std::vector<VertexId>& seq) {
  if (seq.empty()) return WalkClass::Invalid;
  for (const auto& v : seq)
    if (!g.contains(v)) return WalkClass::Invalid;
  std::set<std::pair<VertexId, VertexId>> used;
  bool edge_repeat = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const auto& u = seq[i];
    const auto& v = seq[i + 1];
    std::pair<VertexId, VertexId> e;
    if (g.has_edge(u, v))
      e = {u, v};
    else if (g.has_edge(v, u))
      e = {v, u};
    else
      return WalkClass::Invalid;
    if (!used.insert(e).second) edge_repeat = true;
  }
  if (edge_repeat) return WalkClass::Walk;
  std::set<VertexId> distinct(seq.begin(), seq.end());
  return distinct.size() == seq.size() ? WalkClass::Path : WalkClass::Trail;
}

/// Vertices with two or more mothers.
inline std::vector<VertexId> single_mother_violations(const LGraph& g) {
  std::vector<VertexId> out;
  for (const auto& v : g.vertices())
    if (g.mothers(v.vid).size() >= 2) out.push_back(v.vid);
  return out;
}

/// One directed cycle as a closed vertex sequence (first vertex repeated at
/// the end), if the graph has any.
inline std::optional<std::vector<VertexId>> find_cycle(const LGraph& g) {
  enum Color { White, Grey, Black };
  std::unordered_map<VertexId, Color> color;
  std::vector<VertexId> stack;
  std::optional<std::vector<VertexId>> found;
  std::function<void(const VertexId&)> visit = [&](const VertexId& v) {
    color[v] = Grey;
    stack.push_back(v);
    for (const auto& d : g.daughters(v)) {
      if (found) break;
      if (color[d] == Grey) {
        auto start = std::find(stack.begin(), stack.end(), d);
        std::vector<VertexId> cycle(start, stack.end());
        cycle.push_back(d);
        found = std::move(cycle);
      } else if (color[d] == White) {
        visit(d);
      }
    }
    stack.pop_back();
    color[v] = Black;
  };
  for (const auto& v : g.vertices()) {
    if (found) break;
    if (color[v.vid] == White) visit(v.vid);
  }
  return found;
}

enum class Occurrence { Single, Repetition, Copy };

constexpr std::string_view occurrence_name(Occurrence o) noexcept {
  switch (o) {
    case Occurrence::Single: return "Single";
    case Occurrence::Repetition: return "Repetition";
    case Occurrence::Copy: return "Copy";
  }
  return "Unknown";
}

/// Copy: immediately dominated by >= 2 distinct predicative vertices.
/// Repetition: another vertex has the same form but a different address.
inline std::map<VertexId, Occurrence> classify_occurrences(const LGraph& g) {
  std::map<VertexId, Occurrence> out;
  for (const auto& v : g.vertices()) {
    std::size_t predicative_mothers = 0;
    for (const auto& m : g.mothers(v.vid))
      if (g.vertex(m).predicative) ++predicative_mothers;
    if (predicative_mothers >= 2) {
      out[v.vid] = Occurrence::Copy;
      continue;
    }
    bool repeated = std::any_of(g.vertices().begin(), g.vertices().end(), [&](const Vertex& w) {
      return w.vid != v.vid && w.form == v.form && w.address != v.address;
    });
    out[v.vid] = repeated ? Occurrence::Repetition : Occurrence::Single;
  }
  return out;
}

/// Deterministic DOT: vertices and edges sorted by vid.
inline std::string to_dot(const LGraph& g, const std::string& name = "lgraph") {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(name) << "\" {\n";
  std::vector<const Vertex*> vs;
  for (const auto& v : g.vertices()) vs.push_back(&v);
  std::sort(vs.begin(), vs.end(), [](auto* a, auto* b) { return a->vid < b->vid; });
  for (auto* v : vs) {
    os << "  \"" << detail::dot_escape(v->vid) << "\" [label=\"" << detail::dot_escape(v->form)
       << "\\n" << detail::dot_escape(v->address) << "\"" << (v->predicative ? ", shape=box" : "")
       << "];\n";
  }
  auto es = g.edges();
  std::sort(es.begin(), es.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  for (const auto& e : es) {
    os << "  \"" << detail::dot_escape(e.from) << "\" -> \"" << detail::dot_escape(e.to) << "\"";
    if (e.weight) os << " [label=\"" << to_string(*e.weight) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace synspace
