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

// Annotated sentences, their folding/self-intersection analysis, chain
// collapse as distance-zero identification, substitution of terms,
// relation-preserving mappings and derivations as metrization timelines.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "synspace/error.hpp"
#include "synspace/lgraph.hpp"
#include "synspace/rational.hpp"
#include "synspace/space.hpp"

namespace synspace {

// ---------------------------------------------------------------------------
// Annotated structural descriptions

/// Inclusive token span. The final gap is the virtual slot {n, n} where n
/// is the token count.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool overlaps(const Span& o) const noexcept { return start <= o.end && o.start <= end; }
  auto operator<=>(const Span&) const = default;
};

struct AddressAnnotation {
  std::string id;
  std::vector<Span> occurrences;
  bool gap_final = false;
};

/// A head token and its dependents; the head immediately dominates the head
/// of each dependent. Indices may name the final gap (n).
struct Bracket {
  std::size_t head = 0;
  std::vector<Bracket> dependents;
};

struct AnnotatedSD {
  std::vector<std::string> tokens;
  std::vector<AddressAnnotation> addresses;
  std::vector<Bracket> bracketing;
  /// Token indices of predicative expressions.
  std::vector<std::size_t> predicative;

  bool has_final_gap() const {
    return std::any_of(addresses.begin(), addresses.end(),
                       [](const AddressAnnotation& a) { return a.gap_final; });
  }

  /// Occurrence contexts of an address, the final gap included.
  std::vector<Span> contexts(const AddressAnnotation& a) const {
    std::vector<Span> out = a.occurrences;
    if (a.gap_final) out.push_back({tokens.size(), tokens.size()});
    return out;
  }
};

inline void validate(const AnnotatedSD& sd) {
  auto bad = [](const std::string& why, std::vector<std::string> w = {}) {
    throw Error(ErrorKind::MalformedAnnotation, why, std::move(w));
  };
  const std::size_t n = sd.tokens.size();
  if (n == 0) bad("no tokens");
  std::set<std::string> ids;
  std::size_t gaps = 0;
  for (const auto& a : sd.addresses) {
    if (a.id.empty()) bad("address with empty id");
    if (!ids.insert(a.id).second) bad("duplicate address '" + a.id + "'", {a.id});
    if (a.gap_final) ++gaps;
    if (a.occurrences.empty() && !a.gap_final) bad("address '" + a.id + "' has no occurrence", {a.id});
    for (std::size_t i = 0; i < a.occurrences.size(); ++i) {
      const Span& s = a.occurrences[i];
      if (s.start > s.end || s.end >= n)
        bad("span [" + std::to_string(s.start) + "," + std::to_string(s.end) + "] of '" + a.id +
                "' is out of bounds",
            {a.id});
      for (std::size_t j = 0; j < i; ++j)
        if (s.overlaps(a.occurrences[j]))
          bad("overlapping spans for address '" + a.id + "'", {a.id});
    }
  }
  if (gaps > 1) bad("only one address may fill the final gap");
  const std::size_t limit = gaps ? n : n - 1;
  for (auto p : sd.predicative)
    if (p > limit) bad("predicative index " + std::to_string(p) + " is out of bounds");
}

// ---------------------------------------------------------------------------
// Folding, gluing and self-intersection

struct Identifications {
  std::size_t gluings = 0;
  std::size_t self_intersections = 0;
};

/// Counting rule for one address with the given occurrence contexts in a
/// sentence of `n` tokens. Exactly two contexts sitting at opposite
/// peripheries (one starts at token 0, the other ends on the last token or
/// is the final gap) glue end to end; otherwise every pair of contexts is a
/// self-intersection.
inline Identifications count_identifications(const std::vector<Span>& contexts, std::size_t n) {
  const std::size_t k = contexts.size();
  if (k < 2) return {};
  auto left = [](const Span& s) { return s.start == 0; };
  auto right = [n](const Span& s) { return s.end + 1 == n || s.start == n; };
  if (k == 2) {
    const Span& a = contexts[0];
    const Span& b = contexts[1];
    if ((left(a) && right(b)) || (left(b) && right(a))) return {1, 0};
  }
  return {0, k * (k - 1) / 2};
}

struct TopoReport {
  std::size_t foldings = 0;
  std::map<std::string, std::size_t> self_intersections;
  std::size_t total_intersections = 0;
  std::vector<std::string> glued;
  std::string classification;
};

namespace detail {
inline std::string describe(const TopoReport& r) {
  std::vector<std::string> parts;
  if (r.foldings == 1)
    parts.push_back("end-to-end gluing");
  else if (r.foldings > 1)
    parts.push_back(std::to_string(r.foldings) + " end-to-end gluings");
  for (const auto& [id, c] : r.self_intersections)
    parts.push_back(std::to_string(c) + (c == 1 ? " self-intersection" : " self-intersections") +
                    " at " + id);
  if (parts.empty()) return "no folding";
  if (r.foldings == 1 && r.total_intersections == 0) return "end-to-end gluing (unknot)";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}
}  // namespace detail

inline TopoReport analyze_topology(const AnnotatedSD& sd) {
  validate(sd);
  TopoReport r;
  for (const auto& a : sd.addresses) {
    auto ids = count_identifications(sd.contexts(a), sd.tokens.size());
    if (ids.gluings) {
      r.foldings += ids.gluings;
      r.glued.push_back(a.id);
    }
    if (ids.self_intersections) {
      r.self_intersections[a.id] += ids.self_intersections;
      r.total_intersections += ids.self_intersections;
    }
  }
  r.classification = detail::describe(r);
  return r;
}

/// Cross-derivational analysis: sentences share one address namespace and
/// their reports are summed.
inline TopoReport analyze_topology(const std::vector<AnnotatedSD>& parts) {
  TopoReport r;
  for (const auto& sd : parts) {
    TopoReport one = analyze_topology(sd);
    r.foldings += one.foldings;
    r.total_intersections += one.total_intersections;
    for (const auto& [id, c] : one.self_intersections) r.self_intersections[id] += c;
    for (auto& g : one.glued)
      if (std::find(r.glued.begin(), r.glued.end(), g) == r.glued.end()) r.glued.push_back(g);
  }
  r.classification = detail::describe(r);
  return r;
}

// ---------------------------------------------------------------------------
// From annotations to L-graphs

/// One vertex per address occurrence (the gap included) and one per token
/// not covered by any occurrence. A bracketing index maps to the smallest
/// occurrence containing it. Vids: "w<i>", "w<i>-<j>", "gap".
inline LGraph sd_to_graph(const AnnotatedSD& sd) {
  validate(sd);
  const std::size_t n = sd.tokens.size();

  struct Unit {
    Span span;
    std::string address;
  };
  std::vector<Unit> units;
  std::set<Span> taken;
  for (const auto& a : sd.addresses)
    for (const auto& s : sd.contexts(a)) {
      if (!taken.insert(s).second)
        throw Error(ErrorKind::MalformedAnnotation,
                    "two occurrences share span [" + std::to_string(s.start) + "," +
                        std::to_string(s.end) + "]");
      units.push_back({s, a.id});
    }
  for (std::size_t i = 0; i < n; ++i) {
    bool covered = std::any_of(units.begin(), units.end(), [&](const Unit& u) {
      return u.span.start <= i && i <= u.span.end;
    });
    if (!covered) units.push_back({{i, i}, {}});
  }
  std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
    return std::tuple(a.span.start, b.span.end) < std::tuple(b.span.start, a.span.end);
  });

  auto vid_of = [n](const Span& s) {
    if (s.start == n) return std::string("gap");
    if (s.start == s.end) return "w" + std::to_string(s.start);
    return "w" + std::to_string(s.start) + "-" + std::to_string(s.end);
  };
  const std::size_t limit = sd.has_final_gap() ? n : n - 1;
  auto unit_of = [&](std::size_t token) -> const Unit& {
    if (token > limit)
      throw Error(ErrorKind::MalformedAnnotation,
                  "bracketing index " + std::to_string(token) + " does not name a token");
    const Unit* best = nullptr;
    for (const auto& u : units)
      if (u.span.start <= token && token <= u.span.end &&
          (!best || u.span.end - u.span.start < best->span.end - best->span.start))
        best = &u;
    return *best;
  };

  std::set<std::size_t> predicative(sd.predicative.begin(), sd.predicative.end());
  std::vector<Vertex> vertices;
  for (const auto& u : units) {
    Vertex v;
    v.vid = vid_of(u.span);
    v.address = u.address.empty() ? v.vid : u.address;
    if (u.span.start == n) {
      v.form = "__";
    } else {
      for (std::size_t i = u.span.start; i <= u.span.end; ++i)
        v.form += (i > u.span.start ? " " : "") + sd.tokens[i];
    }
    for (std::size_t i = u.span.start; i <= u.span.end; ++i)
      if (predicative.count(i) && &unit_of(i) == &u) v.predicative = true;
    vertices.push_back(std::move(v));
  }

  std::vector<Edge> edges;
  std::function<void(const Bracket&)> walk = [&](const Bracket& b) {
    const std::string head = vid_of(unit_of(b.head).span);
    for (const auto& d : b.dependents) {
      const std::string dep = vid_of(unit_of(d.head).span);
      if (dep != head) edges.push_back({head, dep, std::nullopt});
      walk(d);
    }
  };
  for (const auto& b : sd.bracketing) walk(b);
  return LGraph(std::move(vertices), edges);
}

// ---------------------------------------------------------------------------
// Chain collapse

struct Workspace {
  LGraph graph;
  DistanceMatrix field;
};

/// Every vertex with address `addr` merges into one vertex (the first one's
/// vid survives) and their field points, looked up by vid, are drawn to
/// distance 0. The field keeps both labels.
inline Workspace collapse_chain(const LGraph& g, const DistanceMatrix& m, const std::string& addr) {
  std::vector<VertexId> group;
  for (const auto& v : g.vertices())
    if (v.address == addr) group.push_back(v.vid);
  if (group.size() < 2)
    throw Error(ErrorKind::NothingToCollapse,
                "address '" + addr + "' has " + std::to_string(group.size()) + " vertex(es)", {addr});

  DistanceMatrix field = m;
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = i + 1; j < group.size(); ++j)
      if (field(group[i], group[j]) > 0) field = metrize_step(field, group[i], group[j], 0);

  Vertex merged{group.front(), addr, {}, false};
  std::vector<std::string> forms;
  for (const auto& vid : group) {
    const Vertex& v = g.vertex(vid);
    if (std::find(forms.begin(), forms.end(), v.form) == forms.end()) forms.push_back(v.form);
    merged.predicative = merged.predicative || v.predicative;
  }
  for (std::size_t i = 0; i < forms.size(); ++i) merged.form += (i ? "/" : "") + forms[i];
  return {g.merge(group, merged), field};
}

// ---------------------------------------------------------------------------
// Terms and substitution

/// Rooted labeled tree. A node without children is a word, unless it is an
/// open slot, which may only sit on the frontier.
struct Term {
  std::string label;
  std::vector<Term> children;
  bool slot = false;

  static Term word(std::string w) { return Term{std::move(w), {}, false}; }
  static Term open(std::string label) { return Term{std::move(label), {}, true}; }
  static Term node(std::string label, std::vector<Term> children) {
    return Term{std::move(label), std::move(children), false};
  }

  bool operator==(const Term&) const = default;
};

inline void validate(const Term& t) {
  if (t.label.empty()) throw Error(ErrorKind::MalformedTerm, "term node with empty label");
  if (t.slot && !t.children.empty())
    throw Error(ErrorKind::MalformedTerm, "open slot '" + t.label + "' has children");
  for (const auto& c : t.children) validate(c);
}

/// "[K John [M wished [L]]]": labeled brackets, words bare, slots "[L]".
inline std::string bracketing(const Term& t) {
  if (t.slot) return "[" + t.label + "]";
  if (t.children.empty()) return t.label;
  std::string out = "[" + t.label;
  for (const auto& c : t.children) out += " " + bracketing(c);
  return out + "]";
}

/// Inverse of bracketing(const Term&). The root must be bracketed.
inline Term parse_term(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) toks.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (c == '[' || c == ']') {
      flush();
      toks.emplace_back(1, c);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
    }
  }
  flush();

  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "term at token " + std::to_string(pos) + ": " + why);
  };
  std::function<Term()> parse = [&]() -> Term {
    if (pos >= toks.size() || toks[pos] != "[") fail("expected '['");
    ++pos;
    if (pos >= toks.size() || toks[pos] == "[" || toks[pos] == "]") fail("expected a label");
    Term t{toks[pos++], {}, false};
    while (pos < toks.size() && toks[pos] != "]") {
      if (toks[pos] == "[")
        t.children.push_back(parse());
      else
        t.children.push_back(Term::word(toks[pos++]));
    }
    if (pos >= toks.size()) fail("unbalanced brackets");
    ++pos;
    if (t.children.empty()) t.slot = true;
    return t;
  };
  Term root = parse();
  if (pos != toks.size()) fail("trailing input");
  return root;
}

inline std::size_t count_slots(const Term& t, const std::string& label) {
  std::size_t n = t.slot && t.label == label ? 1 : 0;
  for (const auto& c : t.children) n += count_slots(c, label);
  return n;
}

/// Replaces the single open slot `slot_label` of k with l. Works only when
/// l's root is identical to the slot it fills.
inline Term substitute(const Term& k, const std::string& slot_label, const Term& l) {
  validate(k);
  validate(l);
  const std::size_t slots = count_slots(k, slot_label);
  if (slots != 1)
    throw Error(ErrorKind::SlotResolutionError,
                "expected exactly one open slot '" + slot_label + "', found " + std::to_string(slots),
                {slot_label});
  if (l.label != slot_label)
    throw Error(ErrorKind::RootIdentityViolation,
                "root '" + l.label + "' is not identical to slot '" + slot_label + "'",
                {l.label, slot_label});
  std::function<Term(const Term&)> rebuild = [&](const Term& t) -> Term {
    if (t.slot && t.label == slot_label) return l;
    Term out{t.label, {}, t.slot};
    for (const auto& c : t.children) out.children.push_back(rebuild(c));
    return out;
  };
  return rebuild(k);
}

// ---------------------------------------------------------------------------
// Relations and homomorphisms

struct Relation {
  std::string name;
  std::string first;
  std::string second;
  auto operator<=>(const Relation&) const = default;
};

/// Unnamed pairs such as (be, murdered) use this relation name.
inline const std::string kPlainRelation = "rho";

struct RelationSet {
  std::set<std::string> universe;
  std::set<Relation> relations;

  RelationSet() = default;
  RelationSet(std::set<Relation> rels, std::set<std::string> declared = {})
      : universe(std::move(declared)), relations(std::move(rels)) {
    for (const auto& r : relations) {
      universe.insert(r.first);
      universe.insert(r.second);
    }
  }

  bool contains(const Relation& r) const { return relations.count(r) != 0; }
};

/// Parent-to-daughter relations over the non-slot nodes of a term.
inline RelationSet term_relations(const Term& t) {
  std::set<Relation> rels;
  std::set<std::string> universe;
  std::function<void(const Term&)> walk = [&](const Term& n) {
    if (!n.slot) universe.insert(n.label);
    for (const auto& c : n.children) {
      if (!c.slot && !n.slot) rels.insert({kPlainRelation, n.label, c.label});
      walk(c);
    }
  };
  walk(t);
  return RelationSet(std::move(rels), std::move(universe));
}

/// True iff every (R, x, y) in src has (R, f(x), f(y)) in dst.
inline bool check_homomorphism(const RelationSet& src, const RelationSet& dst,
                               const std::map<std::string, std::string>& f) {
  for (const auto& e : src.universe)
    if (!f.count(e))
      throw Error(ErrorKind::PartialMapping, "mapping is undefined on '" + e + "'", {e});
  return std::all_of(src.relations.begin(), src.relations.end(), [&](const Relation& r) {
    return dst.contains({r.name, f.at(r.first), f.at(r.second)});
  });
}

// ---------------------------------------------------------------------------
// Derivations

struct MetrizeStep {
  PointId x;
  PointId y;
  Rational distance;
};

struct CollapseStep {
  std::string address;
};

struct SubstituteStep {
  std::string slot;
  Term term;
};

using DerivationStep = std::variant<MetrizeStep, CollapseStep, SubstituteStep>;
using DerivationScript = std::vector<DerivationStep>;

inline std::string describe(const DerivationStep& step) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MetrizeStep>)
          return "metrize " + s.x + " " + s.y + " " + to_string(s.distance);
        else if constexpr (std::is_same_v<T, CollapseStep>)
          return "collapse " + s.address;
        else
          return "substitute " + s.slot;
      },
      step);
}

struct Snapshot {
  std::size_t step = 0;
  std::string action;
  DistanceMatrix field;
  /// Field after a metrize edit but before re-closing it.
  std::optional<DistanceMatrix> pre_closure;
  LGraph graph;
  SpaceClass space_class;
  std::optional<Term> term;
};

/// Runs the script in order from an ultrametric ground state. Snapshot 0 is
/// the initial state; snapshot i follows step i. Errors carry the step.
inline std::vector<Snapshot> apply_derivation(const DerivationScript& script,
                                              const DistanceMatrix& field, const LGraph& graph,
                                              std::optional<Term> term = std::nullopt) {
  SpaceClass initial = classify_space(field);
  if (initial.kind != SpaceKind::Ultrametric)
    throw Error(ErrorKind::NotUltrametric,
                "the ground state must be ultrametric" +
                    (initial.witness ? ": " + initial.witness->detail : std::string()),
                initial.witness ? initial.witness->points : std::vector<std::string>{})
        .at_step(0);

  std::vector<Snapshot> out;
  out.push_back({0, "initial", field, std::nullopt, graph, initial, term});
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Snapshot& prev = out.back();
    Snapshot next{i + 1, describe(script[i]), prev.field, std::nullopt, prev.graph, {}, prev.term};
    try {
      std::visit(
          [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MetrizeStep>) {
              next.pre_closure = set_distance(prev.field, s.x, s.y, s.distance);
              next.field = metric_closure(*next.pre_closure);
            } else if constexpr (std::is_same_v<T, CollapseStep>) {
              Workspace w = collapse_chain(prev.graph, prev.field, s.address);
              next.graph = std::move(w.graph);
              next.field = std::move(w.field);
            } else {
              if (!prev.term)
                throw Error(ErrorKind::SlotResolutionError, "no term in the workspace to substitute into");
              next.term = substitute(*prev.term, s.slot, s.term);
            }
          },
          script[i]);
    } catch (const Error& e) {
      throw e.at_step(i + 1);
    }
    next.space_class = classify_space(next.field);
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace synspace
