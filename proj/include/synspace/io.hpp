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

// JSON and text codecs for every file format the tools read or write.
// Rationals travel as "p/q" strings; integers are accepted on input.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "synspace/dendrogram.hpp"
#include "synspace/derivation.hpp"
#include "synspace/error.hpp"
#include "synspace/knots.hpp"
#include "synspace/lgraph.hpp"
#include "synspace/monotonicity.hpp"
#include "synspace/rational.hpp"
#include "synspace/space.hpp"

namespace synspace::io {

using Json = nlohmann::json;

[[noreturn]] inline void bad(const std::string& where, const std::string& why) {
  throw Error(ErrorKind::ParseError, where + ": " + why);
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string(), {path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string(), {path.string()});
  out << content;
  if (!out.flush()) throw Error(ErrorKind::IoError, "write failed for " + path.string(), {path.string()});
}

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(source, "invalid JSON at byte " + std::to_string(e.byte));
  }
}

inline Json load_json(const std::filesystem::path& path) {
  return parse_json(read_text(path), path.string());
}

/// Stable pretty form used for every file the tools write.
inline std::string dump_file(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Field access with located errors

inline const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

inline std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

// ---------------------------------------------------------------------------
// Rationals and matrices

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) bad(where, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.detail());
  }
}

inline Json to_json(const DistanceMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"points", m.points()}, {"d", std::move(rows)}};
}

inline DistanceMatrix matrix_from_json(const Json& j) {
  std::vector<PointId> points;
  for (std::size_t i = 0; const auto& p : as_array(member(j, "points", "matrix"), "points"))
    points.push_back(as_string(p, "points[" + std::to_string(i++) + "]"));
  std::vector<std::vector<Rational>> rows;
  const Json& d = as_array(member(j, "d", "matrix"), "d");
  for (std::size_t r = 0; r < d.size(); ++r) {
    const std::string where = "d[" + std::to_string(r) + "]";
    std::vector<Rational> row;
    for (std::size_t c = 0; c < as_array(d[r], where).size(); ++c)
      row.push_back(rational_from_json(d[r][c], where + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  return DistanceMatrix(std::move(points), std::move(rows));
}

inline Json to_json(const SpaceClass& c) {
  Json j{{"class", kind_name(c.kind)}};
  if (c.witness)
    j["witness"] = {{"axiom", axiom_name(c.witness->axiom)},
                    {"points", c.witness->points},
                    {"detail", c.witness->detail}};
  return j;
}

inline Json to_json(const TriangleCensus& c) {
  return {{"equilateral", c.equilateral},
          {"isosceles_top_two_equal", c.isosceles_top_two_equal},
          {"other", c.other},
          {"total", c.total}};
}

// ---------------------------------------------------------------------------
// Dendrograms: {"leaf": label} or {"height": h, "children": [...], "label"?}

inline Json to_json(const Dendrogram& t, NodeId id) {
  const DendrogramNode& n = t.node(id);
  if (n.is_leaf()) return {{"leaf", n.label}};
  Json kids = Json::array();
  for (NodeId c : t.sorted_children(id)) kids.push_back(to_json(t, c));
  Json j{{"height", to_json(n.height)}, {"children", std::move(kids)}};
  if (!n.label.empty()) j["label"] = n.label;
  return j;
}

inline Json to_json(const Dendrogram& t) { return to_json(t, t.root()); }

inline Dendrogram dendrogram_from_json(const Json& j, const std::string& where = "tree") {
  if (!j.is_object()) bad(where, "expected an object");
  if (j.contains("leaf")) return Dendrogram::leaf(as_string(j["leaf"], where + ".leaf"));
  const Rational h = rational_from_json(member(j, "height", where), where + ".height");
  std::vector<Dendrogram> parts;
  const Json& kids = as_array(member(j, "children", where), where + ".children");
  for (std::size_t i = 0; i < kids.size(); ++i)
    parts.push_back(dendrogram_from_json(kids[i], where + ".children[" + std::to_string(i) + "]"));
  std::string label = j.contains("label") ? as_string(j["label"], where + ".label") : "";
  try {
    return Dendrogram::join(h, parts, std::move(label));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MalformedDendrogram) throw;
    throw Error(e.kind(), where + ": " + e.detail(), e.witness());
  }
}

// ---------------------------------------------------------------------------
// Graphs: {"vertices": [{vid, address, form, predicative}], "edges": [[a, b, w?]]}

inline Json to_json(const LGraph& g) {
  Json vs = Json::array();
  for (const auto& v : g.vertices())
    vs.push_back({{"vid", v.vid}, {"address", v.address}, {"form", v.form}, {"predicative", v.predicative}});
  Json es = Json::array();
  for (const auto& e : g.edges()) {
    Json pair{e.from, e.to};
    if (e.weight) pair.push_back(to_json(*e.weight));
    es.push_back(std::move(pair));
  }
  return {{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

inline LGraph graph_from_json(const Json& j) {
  std::vector<Vertex> vertices;
  const Json& vs = as_array(member(j, "vertices", "graph"), "vertices");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    Vertex v;
    v.vid = as_string(member(vs[i], "vid", where), where + ".vid");
    v.address = vs[i].contains("address") ? as_string(vs[i]["address"], where + ".address") : v.vid;
    v.form = vs[i].contains("form") ? as_string(vs[i]["form"], where + ".form") : v.vid;
    if (vs[i].contains("predicative")) {
      if (!vs[i]["predicative"].is_boolean()) bad(where + ".predicative", "expected a boolean");
      v.predicative = vs[i]["predicative"].get<bool>();
    }
    vertices.push_back(std::move(v));
  }
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const Json& es = as_array(j["edges"], "edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string where = "edges[" + std::to_string(i) + "]";
      if (!es[i].is_array() || es[i].size() < 2 || es[i].size() > 3)
        bad(where, "expected [from, to] or [from, to, weight]");
      Edge e{as_string(es[i][0], where + "[0]"), as_string(es[i][1], where + "[1]"), std::nullopt};
      if (es[i].size() == 3) e.weight = rational_from_json(es[i][2], where + "[2]");
      edges.push_back(std::move(e));
    }
  }
  return LGraph(std::move(vertices), edges);
}

// ---------------------------------------------------------------------------
// Annotated sentences. A bracket is [head, dependent...], where a dependent
// is a token index or a nested bracket. The top level is one bracket or an
// array of brackets.

inline Json to_json(const Bracket& b) {
  Json j = Json::array({b.head});
  for (const auto& d : b.dependents)
    j.push_back(d.dependents.empty() ? Json(d.head) : to_json(d));
  return j;
}

inline Bracket bracket_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Bracket{j.get<std::size_t>(), {}};
  if (!j.is_array() || j.empty()) bad(where, "expected a token index or [head, dependents...]");
  Bracket b{as_index(j[0], where + "[0]"), {}};
  for (std::size_t i = 1; i < j.size(); ++i)
    b.dependents.push_back(bracket_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return b;
}

inline Json to_json(const AnnotatedSD& sd) {
  Json addrs = Json::array();
  for (const auto& a : sd.addresses) {
    Json occ = Json::array();
    for (const auto& s : a.occurrences) occ.push_back({s.start, s.end});
    addrs.push_back({{"id", a.id}, {"occurrences", std::move(occ)}, {"gapFinal", a.gap_final}});
  }
  Json brackets = Json::array();
  for (const auto& b : sd.bracketing) brackets.push_back(to_json(b));
  Json j{{"tokens", sd.tokens}, {"addresses", std::move(addrs)}, {"bracketing", std::move(brackets)}};
  if (!sd.predicative.empty()) j["predicative"] = sd.predicative;
  return j;
}

inline AnnotatedSD sd_from_json(const Json& j) {
  AnnotatedSD sd;
  const Json& toks = as_array(member(j, "tokens", "sd"), "tokens");
  for (std::size_t i = 0; i < toks.size(); ++i)
    sd.tokens.push_back(as_string(toks[i], "tokens[" + std::to_string(i) + "]"));
  if (j.contains("addresses")) {
    const Json& as = as_array(j["addresses"], "addresses");
    for (std::size_t i = 0; i < as.size(); ++i) {
      const std::string where = "addresses[" + std::to_string(i) + "]";
      AddressAnnotation a;
      a.id = as_string(member(as[i], "id", where), where + ".id");
      const Json& occ = as_array(member(as[i], "occurrences", where), where + ".occurrences");
      for (std::size_t k = 0; k < occ.size(); ++k) {
        const std::string w = where + ".occurrences[" + std::to_string(k) + "]";
        if (!occ[k].is_array() || occ[k].size() != 2) bad(w, "expected [start, end]");
        a.occurrences.push_back({as_index(occ[k][0], w + "[0]"), as_index(occ[k][1], w + "[1]")});
      }
      if (as[i].contains("gapFinal")) {
        if (!as[i]["gapFinal"].is_boolean()) bad(where + ".gapFinal", "expected a boolean");
        a.gap_final = as[i]["gapFinal"].get<bool>();
      }
      sd.addresses.push_back(std::move(a));
    }
  }
  if (j.contains("bracketing")) {
    const Json& b = as_array(j["bracketing"], "bracketing");
    if (!b.empty() && b[0].is_number())
      sd.bracketing.push_back(bracket_from_json(b, "bracketing"));
    else
      for (std::size_t i = 0; i < b.size(); ++i)
        sd.bracketing.push_back(bracket_from_json(b[i], "bracketing[" + std::to_string(i) + "]"));
  }
  if (j.contains("predicative")) {
    const Json& p = as_array(j["predicative"], "predicative");
    for (std::size_t i = 0; i < p.size(); ++i)
      sd.predicative.push_back(as_index(p[i], "predicative[" + std::to_string(i) + "]"));
  }
  validate(sd);
  return sd;
}

inline Json to_json(const TopoReport& r) {
  return {{"foldings", r.foldings},
          {"selfIntersections", r.self_intersections},
          {"totalIntersections", r.total_intersections},
          {"glued", r.glued},
          {"classification", r.classification}};
}

// ---------------------------------------------------------------------------
// Terms: {"label": L, "children": [...]}, words as strings, slots as
// {"slot": L}. A string at the top level is read as bracket notation.

inline Json to_json(const Term& t) {
  if (t.slot) return {{"slot", t.label}};
  if (t.children.empty()) return t.label;
  Json kids = Json::array();
  for (const auto& c : t.children) kids.push_back(to_json(c));
  return {{"label", t.label}, {"children", std::move(kids)}};
}

inline Term term_child_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return Term::word(j.get<std::string>());
  if (j.is_object() && j.contains("slot")) return Term::open(as_string(j["slot"], where + ".slot"));
  Term t;
  t.label = as_string(member(j, "label", where), where + ".label");
  const Json& kids = as_array(member(j, "children", where), where + ".children");
  for (std::size_t i = 0; i < kids.size(); ++i)
    t.children.push_back(term_child_from_json(kids[i], where + ".children[" + std::to_string(i) + "]"));
  return t;
}

inline Term term_from_json(const Json& j) {
  Term t = j.is_string() ? parse_term(j.get<std::string>()) : term_child_from_json(j, "term");
  validate(t);
  return t;
}

// ---------------------------------------------------------------------------
// Derivation scripts: [{"op": "metrize", x, y, d} | {"op": "collapse",
// address} | {"op": "substitute", slot, term}]

inline Json to_json(const DerivationStep& step) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MetrizeStep>)
          return {{"op", "metrize"}, {"x", s.x}, {"y", s.y}, {"d", to_json(s.distance)}};
        else if constexpr (std::is_same_v<T, CollapseStep>)
          return {{"op", "collapse"}, {"address", s.address}};
        else
          return {{"op", "substitute"}, {"slot", s.slot}, {"term", to_json(s.term)}};
      },
      step);
}

inline DerivationScript script_from_json(const Json& j) {
  DerivationScript script;
  const Json& steps = as_array(j, "script");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "script[" + std::to_string(i) + "]";
    const std::string op = as_string(member(steps[i], "op", where), where + ".op");
    if (op == "metrize")
      script.push_back(MetrizeStep{as_string(member(steps[i], "x", where), where + ".x"),
                                   as_string(member(steps[i], "y", where), where + ".y"),
                                   rational_from_json(member(steps[i], "d", where), where + ".d")});
    else if (op == "collapse")
      script.push_back(CollapseStep{as_string(member(steps[i], "address", where), where + ".address")});
    else if (op == "substitute")
      script.push_back(SubstituteStep{as_string(member(steps[i], "slot", where), where + ".slot"),
                                      term_from_json(member(steps[i], "term", where))});
    else
      bad(where + ".op", "unknown op '" + op + "'");
  }
  return script;
}

inline Json to_json(const Snapshot& s) {
  Json j{{"step", s.step},
         {"action", s.action},
         {"class", kind_name(s.space_class.kind)},
         {"field", to_json(s.field)},
         {"graph", to_json(s.graph)}};
  if (s.space_class.witness) j["witness"] = to_json(s.space_class)["witness"];
  if (s.pre_closure) j["preClosure"] = to_json(*s.pre_closure);
  if (s.term) j["term"] = bracketing(*s.term);
  return j;
}

// ---------------------------------------------------------------------------
// Relation sets: {"universe": [...], "relations": [[name, a, b] | [a, b]]}.
// Pairs use the plain dominance relation name.

inline Json to_json(const RelationSet& r) {
  Json rels = Json::array();
  for (const auto& x : r.relations) rels.push_back({x.name, x.first, x.second});
  return {{"universe", r.universe}, {"relations", std::move(rels)}};
}

inline RelationSet relations_from_json(const Json& j) {
  std::set<std::string> universe;
  if (j.contains("universe")) {
    const Json& u = as_array(j["universe"], "universe");
    for (std::size_t i = 0; i < u.size(); ++i)
      universe.insert(as_string(u[i], "universe[" + std::to_string(i) + "]"));
  }
  std::set<Relation> rels;
  const Json& rs = as_array(member(j, "relations", "relations"), "relations");
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const std::string where = "relations[" + std::to_string(i) + "]";
    if (!rs[i].is_array() || rs[i].size() < 2 || rs[i].size() > 3)
      bad(where, "expected [name, a, b] or [a, b]");
    std::vector<std::string> parts;
    for (std::size_t k = 0; k < rs[i].size(); ++k)
      parts.push_back(as_string(rs[i][k], where + "[" + std::to_string(k) + "]"));
    if (parts.size() == 2)
      rels.insert({kPlainRelation, parts[0], parts[1]});
    else
      rels.insert({parts[0], parts[1], parts[2]});
  }
  return RelationSet(std::move(rels), std::move(universe));
}

inline std::map<std::string, std::string> mapping_from_json(const Json& j) {
  if (!j.is_object()) bad("mapping", "expected an object of expression -> expression");
  std::map<std::string, std::string> f;
  for (const auto& [k, v] : j.items()) f[k] = as_string(v, "mapping." + k);
  return f;
}

// ---------------------------------------------------------------------------
// Plain trees are nested arrays of strings; growth histories list
// {"terminal": w} and {"complex": tree} items innermost first.

inline Json to_json(const PlainTree& t) {
  if (t.is_leaf()) return t.form;
  Json j = Json::array();
  for (const auto& c : t.children) j.push_back(to_json(c));
  return j;
}

inline PlainTree plain_tree_from_json(const Json& j, const std::string& where = "tree") {
  if (j.is_string()) return PlainTree::leaf(j.get<std::string>());
  if (!j.is_array() || j.empty()) bad(where, "expected a string or a non-empty array");
  std::vector<PlainTree> kids;
  for (std::size_t i = 0; i < j.size(); ++i)
    kids.push_back(plain_tree_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return PlainTree::node(std::move(kids));
}

inline Json to_json(const GrowthStep& s) {
  if (const auto* t = std::get_if<Terminal>(&s)) return {{"terminal", t->form}};
  return {{"complex", to_json(std::get<ComplexObject>(s).tree)}};
}

inline GrowthHistory growth_from_json(const Json& j) {
  GrowthHistory h;
  const Json& items = as_array(j, "growth");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string where = "growth[" + std::to_string(i) + "]";
    if (items[i].is_object() && items[i].contains("terminal"))
      h.push_back(Terminal{as_string(items[i]["terminal"], where + ".terminal")});
    else if (items[i].is_object() && items[i].contains("complex"))
      h.push_back(ComplexObject{plain_tree_from_json(items[i]["complex"], where + ".complex")});
    else
      bad(where, "expected {\"terminal\": w} or {\"complex\": tree}");
  }
  return h;
}

inline Json to_json(const Segmentation& s) {
  Json segs = Json::array();
  for (const auto& seg : s.segments)
    segs.push_back({{"top", path_name(seg.top)}, {"frontier", seg.frontier}});
  Json joints = Json::array();
  for (const auto& p : s.joints) joints.push_back(path_name(p));
  return {{"segments", std::move(segs)}, {"joints", std::move(joints)}};
}

// ---------------------------------------------------------------------------
// Knots

inline Json to_json(const RMove& m) {
  Json j{{"kind", move_name(m.kind)}, {"site", m.site}};
  if (m.kind == MoveKind::R1_add || m.kind == MoveKind::R2_add) {
    j["sign"] = m.sign;
    j["overFirst"] = m.over_first;
    if (m.kind == MoveKind::R2_add) j["parallel"] = m.parallel;
  }
  return j;
}

inline KnotDiagram load_gauss(const std::filesystem::path& path) {
  return KnotDiagram::parse(read_text(path));
}

}  // namespace synspace::io
