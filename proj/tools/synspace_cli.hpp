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

// Command-line front end. Exit codes: 0 success, 1 domain error, 2 usage or
// input error. Results are buffered so a failing command prints nothing on
// standard output.

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "synspace/bundle.hpp"
#include "synspace/io.hpp"

namespace synspace::cli {

using io::Json;

enum class Format { Text, Json, Dot };

/// A failure while reading inputs, reported with exit status 2.
struct InputError {
  Error error;
};

template <class F>
auto load(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError{e};
  }
}

inline DistanceMatrix load_matrix(const std::string& path) {
  return load([&] { return io::matrix_from_json(io::load_json(path)); });
}
inline Dendrogram load_dendrogram(const std::string& path) {
  return load([&] { return io::dendrogram_from_json(io::load_json(path)); });
}
inline LGraph load_graph(const std::string& path) {
  return load([&] { return io::graph_from_json(io::load_json(path)); });
}
inline AnnotatedSD load_sd(const std::string& path) {
  return load([&] { return io::sd_from_json(io::load_json(path)); });
}
inline Term load_term(const std::string& path) {
  return load([&] { return io::term_from_json(io::load_json(path)); });
}
inline PlainTree load_plain_tree(const std::string& path) {
  return load([&] { return io::plain_tree_from_json(io::load_json(path)); });
}
inline GrowthHistory load_growth(const std::string& path) {
  return load([&] { return io::growth_from_json(io::load_json(path)); });
}
inline RelationSet load_relations(const std::string& path) {
  return load([&] { return io::relations_from_json(io::load_json(path)); });
}
inline KnotDiagram load_knot(const std::string& path) {
  return load([&] { return io::load_gauss(path); });
}
inline Rational arg_rational(const std::string& text) {
  return load([&] { return parse_rational(text); });
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Text renderers

inline void print_matrix(std::ostream& o, const DistanceMatrix& m) {
  std::vector<std::vector<std::string>> cells(m.size() + 1, std::vector<std::string>(m.size() + 1));
  for (std::size_t i = 0; i < m.size(); ++i) {
    cells[0][i + 1] = m.points()[i];
    cells[i + 1][0] = m.points()[i];
    for (std::size_t j = 0; j < m.size(); ++j) cells[i + 1][j + 1] = to_decimal(m.at(i, j));
  }
  std::vector<std::size_t> width(m.size() + 1, 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += c ? std::string(width[c] - row[c].size(), ' ') + row[c]
                : row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    o << line << "\n";
  }
}

inline void print_class(std::ostream& o, const SpaceClass& c) {
  o << "class: " << kind_name(c.kind) << "\n";
  if (c.witness)
    o << "witness: " << axiom_name(c.witness->axiom) << " (" << join(c.witness->points, ", ")
      << "): " << c.witness->detail << "\n";
}

inline void print_dendrogram(std::ostream& o, const Dendrogram& t, NodeId id, std::size_t depth) {
  const DendrogramNode& n = t.node(id);
  o << std::string(2 * depth, ' ');
  if (n.is_leaf())
    o << n.label << "\n";
  else
    o << (n.label.empty() ? "*" : n.label) << " @ " << to_decimal(n.height) << "\n";
  for (NodeId c : t.sorted_children(id)) print_dendrogram(o, t, c, depth + 1);
}

inline void print_graph(std::ostream& o, const LGraph& g) {
  std::vector<Vertex> vs = g.vertices();
  std::sort(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) { return a.vid < b.vid; });
  o << "vertices:\n";
  for (const auto& v : vs)
    o << "  " << v.vid << "  address=" << v.address << "  form=" << v.form
      << (v.predicative ? "  predicative" : "") << "\n";
  o << "edges:\n";
  for (const auto& e : g.edges())
    o << "  " << e.from << " -> " << e.to << (e.weight ? "  w=" + to_decimal(*e.weight) : "") << "\n";
}

inline void print_report(std::ostream& o, const TopoReport& r) {
  o << "foldings: " << r.foldings << "\n";
  o << "self-intersections: " << r.total_intersections << "\n";
  for (const auto& [addr, n] : r.self_intersections) o << "  " << addr << ": " << n << "\n";
  if (!r.glued.empty()) o << "glued: " << join(r.glued, ", ") << "\n";
  o << "classification: " << r.classification << "\n";
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance spaces, structural descriptions and knot diagrams", "synspace"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  // Each leaf subcommand registers a handler and the formats it supports.
  struct Handler {
    CLI::App* cmd;
    std::vector<Format> formats;
    std::function<void(std::ostream&, Format)> body;
  };
  std::vector<Handler> handlers;
  const std::vector<Format> text_json{Format::Text, Format::Json};
  const std::vector<Format> all_formats{Format::Text, Format::Json, Format::Dot};
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::vector<Format> formats, std::function<void(std::ostream&, Format)> body) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    handlers.push_back({cmd, std::move(formats), std::move(body)});
    return cmd;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1, 1);
    return g;
  };
  auto emit = [](std::ostream& o, const Json& j) { o << j.dump() << "\n"; };

  // --- space -------------------------------------------------------------
  CLI::App* space = group("space", "Finite distance spaces");
  std::string matrix_path;
  std::string px, py, pd, radius, eps = "0";
  std::vector<std::string> subset;
  bool open_ball = false;
  std::size_t field_n = 0;
  std::string field_k;

  leaf(space, "check", "Classify a matrix as semimetric, metric or ultrametric", text_json,
       [&](std::ostream& o, Format f) {
         SpaceClass c = classify_space(load_matrix(matrix_path));
         f == Format::Json ? emit(o, io::to_json(c)) : print_class(o, c);
       })
      ->add_option("matrix", matrix_path)->required();

  leaf(space, "census", "Count equilateral and isosceles triangles", text_json, [&](std::ostream& o, Format f) {
    TriangleCensus c = triangle_census(load_matrix(matrix_path));
    if (f == Format::Json) return emit(o, io::to_json(c));
    o << "equilateral: " << c.equilateral << "\nisosceles (top two equal): " << c.isosceles_top_two_equal
      << "\nother: " << c.other << "\ntotal: " << c.total << "\n";
  })->add_option("matrix", matrix_path)->required();

  {
    CLI::App* c = leaf(space, "ball", "Points within a radius of a center", text_json, [&](std::ostream& o, Format f) {
      DistanceMatrix m = load_matrix(matrix_path);
      NeighborhoodSpec spec{px, arg_rational(radius), !open_ball};
      std::vector<PointId> ball = closed_neighborhood(m, spec);
      f == Format::Json ? emit(o, Json{{"points", ball}}) : void(o << join(ball, "\n") << (ball.empty() ? "" : "\n"));
    });
    c->add_option("matrix", matrix_path)->required();
    c->add_option("--center", px, "Center point")->required();
    c->add_option("--radius", radius, "Radius (p/q)")->required();
    c->add_flag("--open", open_ball, "Use the open ball d < r");
  }
  {
    CLI::App* c = leaf(space, "boundary", "Points whose eps-ball meets both a subset and its complement", text_json,
                       [&](std::ostream& o, Format f) {
                         DistanceMatrix m = load_matrix(matrix_path);
                         std::vector<PointId> b = boundary(m, subset, arg_rational(eps));
                         f == Format::Json ? emit(o, Json{{"boundary", b}})
                                           : void(o << join(b, "\n") << (b.empty() ? "" : "\n"));
                       });
    c->add_option("matrix", matrix_path)->required();
    c->add_option("--subset", subset, "Subset points")->required()->delimiter(',');
    c->add_option("--eps", eps, "Ball radius (p/q)");
  }
  {
    CLI::App* c = leaf(space, "separate", "Find a radius whose balls around x and y are disjoint", text_json,
                       [&](std::ostream& o, Format f) {
                         std::optional<Rational> r = are_separated(load_matrix(matrix_path), px, py, !open_ball);
                         if (f == Format::Json)
                           return emit(o, Json{{"separated", r.has_value()}, {"radius", r ? Json(io::to_json(*r)) : Json()}});
                         o << "separated: " << yes_no(r.has_value());
                         if (r) o << " (radius " << to_decimal(*r) << ")";
                         o << "\n";
                       });
    c->add_option("matrix", matrix_path)->required();
    c->add_option("x", px)->required();
    c->add_option("y", py)->required();
    c->add_flag("--open", open_ball, "Use open balls");
  }
  leaf(space, "closure", "Shortest-path metric closure", text_json, [&](std::ostream& o, Format f) {
    DistanceMatrix m = metric_closure(load_matrix(matrix_path));
    f == Format::Json ? emit(o, io::to_json(m)) : print_matrix(o, m);
  })->add_option("matrix", matrix_path)->required();
  {
    CLI::App* c = leaf(space, "metrize", "Draw two points closer, then re-close the metric", text_json,
                       [&](std::ostream& o, Format f) {
                         DistanceMatrix in = load_matrix(matrix_path);
                         DistanceMatrix m = metrize_step(in, px, py, arg_rational(pd));
                         SpaceClass c = classify_space(m);
                         if (f == Format::Json) {
                           Json j = io::to_json(c);
                           j["matrix"] = io::to_json(m);
                           return emit(o, j);
                         }
                         print_matrix(o, m);
                         print_class(o, c);
                       });
    c->add_option("matrix", matrix_path)->required();
    c->add_option("x", px)->required();
    c->add_option("y", py)->required();
    c->add_option("d", pd, "New distance (p/q)")->required();
  }
  {
    CLI::App* c = leaf(space, "field", "Constant-distance ground field p1..pn", text_json, [&](std::ostream& o, Format f) {
      DistanceMatrix m = make_ultrametric_field(field_n, arg_rational(field_k));
      f == Format::Json ? emit(o, io::to_json(m)) : print_matrix(o, m);
    });
    c->add_option("n", field_n)->required();
    c->add_option("k", field_k)->required();
  }

  // --- tree --------------------------------------------------------------
  CLI::App* tree = group("tree", "Dendrograms of ultrametric spaces");
  std::string tree_path;
  unsigned xbar_base = 0;

  leaf(tree, "build", "Build the dendrogram of an ultrametric matrix", all_formats, [&](std::ostream& o, Format f) {
    Dendrogram t = build_dendrogram(load_matrix(matrix_path));
    if (f == Format::Json) return emit(o, io::to_json(t));
    if (f == Format::Dot) return void(o << to_dot(t));
    print_dendrogram(o, t, t.root(), 0);
  })->add_option("matrix", matrix_path)->required();
  leaf(tree, "xbar", "Three-point X-bar matrix over Spec, X, YP", text_json, [&](std::ostream& o, Format f) {
    DistanceMatrix m = xbar_matrix(xbar_base);
    f == Format::Json ? emit(o, io::to_json(m)) : print_matrix(o, m);
  })->add_option("i", xbar_base, "Base distance")->required();
  leaf(tree, "cophenetic", "Matrix of lowest-common-ancestor heights", text_json, [&](std::ostream& o, Format f) {
    DistanceMatrix m = cophenetic_matrix(load_dendrogram(tree_path));
    f == Format::Json ? emit(o, io::to_json(m)) : print_matrix(o, m);
  })->add_option("tree", tree_path)->required();
  leaf(tree, "heights", "Height of every node", text_json, [&](std::ostream& o, Format f) {
    Dendrogram t = load_dendrogram(tree_path);
    std::map<std::string, std::string> named;
    for (const auto& [id, h] : leaf_heights(t)) named[t.name(id)] = to_string(h);
    if (f == Format::Json) return emit(o, Json(named));
    for (const auto& [name, h] : named) o << name << "  " << to_decimal(parse_rational(h)) << "\n";
  })->add_option("tree", tree_path)->required();
  {
    CLI::App* c = leaf(tree, "dominates", "Height-based domination between two labeled nodes", text_json,
                       [&](std::ostream& o, Format f) {
                         bool d = roberts_dominates(load_dendrogram(tree_path), px, py);
                         f == Format::Json ? emit(o, Json{{"dominates", d}}) : void(o << yes_no(d) << "\n");
                       });
    c->add_option("tree", tree_path)->required();
    c->add_option("a", px)->required();
    c->add_option("b", py)->required();
  }

  // --- sd ----------------------------------------------------------------
  CLI::App* sd = group("sd", "Annotated structural descriptions");
  std::vector<std::string> sd_paths;
  std::string sd_path;
  bool combined = false;
  {
    CLI::App* c = leaf(sd, "analyze", "Count foldings and self-intersections", text_json, [&](std::ostream& o, Format f) {
      std::vector<AnnotatedSD> sds;
      for (const auto& p : sd_paths) sds.push_back(load_sd(p));
      if (combined) {
        TopoReport r = analyze_topology(sds);
        return f == Format::Json ? emit(o, io::to_json(r)) : print_report(o, r);
      }
      Json all = Json::array();
      for (std::size_t i = 0; i < sds.size(); ++i) {
        TopoReport r = analyze_topology(sds[i]);
        if (f == Format::Json) {
          Json j = io::to_json(r);
          j["file"] = sd_paths[i];
          all.push_back(std::move(j));
        } else {
          if (sds.size() > 1) o << "== " << sd_paths[i] << "\n";
          print_report(o, r);
        }
      }
      if (f == Format::Json) emit(o, sds.size() == 1 ? all[0] : all);
    });
    c->add_option("files", sd_paths)->required();
    c->add_flag("--combined", combined, "Sum the reports of derivations sharing addresses");
  }
  leaf(sd, "graph", "L-graph of an annotated sentence", all_formats, [&](std::ostream& o, Format f) {
    LGraph g = sd_to_graph(load_sd(sd_path));
    if (f == Format::Json) return emit(o, io::to_json(g));
    if (f == Format::Dot) return void(o << to_dot(g));
    print_graph(o, g);
  })->add_option("file", sd_path)->required();

  // --- derive ------------------------------------------------------------
  CLI::App* derive = group("derive", "Derivations over a workspace");
  std::string field_path, graph_path, term_path, script_path, slot, l_path, src_path, dst_path, map_path, address;
  {
    CLI::App* c = leaf(derive, "run", "Apply a derivation script step by step", all_formats, [&](std::ostream& o, Format f) {
      DistanceMatrix field = load_matrix(field_path);
      LGraph graph = load_graph(graph_path);
      DerivationScript script = load([&] { return io::script_from_json(io::load_json(script_path)); });
      std::optional<Term> term;
      if (!term_path.empty()) term = load_term(term_path);
      std::vector<Snapshot> snaps = apply_derivation(script, field, graph, term);
      if (f == Format::Json) {
        Json all = Json::array();
        for (const auto& s : snaps) all.push_back(io::to_json(s));
        return emit(o, all);
      }
      for (const auto& s : snaps) {
        if (f == Format::Dot) {
          o << to_dot(s.graph, "step" + std::to_string(s.step));
          continue;
        }
        o << "== step " << s.step << ": " << s.action << "\n";
        print_matrix(o, s.field);
        print_class(o, s.space_class);
        print_graph(o, s.graph);
        if (s.term) o << "term: " << bracketing(*s.term) << "\n";
      }
    });
    c->add_option("script", script_path)->required();
    c->add_option("--field", field_path, "Ground-state matrix")->required();
    c->add_option("--graph", graph_path, "Initial L-graph")->required();
    c->add_option("--term", term_path, "Term for substitution steps");
  }
  {
    CLI::App* c = leaf(derive, "collapse", "Identify every occurrence of one address", all_formats,
                       [&](std::ostream& o, Format f) {
                         Workspace w = collapse_chain(load_graph(graph_path), load_matrix(field_path), address);
                         if (f == Format::Json)
                           return emit(o, Json{{"graph", io::to_json(w.graph)}, {"field", io::to_json(w.field)}});
                         if (f == Format::Dot) return void(o << to_dot(w.graph));
                         print_graph(o, w.graph);
                         print_matrix(o, w.field);
                       });
    c->add_option("address", address)->required();
    c->add_option("--field", field_path)->required();
    c->add_option("--graph", graph_path)->required();
  }
  {
    CLI::App* c = leaf(derive, "substitute", "Replace an open slot with a term of the same root label", text_json,
                       [&](std::ostream& o, Format f) {
                         Term k = load_term(term_path);
                         Term l = load_term(l_path);
                         Term r = substitute(k, slot, l);
                         f == Format::Json ? emit(o, io::to_json(r)) : void(o << bracketing(r) << "\n");
                       });
    c->add_option("k", term_path, "Host term")->required();
    c->add_option("l", l_path, "Term to insert")->required();
    c->add_option("--slot", slot, "Slot label")->required();
  }
  leaf(derive, "relations", "Dominance relations of a term", text_json, [&](std::ostream& o, Format f) {
    RelationSet r = term_relations(load_term(term_path));
    if (f == Format::Json) return emit(o, io::to_json(r));
    for (const auto& x : r.relations) o << x.name << "(" << x.first << ", " << x.second << ")\n";
  })->add_option("term", term_path)->required();
  {
    CLI::App* c = leaf(derive, "homomorphism", "Check that a mapping preserves every relation", text_json,
                       [&](std::ostream& o, Format f) {
                         RelationSet src = load_relations(src_path);
                         RelationSet dst = load_relations(dst_path);
                         auto map = load([&] { return io::mapping_from_json(io::load_json(map_path)); });
                         bool ok = check_homomorphism(src, dst, map);
                         f == Format::Json ? emit(o, Json{{"homomorphism", ok}}) : void(o << yes_no(ok) << "\n");
                       });
    c->add_option("src", src_path)->required();
    c->add_option("dst", dst_path)->required();
    c->add_option("map", map_path)->required();
  }

  // --- graph -------------------------------------------------------------
  CLI::App* graph = group("graph", "L-graph queries");
  std::vector<std::string> walk;
  leaf(graph, "audit", "Multiple mothers, cycles and copy/repetition status", all_formats,
       [&](std::ostream& o, Format f) {
         LGraph g = load_graph(graph_path);
         if (f == Format::Dot) return void(o << to_dot(g));
         std::vector<VertexId> multi = single_mother_violations(g);
         std::optional<std::vector<VertexId>> cycle = find_cycle(g);
         std::map<std::string, std::string> occ;
         for (const auto& [v, c] : classify_occurrences(g)) occ[v] = std::string(occurrence_name(c));
         if (f == Format::Json)
           return emit(o, Json{{"multipleMothers", multi},
                               {"cycle", cycle ? Json(*cycle) : Json()},
                               {"occurrences", occ}});
         o << "multiple mothers: " << (multi.empty() ? "none" : join(multi, ", ")) << "\n";
         o << "cycle: " << (cycle ? join(*cycle, " -> ") : "none") << "\n";
         o << "occurrences:\n";
         for (const auto& [v, c] : occ) o << "  " << v << ": " << c << "\n";
       })
      ->add_option("graph", graph_path)
      ->required();
  {
    CLI::App* c = leaf(graph, "walk", "Classify a vertex sequence as walk, trail or path", text_json,
                       [&](std::ostream& o, Format f) {
                         WalkClass w = classify_walk(load_graph(graph_path), walk);
                         f == Format::Json ? emit(o, Json{{"walk", walk_name(w)}}) : void(o << walk_name(w) << "\n");
                       });
    c->add_option("graph", graph_path)->required();
    c->add_option("vertices", walk)->required();
  }
  {
    CLI::App* c = leaf(graph, "dominates", "Dominance and order between two vertices", text_json,
                       [&](std::ostream& o, Format f) {
                         LGraph g = load_graph(graph_path);
                         g.require(px);
                         g.require(py);
                         bool im = immediately_dominates(g, px, py);
                         bool d = dominates(g, px, py);
                         bool ord = is_ordered(g, px, py);
                         if (f == Format::Json)
                           return emit(o, Json{{"immediately", im}, {"dominates", d}, {"ordered", ord}});
                         o << "immediately dominates: " << yes_no(im) << "\ndominates: " << yes_no(d)
                           << "\nordered: " << yes_no(ord) << "\n";
                       });
    c->add_option("graph", graph_path)->required();
    c->add_option("v1", px)->required();
    c->add_option("v2", py)->required();
  }

  // --- mono --------------------------------------------------------------
  CLI::App* mono = group("mono", "Monotonic and non-monotonic growth");
  std::string tree_file;
  leaf(mono, "segment", "Split a tree into maximal finite-state describable regions", text_json,
       [&](std::ostream& o, Format f) {
         PlainTree t = load_plain_tree(tree_file);
         Segmentation s = segment_max_monotonic(t);
         bool fs = is_fs_describable(t);
         if (f == Format::Json) {
           Json j = io::to_json(s);
           j["fsDescribable"] = fs;
           return emit(o, j);
         }
         o << "finite-state describable: " << yes_no(fs) << "\n";
         o << "segments: " << s.segments.size() << "\n";
         for (const auto& seg : s.segments) o << "  " << path_name(seg.top) << ": " << join(seg.frontier, " ") << "\n";
         std::vector<std::string> joints;
         for (const auto& p : s.joints) joints.push_back(path_name(p));
         o << "joints: " << (joints.empty() ? "none" : join(joints, ", ")) << "\n";
       })
      ->add_option("tree", tree_file)
      ->required();
  leaf(mono, "bracket", "Bracketed rendering of a tree", text_json, [&](std::ostream& o, Format f) {
    std::string b = bracketing(load_plain_tree(tree_file));
    f == Format::Json ? emit(o, Json{{"bracketing", b}}) : void(o << b << "\n");
  })->add_option("tree", tree_file)->required();
  leaf(mono, "classify", "Classify the steps of a growth history", text_json, [&](std::ostream& o, Format f) {
    GrowthHistory h = load_growth(tree_file);
    std::vector<Growth> steps = classify_steps(h);
    PlainTree t = build_tree(h);
    bool fs = is_fs_describable(t);
    std::vector<std::string> names;
    for (Growth g : steps) names.emplace_back(growth_name(g));
    if (f == Format::Json)
      return emit(o, Json{{"steps", names}, {"tree", bracketing(t)}, {"fsDescribable", fs}});
    for (std::size_t i = 0; i < names.size(); ++i) o << i << ": " << names[i] << "\n";
    o << "tree: " << bracketing(t) << "\nfinite-state describable: " << yes_no(fs) << "\n";
  })->add_option("growth", tree_file)->required();

  // --- knot --------------------------------------------------------------
  CLI::App* knot = group("knot", "Gauss-code knot diagrams");
  std::string knot_path;
  std::optional<std::size_t> apply_index;
  std::size_t max_moves = 12, max_crossings = 8, arc_a = 0, arc_b = 1;
  bool no_pruning = false;
  {
    CLI::App* c = leaf(knot, "moves", "List applicable Reidemeister moves, or apply one", text_json,
                       [&](std::ostream& o, Format f) {
                         KnotDiagram d = load_knot(knot_path);
                         std::vector<RMove> moves = enumerate_applicable_moves(d);
                         if (apply_index) {
                           if (*apply_index >= moves.size())
                             throw InputError{Error(ErrorKind::ParseError,
                                                    "--apply " + std::to_string(*apply_index) + " is out of range; " +
                                                        std::to_string(moves.size()) + " moves apply")};
                           KnotDiagram r = apply_rmove(d, moves[*apply_index]);
                           if (f == Format::Json)
                             return emit(o, Json{{"move", io::to_json(moves[*apply_index])}, {"result", r.to_string()}});
                           return void(o << moves[*apply_index].describe() << "\n" << r.to_string() << "\n");
                         }
                         if (f == Format::Json) {
                           Json all = Json::array();
                           for (const auto& m : moves) all.push_back(io::to_json(m));
                           return emit(o, all);
                         }
                         for (std::size_t i = 0; i < moves.size(); ++i) o << i << "  " << moves[i].describe() << "\n";
                       });
    c->add_option("diagram", knot_path)->required();
    c->add_option("--apply", apply_index, "Apply the move with this index");
  }
  {
    CLI::App* c = leaf(knot, "reduce", "Breadth-first search for an unknotting sequence", text_json,
                       [&](std::ostream& o, Format f) {
                         KnotDiagram d = load_knot(knot_path);
                         ReduceOptions opt;
                         opt.invariant_pruning = !no_pruning;
                         Reduction r = search_unknot(d, max_moves, max_crossings, opt);
                         if (f == Format::Json) {
                           Json j{{"status", status_name(r.status)}, {"states", r.states}};
                           if (r.moves) {
                             j["moves"] = Json::array();
                             for (const auto& m : *r.moves) j["moves"].push_back(io::to_json(m));
                           }
                           return emit(o, j);
                         }
                         o << "status: " << status_name(r.status) << "\nstates: " << r.states << "\n";
                         if (r.status == ReduceStatus::Obstructed)
                           o << "reason: the diagram is 3-colorable and the unknot is not\n";
                         if (r.moves) {
                           KnotDiagram cur = d;
                           for (const auto& m : *r.moves) {
                             cur = apply_rmove(cur, m);
                             o << "  " << m.describe() << "  ->  " << (cur.is_empty() ? "(unknot)" : cur.to_string()) << "\n";
                           }
                         }
                       });
    c->add_option("diagram", knot_path)->required();
    c->add_option("--max-moves", max_moves, "Move budget")->check(CLI::PositiveNumber);
    c->add_option("--max-crossings", max_crossings, "Crossing budget")->check(CLI::PositiveNumber);
    c->add_flag("--no-pruning", no_pruning, "Search even when 3-colorability already rules out the unknot");
  }
  leaf(knot, "tricolor", "3-colorability, writhe and the Lackenby move bound", text_json,
       [&](std::ostream& o, Format f) {
         KnotDiagram d = load_knot(knot_path);
         bool tri = is_tricolorable(d);
         int w = writhe(d);
         std::string bound = lackenby_bound(d.crossing_count()).str();
         if (f == Format::Json)
           return emit(o, Json{{"tricolorable", tri}, {"writhe", w}, {"crossings", d.crossing_count()},
                               {"lackenbyBound", bound}});
         o << "tricolorable: " << yes_no(tri) << "\nwrithe: " << w << "\ncrossings: " << d.crossing_count()
           << "\nlackenby bound: " << bound << "\n";
       })
      ->add_option("diagram", knot_path)
      ->required();
  {
    CLI::App* c = leaf(knot, "collapse-demo", "Try to identify two strand points (always fails)", text_json,
                       [&](std::ostream&, Format) { attempt_collapse(load_knot(knot_path), arc_a, arc_b); });
    c->add_option("diagram", knot_path)->required();
    c->add_option("--arc-a", arc_a, "First arc");
    c->add_option("--arc-b", arc_b, "Second arc");
  }

  // --- bundle ------------------------------------------------------------
  std::string out_dir = "fixtures";
  leaf(&app, "bundle", "Write the fixture corpus to a directory", {Format::Text},
       [&](std::ostream& o, Format) {
         bundle_examples(out_dir);
         for (const auto& [name, _] : bundle_files()) o << (std::filesystem::path(out_dir) / name).string() << "\n";
       })
      ->add_option("--out", out_dir, "Target directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const Format format = format_name == "json" ? Format::Json : format_name == "dot" ? Format::Dot : Format::Text;
  for (const auto& h : handlers) {
    if (!h.cmd->parsed()) continue;
    if (std::find(h.formats.begin(), h.formats.end(), format) == h.formats.end()) {
      err << "error: --format " << format_name << " is not supported by '" << h.cmd->get_name() << "'\n";
      return 2;
    }
    std::ostringstream buffer;
    try {
      h.body(buffer, format);
    } catch (const InputError& e) {
      err << "error: " << e.error.what() << "\n";
      return 2;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      if (!e.witness().empty()) err << "witness: " << join(e.witness(), ", ") << "\n";
      return 1;
    }
    out << buffer.str();
    return 0;
  }
  err << app.help();
  return 2;
}

}  // namespace synspace::cli
