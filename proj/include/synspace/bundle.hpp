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

// The fixture corpus: the worked examples as files the tools can read.

#include <filesystem>
#include <map>
#include <string>
#include <system_error>

#include "synspace/io.hpp"

namespace synspace {

namespace detail {

inline AnnotatedSD sd_mary_reading() {
  AnnotatedSD sd;
  sd.tokens = {"Mary", "was", "reading", "a", "book"};
  sd.addresses = {{"Mary", {{0, 0}}, false}, {"book", {{3, 4}}, false}};
  sd.bracketing = {{1, {{0, {}}, {2, {{4, {{3, {}}}}}}}}};
  sd.predicative = {2};
  return sd;
}

inline AnnotatedSD sd_john_despises() {
  AnnotatedSD sd;
  sd.tokens = {"John", "despises", "himself"};
  sd.addresses = {{"John", {{0, 0}, {2, 2}}, false}};
  sd.bracketing = {{0, {{1, {{2, {}}}}}}};
  sd.predicative = {1};
  return sd;
}

inline AnnotatedSD sd_which_picture() {
  AnnotatedSD sd;
  sd.tokens = {"Which", "picture", "of", "himself", "did", "John", "say", "Mary", "likes"};
  sd.addresses = {{"wh", {{0, 3}}, true}, {"John", {{3, 3}, {5, 5}}, false}};
  sd.bracketing = {{6, {{5, {}}, {4, {}}, {8, {{7, {}}, {9, {}}}}}}, {0, {{3, {}}}}};
  sd.predicative = {6, 8};
  return sd;
}

inline AnnotatedSD sd_the_man_who() {
  AnnotatedSD sd;
  sd.tokens = {"The", "man", "who", "shows", "he", "deserves", "it",
               "will", "get", "the", "prize", "he", "desires"};
  sd.addresses = {{"man", {{0, 1}, {2, 2}, {4, 4}}, false}, {"prize", {{6, 6}, {9, 10}}, true}};
  sd.bracketing = {{8,
                    {{7, {}},
                     {0, {{3, {{2, {}}, {5, {{4, {}}, {6, {}}}}}}}},
                     {10, {{12, {{11, {}}, {13, {}}}}}}}}};
  sd.predicative = {3, 5, 8, 12};
  return sd;
}

inline RelationSet passive_before() {
  return RelationSet({{"murder", "e", "John"}, {kPlainRelation, "be", "murdered"}});
}

inline RelationSet passive_after() {
  return RelationSet({{"murder", "e", "John"},
                      {kPlainRelation, "be", "murdered"},
                      {kPlainRelation, "be", "John"}});
}

inline Dendrogram subject_object_tree() {
  Dendrogram subj = Dendrogram::join(1, {Dendrogram::leaf("the"), Dendrogram::leaf("man")}, "NP_subj");
  Dendrogram obj = Dendrogram::join(1, {Dendrogram::leaf("a"), Dendrogram::leaf("dog")}, "NP_obj");
  return Dendrogram::join(2, {subj, Dendrogram::leaf("ate"), obj}, "S");
}

inline PlainTree who_shows_tree() {
  using T = PlainTree;
  return T::node({T::leaf("who"),
                  T::node({T::leaf("shows"),
                           T::node({T::leaf("he"),
                                    T::node({T::leaf("deserves"), T::node({T::leaf("it")})})})})});
}

inline PlainTree the_man_saw_her_tree() {
  using T = PlainTree;
  return T::node({T::node({T::leaf("the"), T::leaf("man")}), T::node({T::leaf("saw"), T::leaf("her")})});
}

}  // namespace detail

/// The six-point constant field, a three-word clause over its first three
/// points, and a script that draws two pairs closer and then collapses the
/// John/himself chain.
struct Narrative {
  DistanceMatrix field;
  LGraph graph;
  DerivationScript script;
};

inline Narrative john_himself_narrative() {
  LGraph g({{"p1", "Δ", "John", false}, {"p2", "despises", "despises", true}, {"p3", "Δ", "himself", false}},
           {{"p1", "p2", std::nullopt}, {"p2", "p3", std::nullopt}});
  DerivationScript s{MetrizeStep{"p1", "p2", Rational(1, 2)}, MetrizeStep{"p2", "p3", Rational(7, 10)},
                     CollapseStep{"Δ"}};
  return {make_ultrametric_field(6, 2), std::move(g), std::move(s)};
}

inline const std::map<std::string, std::string>& gauss_corpus() {
  static const std::map<std::string, std::string> corpus{
      {"unknot", ""},
      {"twist1", "O1+ U1+"},
      {"twist2", "O1+ U1+ O2+ U2+"},
      {"trefoil", "O1+ U2+ O3+ U1+ O2+ U3+"},
      {"r3_sample", "O1+ O2+ U1+ O3+ U2+ U3+"},
  };
  return corpus;
}

/// File name -> contents for every fixture, in a fixed byte-exact form.
inline std::map<std::string, std::string> bundle_files() {
  using io::dump_file;
  using io::to_json;
  std::map<std::string, std::string> files;
  for (unsigned i : {0u, 1u, 5u}) files["xbar_i" + std::to_string(i) + ".json"] = dump_file(to_json(xbar_matrix(i)));
  files["nonultra.json"] = dump_file(to_json(DistanceMatrix({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));
  files["tree_the_man_ate.json"] = dump_file(to_json(detail::subject_object_tree()));

  files["sd_mary_reading.json"] = dump_file(to_json(detail::sd_mary_reading()));
  files["sd_john_despises.json"] = dump_file(to_json(detail::sd_john_despises()));
  files["sd_which_picture.json"] = dump_file(to_json(detail::sd_which_picture()));
  files["sd_the_man_who.json"] = dump_file(to_json(detail::sd_the_man_who()));

  files["term_wished_host.json"] = dump_file(to_json(parse_term("[K John [M wished [L]]]")));
  files["term_wished_clause.json"] = dump_file(to_json(parse_term("[L that Mary would go out with him]")));
  files["term_wished_clause_mislabeled.json"] = dump_file(to_json(parse_term("[L' that Mary would go out with him]")));

  files["tree_who_shows.json"] = dump_file(to_json(detail::who_shows_tree()));
  files["tree_the_man.json"] = dump_file(to_json(detail::the_man_saw_her_tree()));
  files["growth_who_shows.json"] = dump_file(io::Json{to_json(GrowthStep{Terminal{"it"}}),
                                               to_json(GrowthStep{Terminal{"deserves"}}),
                                               to_json(GrowthStep{Terminal{"he"}}),
                                               to_json(GrowthStep{Terminal{"shows"}}),
                                               to_json(GrowthStep{Terminal{"who"}})});
  files["growth_the_man.json"] = dump_file(io::Json{
      to_json(GrowthStep{Terminal{"her"}}), to_json(GrowthStep{Terminal{"saw"}}),
      to_json(GrowthStep{ComplexObject{PlainTree::node({PlainTree::leaf("the"), PlainTree::leaf("man")})}})});

  files["relations_active.json"] = dump_file(to_json(detail::passive_before()));
  files["relations_passive.json"] = dump_file(to_json(detail::passive_after()));
  files["map_identity.json"] =
      dump_file(io::Json{{"John", "John"}, {"be", "be"}, {"e", "e"}, {"murdered", "murdered"}});
  files["map_swap.json"] = dump_file(io::Json{{"John", "e"}, {"be", "be"}, {"e", "John"}, {"murdered", "murdered"}});

  const Narrative n = john_himself_narrative();
  files["narrative_field.json"] = dump_file(to_json(n.field));
  files["narrative_graph.json"] = dump_file(to_json(n.graph));
  io::Json script = io::Json::array();
  for (const auto& step : n.script) script.push_back(to_json(step));
  files["narrative_script.json"] = dump_file(script);

  for (const auto& [name, code] : gauss_corpus()) files[name + ".gauss"] = code + "\n";
  return files;
}

inline void bundle_examples(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw Error(ErrorKind::IoError, "cannot create directory " + dir.string(), {dir.string()});
  for (const auto& [name, content] : bundle_files()) io::write_text(dir / name, content);
}

}  // namespace synspace
