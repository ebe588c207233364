// Copyright 2026 The synspace Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "support.hpp"
#include "synspace/bundle.hpp"
#include "synspace/knots.hpp"

namespace synspace {
namespace {

using testing::Rng;

KnotDiagram corpus(const std::string& name) { return KnotDiagram::parse(gauss_corpus().at(name)); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::IoError;
}

// ---------------------------------------------------------------------------
// Oracles

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::size_t components() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) c += find(i) == i;
    return c;
  }
};

// Laurent polynomial in A.
using Poly = std::map<int, long long>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (auto [ea, ca] : a)
    for (auto [eb, cb] : b) out[ea + eb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly add(Poly a, const Poly& b) {
  for (auto [e, c] : b) a[e] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

// Bracket state sum. Edge i runs from passage i to passage i+1; its start
// end is node 2i and its finish end is node 2i+1. Each smoothing pairs the
// four ends at a crossing; loops are the resulting components.
Poly kauffman_bracket(const KnotDiagram& d) {
  const auto& code = d.code();
  const std::size_t m = code.size();
  if (m == 0) return {{0, 1}};
  const Poly delta{{2, -1}, {-2, -1}};
  std::vector<std::pair<std::size_t, std::size_t>> passages;  // (over, under)
  std::vector<int> signs;
  for (int c : [&] {
         std::set<int> ids;
         for (const auto& s : code) ids.insert(s.crossing);
         return ids;
       }()) {
    passages.push_back({d.position(c, true), d.position(c, false)});
    signs.push_back(code[d.position(c, true)].sign);
  }
  const std::size_t n = passages.size();
  auto start = [](std::size_t e) { return 2 * e; };
  auto finish = [m](std::size_t p) { return 2 * ((p + m - 1) % m) + 1; };  // end of the edge entering p

  Poly total;
  for (std::size_t state = 0; state < (std::size_t{1} << n); ++state) {
    UnionFind uf(2 * m);
    for (std::size_t e = 0; e < m; ++e) uf.join(2 * e, 2 * e + 1);
    int a_minus_b = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool a_smoothing = (state >> k) & 1;
      const bool oriented = a_smoothing == (signs[k] > 0);
      a_minus_b += a_smoothing ? 1 : -1;
      auto [p, q] = passages[k];
      if (oriented) {
        uf.join(finish(p), start(q));
        uf.join(finish(q), start(p));
      } else {
        uf.join(finish(p), finish(q));
        uf.join(start(p), start(q));
      }
    }
    Poly term{{a_minus_b, 1}};
    for (std::size_t l = 1; l < uf.components(); ++l) term = mul(term, delta);
    total = add(total, term);
  }
  return total;
}

// (-A^3)^(-w) <D>, unchanged by all three moves.
Poly normalized_bracket(const KnotDiagram& d) {
  const int w = writhe(d);
  const long long sign = (w % 2 == 0) ? 1 : -1;
  return mul({{-3 * w, sign}}, kauffman_bracket(d));
}

// Arcs by merging consecutive edges across over passages; colorings are the
// mod-3 null space of the crossing equations. Tricolorable iff it holds more
// than the constant colorings.
bool tricolorable_by_rank(const KnotDiagram& d) {
  const auto& code = d.code();
  const std::size_t m = code.size();
  if (m == 0) return false;
  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i)
    if (code[i].over) uf.join((i + m - 1) % m, i);
  std::map<std::size_t, std::size_t> arc_index;
  for (std::size_t e = 0; e < m; ++e) arc_index.emplace(uf.find(e), arc_index.size());
  const std::size_t arcs = arc_index.size();
  auto arc = [&](std::size_t e) { return arc_index.at(uf.find(e)); };

  std::vector<std::vector<int>> rows;
  for (std::size_t q = 0; q < m; ++q) {
    if (code[q].over) continue;
    const std::size_t p = d.position(code[q].crossing, true);
    std::vector<int> row(arcs, 0);
    row[arc(p)] += 1;
    row[arc((q + m - 1) % m)] += 1;
    row[arc(q)] += 1;
    for (auto& x : row) x %= 3;
    rows.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < arcs && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const int inv = rows[rank][col];  // 1 and 2 are their own inverses mod 3
    for (auto& x : rows[rank]) x = (x * inv) % 3;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const int f = rows[r][col];
      for (std::size_t c = 0; c < arcs; ++c) rows[r][c] = ((rows[r][c] - f * rows[rank][c]) % 3 + 3) % 3;
    }
    ++rank;
  }
  return arcs - rank >= 2;
}

KnotDiagram random_code(Rng& rng, std::size_t crossings) {
  std::vector<GaussSymbol> code;
  for (std::size_t c = 1; c <= crossings; ++c) {
    const int sign = testing::uniform(rng, 0, 1) ? 1 : -1;
    code.push_back({static_cast<int>(c), true, sign});
    code.push_back({static_cast<int>(c), false, sign});
  }
  std::shuffle(code.begin(), code.end(), rng);
  return KnotDiagram(std::move(code));
}

// Random move; insertions are only drawn while the result stays within
// max_crossings.
std::optional<RMove> random_move(Rng& rng, const KnotDiagram& d, std::size_t max_crossings) {
  auto moves = enumerate_applicable_moves(d);
  std::vector<RMove> shrink, grow;
  for (const auto& m : moves) {
    if (crossing_delta(m.kind) <= 0)
      shrink.push_back(m);
    else if (d.crossing_count() + static_cast<std::size_t>(crossing_delta(m.kind)) <= max_crossings)
      grow.push_back(m);
  }
  const bool prefer_shrink = !shrink.empty() && testing::uniform(rng, 0, 2) == 0;
  auto& pool = prefer_shrink || grow.empty() ? shrink : grow;
  if (pool.empty()) return std::nullopt;
  return pool[testing::uniform(rng, 0, pool.size() - 1)];
}

// ---------------------------------------------------------------------------

TEST(Gauss, ParseAndRender) {
  auto t = corpus("trefoil");
  EXPECT_EQ(t.crossing_count(), 3u);
  EXPECT_EQ(t.to_string(), "O1+ U2+ O3+ U1+ O2+ U3+");
  EXPECT_EQ(KnotDiagram::parse("  o1-   u1- ").to_string(), "O1- U1-");
  EXPECT_TRUE(KnotDiagram::parse("").is_empty());
  EXPECT_EQ(t.position(2, false), 1u);
  EXPECT_EQ(t.next_label(), 4);
}

TEST(Gauss, ParseErrors) {
  for (const char* bad : {"X1+", "O1", "Oa+", "O+", "O1+ U1* "})
    EXPECT_EQ(kind_of([&] { KnotDiagram::parse(bad); }), ErrorKind::ParseError) << bad;
  try {
    KnotDiagram::parse("O1+ Q1+");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("token 1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("offset 4"), std::string::npos);
  }
}

TEST(Gauss, StructuralErrors) {
  for (const char* bad : {"O1+", "O1+ O1+", "O1+ U1-", "O1+ U1+ U1+", "O0+ U0+"})
    EXPECT_EQ(kind_of([&] { KnotDiagram::parse(bad); }), ErrorKind::MalformedGauss) << bad;
  EXPECT_EQ(kind_of([] { KnotDiagram({{1, true, 2}, {1, false, 2}}); }), ErrorKind::MalformedGauss);
}

TEST(Gauss, CanonicalFormIgnoresRotationReversalAndNames) {
  Rng rng(3);
  for (int round = 0; round < 100; ++round) {
    KnotDiagram d = random_code(rng, testing::uniform(rng, 1, 6));
    auto code = d.code();
    std::rotate(code.begin(), code.begin() + testing::uniform(rng, 0, code.size() - 1), code.end());
    if (testing::uniform(rng, 0, 1)) std::reverse(code.begin(), code.end());
    for (auto& s : code) s.crossing += 40;
    KnotDiagram e(code);
    EXPECT_TRUE(d.equivalent(e));
    EXPECT_EQ(d.canonical(), e.canonical());
  }
  EXPECT_FALSE(corpus("twist1").equivalent(KnotDiagram::parse("O1- U1-")));
  EXPECT_FALSE(corpus("trefoil").equivalent(corpus("r3_sample")));
}

TEST(Moves, CorpusEnumeration) {
  auto kinds = [](const KnotDiagram& d) {
    std::map<MoveKind, std::size_t> out;
    for (const auto& m : enumerate_applicable_moves(d)) ++out[m.kind];
    return out;
  };
  auto unknot = kinds(corpus("unknot"));
  EXPECT_EQ(unknot.size(), 2u);
  EXPECT_EQ(unknot[MoveKind::R1_add], 4u);
  EXPECT_EQ(unknot[MoveKind::R2_add], 8u);

  auto trefoil = kinds(corpus("trefoil"));
  EXPECT_EQ(trefoil.count(MoveKind::R1_remove), 0u);
  EXPECT_EQ(trefoil.count(MoveKind::R2_remove), 0u);
  EXPECT_EQ(trefoil.count(MoveKind::R3), 0u);

  auto twist1 = enumerate_applicable_moves(corpus("twist1"));
  ASSERT_FALSE(twist1.empty());
  EXPECT_EQ(twist1.front(), (RMove{MoveKind::R1_remove, {0}}));
  EXPECT_EQ(kinds(corpus("twist1"))[MoveKind::R1_remove], 1u);

  auto sample = enumerate_applicable_moves(corpus("r3_sample"));
  EXPECT_TRUE(std::any_of(sample.begin(), sample.end(), [](const RMove& m) {
    return m.kind == MoveKind::R3 && m.site == std::vector<std::size_t>{0, 2, 4};
  }));
}

TEST(Moves, NotApplicable) {
  auto t = corpus("trefoil");
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R1_remove, {0}}); }), ErrorKind::MoveNotApplicable);
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R2_remove, {0, 1}}); }), ErrorKind::MoveNotApplicable);
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R3, {0, 2, 4}}); }), ErrorKind::MoveNotApplicable);
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R1_add, {9}}); }), ErrorKind::MoveNotApplicable);
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R1_add, {0, 1}}); }), ErrorKind::MoveNotApplicable);
  EXPECT_EQ(kind_of([&] { apply_rmove(t, {MoveKind::R1_add, {0}, 0}); }), ErrorKind::MoveNotApplicable);
}

TEST(Moves, WritheAfterNegativeKink) {
  auto d = apply_rmove(KnotDiagram{}, {MoveKind::R1_add, {0}, -1});
  EXPECT_EQ(d.to_string(), "O1- U1-");
  EXPECT_EQ(writhe(d), -1);
  EXPECT_EQ(writhe(corpus("trefoil")), 3);
}

TEST(Moves, EveryEnumeratedMoveIsReversibleAndPreservesInvariants) {
  Rng rng(515);
  std::map<MoveKind, std::size_t> checked;
  for (const auto& [name, text] : gauss_corpus()) {
    KnotDiagram d = KnotDiagram::parse(text);
    for (int step = 0; step < 40; ++step) {
      const Poly before = kauffman_bracket(d);
      const Poly before_norm = normalized_bracket(d);
      const bool before_tri = tricolorable_by_rank(d);
      // Check every move on small diagrams, then follow one at random.
      auto moves = enumerate_applicable_moves(d);
      if (d.crossing_count() > 4) std::erase_if(moves, [](const RMove& m) { return crossing_delta(m.kind) > 0; });
      for (const auto& m : moves) {
        const KnotDiagram after = apply_rmove(d, m);
        ++checked[m.kind];
        EXPECT_EQ(static_cast<long>(after.crossing_count()),
                  static_cast<long>(d.crossing_count()) + crossing_delta(m.kind))
            << m.describe();
        EXPECT_EQ(normalized_bracket(after), before_norm) << d.to_string() << " " << m.describe();
        if (m.kind == MoveKind::R1_add || m.kind == MoveKind::R1_remove) {
          EXPECT_EQ(std::abs(writhe(after) - writhe(d)), 1);
        } else {
          EXPECT_EQ(kauffman_bracket(after), before) << d.to_string() << " " << m.describe();
          EXPECT_EQ(writhe(after), writhe(d));
        }
        if (m.kind == MoveKind::R1_add) {
          EXPECT_EQ(writhe(after), writhe(d) + m.sign);
        }
        EXPECT_EQ(tricolorable_by_rank(after), before_tri);
        auto inv = inverse_move(d, m);
        ASSERT_TRUE(inv.has_value()) << d.to_string() << " " << m.describe();
        EXPECT_EQ(apply_rmove(after, *inv).canonical(), d.canonical());
      }
      auto next = random_move(rng, d, 6);
      if (!next) break;
      d = apply_rmove(d, *next);
    }
  }
  // The walks must actually exercise every kind of move.
  for (MoveKind k : {MoveKind::R1_add, MoveKind::R1_remove, MoveKind::R2_add, MoveKind::R2_remove, MoveKind::R3})
    EXPECT_GT(checked[k], 0u) << move_name(k);
}

TEST(Tricolor, MatchesRankOracleOnRandomCodes) {
  Rng rng(9);
  std::size_t yes = 0;
  for (int round = 0; round < 500; ++round) {
    KnotDiagram d = random_code(rng, testing::uniform(rng, 1, 8));
    const bool expect = tricolorable_by_rank(d);
    EXPECT_EQ(is_tricolorable(d), expect) << d.to_string();
    yes += expect;
  }
  EXPECT_GT(yes, 0u);
  EXPECT_TRUE(is_tricolorable(corpus("trefoil")));
  EXPECT_FALSE(is_tricolorable(corpus("unknot")));
  EXPECT_FALSE(is_tricolorable(corpus("twist2")));
}

TEST(Tricolor, ArcStructure) {
  auto s = arc_structure(corpus("trefoil"));
  EXPECT_EQ(s.arcs, 3u);
  ASSERT_EQ(s.crossings.size(), 3u);
  for (const auto& c : s.crossings) {
    std::set<std::size_t> distinct{c.over, c.under_in, c.under_out};
    EXPECT_EQ(distinct.size(), 3u);
  }
}

TEST(Bracket, OracleSanity) {
  EXPECT_EQ(kauffman_bracket(corpus("unknot")), (Poly{{0, 1}}));
  EXPECT_EQ(kauffman_bracket(corpus("twist1")), (Poly{{3, -1}}));
  EXPECT_EQ(normalized_bracket(corpus("twist2")), (Poly{{0, 1}}));
  // The trefoil is not the unknot.
  EXPECT_NE(normalized_bracket(corpus("trefoil")), (Poly{{0, 1}}));
}

TEST(Reduce, Examples) {
  auto one = search_unknot(corpus("twist1"), 4, 4);
  ASSERT_EQ(one.status, ReduceStatus::Reduced);
  EXPECT_EQ(one.moves->size(), 1u);

  auto two = search_unknot(corpus("twist2"), 6, 6);
  ASSERT_EQ(two.status, ReduceStatus::Reduced);
  ASSERT_EQ(two.moves->size(), 2u);
  KnotDiagram d = corpus("twist2");
  for (const auto& m : *two.moves) d = apply_rmove(d, m);
  EXPECT_TRUE(d.is_empty());

  auto empty = search_unknot(KnotDiagram{}, 0, 0);
  EXPECT_EQ(empty.status, ReduceStatus::Reduced);
  EXPECT_TRUE(empty.moves->empty());
}

TEST(Reduce, TrefoilNeverReduces) {
  auto pruned = search_unknot(corpus("trefoil"), 12, 8);
  EXPECT_EQ(pruned.status, ReduceStatus::Obstructed);
  EXPECT_FALSE(pruned.moves.has_value());

  auto blind = search_unknot(corpus("trefoil"), 4, 5, {false, 1'000'000});
  EXPECT_EQ(blind.status, ReduceStatus::Exhausted);
  EXPECT_FALSE(blind.moves.has_value());
  EXPECT_GT(blind.states, 1u);

  auto tight = search_unknot(corpus("trefoil"), 12, 8, {false, 50});
  EXPECT_EQ(tight.status, ReduceStatus::BudgetExceeded);
}

TEST(Reduce, SequencesFromRandomWalksAreValid) {
  Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    KnotDiagram d;
    for (int k = 0; k < 2; ++k) {
      auto m = random_move(rng, d, 3);
      if (m && crossing_delta(m->kind) > 0) d = apply_rmove(d, *m);
    }
    auto r = search_unknot(d, 4, 5);
    if (r.status != ReduceStatus::Reduced) continue;
    KnotDiagram x = d;
    for (const auto& m : *r.moves) x = apply_rmove(x, m);
    EXPECT_TRUE(x.is_empty()) << d.to_string();
    EXPECT_LE(r.moves->size(), 4u);
  }
}

TEST(Collapse, AlwaysIncompatible) {
  try {
    attempt_collapse(corpus("trefoil"), 0, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompatibleWithKnotTheory);
    EXPECT_EQ(e.witness(), (std::vector<std::string>{"0", "2"}));
  }
  EXPECT_EQ(kind_of([] { attempt_collapse(KnotDiagram{}, 0, 0); }), ErrorKind::IncompatibleWithKnotTheory);
}

TEST(Lackenby, Bound) {
  Integer expect = 1;
  for (int i = 0; i < 11; ++i) expect *= 236 * 3;
  EXPECT_EQ(lackenby_bound(3), expect);
  EXPECT_EQ(lackenby_bound(0), 0);
}

}  // namespace
}  // namespace synspace
