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

// Knot diagrams as signed Gauss codes, Reidemeister moves, 3-colorings and
// a bounded breadth-first unknotting search.
//
// Codes are not checked for planarity, so some of them denote virtual
// knots. Moves, colorings and the search only need the combinatorics.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synspace/error.hpp"
#include "synspace/rational.hpp"

namespace synspace {

struct GaussSymbol {
  int crossing = 0;
  bool over = false;
  int sign = 1;  // +1 or -1

  bool operator==(const GaussSymbol&) const = default;
};

inline std::string to_string(const GaussSymbol& s) {
  return std::string(s.over ? "O" : "U") + std::to_string(s.crossing) + (s.sign > 0 ? "+" : "-");
}

/// Circular signed Gauss code. Each crossing appears twice, once over and
/// once under, with the same sign. The empty code is the unknot.
class KnotDiagram {
 public:
  KnotDiagram() = default;

  explicit KnotDiagram(std::vector<GaussSymbol> code) : code_(std::move(code)) {
    std::map<int, std::vector<const GaussSymbol*>> seen;
    for (const auto& s : code_) {
      if (s.crossing <= 0)
        throw Error(ErrorKind::MalformedGauss, "crossing ids must be positive, got " + synspace::to_string(s));
      if (s.sign != 1 && s.sign != -1)
        throw Error(ErrorKind::MalformedGauss, "sign must be +1 or -1 on crossing " +
                                                   std::to_string(s.crossing));
      seen[s.crossing].push_back(&s);
    }
    for (const auto& [c, occ] : seen) {
      const std::string id = std::to_string(c);
      if (occ.size() != 2)
        throw Error(ErrorKind::MalformedGauss,
                    "crossing " + id + " appears " + std::to_string(occ.size()) + " times", {id});
      if (occ[0]->over == occ[1]->over)
        throw Error(ErrorKind::MalformedGauss,
                    "crossing " + id + " must appear once over and once under", {id});
      if (occ[0]->sign != occ[1]->sign)
        throw Error(ErrorKind::MalformedGauss, "crossing " + id + " has two different signs", {id});
    }
  }

  /// Whitespace-separated tokens such as "O1+ U2+ O3+ U1+ O2+ U3+".
  static KnotDiagram parse(std::string_view text) {
    std::vector<GaussSymbol> code;
    std::size_t i = 0;
    std::size_t index = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      const std::string_view tok = text.substr(start, i - start);
      auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::ParseError, "gauss token " + std::to_string(index) + " ('" +
                                               std::string(tok) + "') at offset " +
                                               std::to_string(start) + ": " + why);
      };
      if (tok.size() < 3) fail("expected <O|U><id><+|->");
      GaussSymbol s;
      if (tok.front() == 'O' || tok.front() == 'o')
        s.over = true;
      else if (tok.front() == 'U' || tok.front() == 'u')
        s.over = false;
      else
        fail("expected O or U");
      if (tok.back() == '+')
        s.sign = 1;
      else if (tok.back() == '-')
        s.sign = -1;
      else
        fail("expected a trailing + or -");
      const std::string_view digits = tok.substr(1, tok.size() - 2);
      if (digits.empty() || digits.size() > 9 ||
          !std::all_of(digits.begin(), digits.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail("expected a crossing number");
      s.crossing = std::stoi(std::string(digits));
      code.push_back(s);
      ++index;
    }
    return KnotDiagram(std::move(code));
  }

  const std::vector<GaussSymbol>& code() const noexcept { return code_; }
  std::size_t size() const noexcept { return code_.size(); }
  std::size_t crossing_count() const noexcept { return code_.size() / 2; }
  bool is_empty() const noexcept { return code_.empty(); }

  std::size_t position(int crossing, bool over) const {
    for (std::size_t i = 0; i < code_.size(); ++i)
      if (code_[i].crossing == crossing && code_[i].over == over) return i;
    throw Error(ErrorKind::MalformedGauss, "no crossing " + std::to_string(crossing));
  }

  int next_label() const {
    int hi = 0;
    for (const auto& s : code_) hi = std::max(hi, s.crossing);
    return hi + 1;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < code_.size(); ++i)
      out += (i ? " " : "") + synspace::to_string(code_[i]);
    return out;
  }

  /// Least string over all rotations and both traversal directions, with
  /// crossings renumbered by first appearance. Equal diagrams share it.
  std::string canonical() const {
    if (code_.empty()) return "";
    std::string best;
    bool have = false;
    const std::size_t n = code_.size();
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<GaussSymbol> seq = code_;
      if (dir) std::reverse(seq.begin(), seq.end());
      for (std::size_t r = 0; r < n; ++r) {
        std::unordered_map<int, int> relabel;
        std::string s;
        for (std::size_t k = 0; k < n; ++k) {
          const GaussSymbol& g = seq[(r + k) % n];
          auto [it, _] = relabel.emplace(g.crossing, static_cast<int>(relabel.size()) + 1);
          s += g.over ? 'O' : 'U';
          s += std::to_string(it->second);
          s += g.sign > 0 ? '+' : '-';
          s += ' ';
        }
        if (!have || s < best) {
          best = std::move(s);
          have = true;
        }
      }
    }
    return best;
  }

  bool equivalent(const KnotDiagram& o) const { return canonical() == o.canonical(); }
  bool operator==(const KnotDiagram&) const = default;

 private:
  std::vector<GaussSymbol> code_;
};

enum class MoveKind { R1_add, R1_remove, R2_add, R2_remove, R3 };

constexpr std::string_view move_name(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1_add: return "R1_add";
    case MoveKind::R1_remove: return "R1_remove";
    case MoveKind::R2_add: return "R2_add";
    case MoveKind::R2_remove: return "R2_remove";
    case MoveKind::R3: return "R3";
  }
  return "Unknown";
}

constexpr int crossing_delta(MoveKind k) noexcept {
  switch (k) {
    case MoveKind::R1_add: return 1;
    case MoveKind::R1_remove: return -1;
    case MoveKind::R2_add: return 2;
    case MoveKind::R2_remove: return -2;
    case MoveKind::R3: return 0;
  }
  return 0;
}

/// Sites are indices into the code at application time.
///   R1_add    {gap}                 insert a kink before index gap
///   R1_remove {i}                   kink at (i, i+1)
///   R2_add    {over_gap, under_gap} two crossings, first one signed `sign`
///   R2_remove {i, j}                over pair at (i, i+1), under pair at (j, j+1)
///   R3        {top, middle, bottom} the three adjacent pairs of a triangle
/// Pairs wrap around the end of the code.
struct RMove {
  MoveKind kind = MoveKind::R1_add;
  std::vector<std::size_t> site;
  int sign = 1;
  /// R1_add: the over passage comes first. R2_add with equal gaps: the over
  /// pair is inserted before the under pair.
  bool over_first = true;
  /// R2_add: the two strands run in the same direction.
  bool parallel = true;

  bool operator==(const RMove&) const = default;

  std::string describe() const {
    std::string out(move_name(kind));
    out += "@";
    for (std::size_t i = 0; i < site.size(); ++i) out += (i ? "," : "") + std::to_string(site[i]);
    if (kind == MoveKind::R1_add || kind == MoveKind::R2_add) {
      out += sign > 0 ? " +" : " -";
      if (kind == MoveKind::R1_add || (site.size() == 2 && site[0] == site[1]))
        out += over_first ? " over-first" : " under-first";
      if (kind == MoveKind::R2_add) out += parallel ? " parallel" : " antiparallel";
    }
    return out;
  }
};

namespace detail {

inline std::size_t gap_count(const KnotDiagram& d) { return std::max<std::size_t>(d.size(), 1); }

[[noreturn]] inline void not_applicable(const RMove& m, const std::string& why) {
  throw Error(ErrorKind::MoveNotApplicable, m.describe() + ": " + why);
}

inline std::vector<GaussSymbol> erase_positions(const std::vector<GaussSymbol>& code,
                                                std::set<std::size_t> drop) {
  std::vector<GaussSymbol> out;
  for (std::size_t i = 0; i < code.size(); ++i)
    if (!drop.count(i)) out.push_back(code[i]);
  return out;
}

struct Triangle {
  int a, b, c;        // top x middle, top x bottom, middle x bottom
  std::size_t top, middle, bottom;
};

/// Checks the triangle pattern at the three pair sites. The crossing signs
/// must agree with the order in which each strand meets its two crossings:
/// s_a s_b = e_M e_B and s_a s_c = e_T e_B, where e_X is +1 when strand X
/// meets the crossings in (a, b), (a, c), (b, c) order respectively.
inline std::optional<Triangle> triangle_at(const KnotDiagram& d, std::size_t top,
                                           std::size_t middle, std::size_t bottom) {
  const auto& code = d.code();
  const std::size_t n = code.size();
  if (n < 6 || top >= n || middle >= n || bottom >= n) return std::nullopt;
  const GaussSymbol& t0 = code[top];
  const GaussSymbol& t1 = code[(top + 1) % n];
  const GaussSymbol& m0 = code[middle];
  const GaussSymbol& m1 = code[(middle + 1) % n];
  const GaussSymbol& b0 = code[bottom];
  const GaussSymbol& b1 = code[(bottom + 1) % n];
  if (!t0.over || !t1.over || t0.crossing == t1.crossing) return std::nullopt;
  if (b0.over || b1.over || b0.crossing == b1.crossing) return std::nullopt;
  if (m0.over == m1.over) return std::nullopt;
  const GaussSymbol& mu = m0.over ? m1 : m0;  // middle passes under a
  const GaussSymbol& mo = m0.over ? m0 : m1;  // and over c
  const int a = mu.crossing;
  const int c = mo.crossing;
  int b;
  if (a == t0.crossing)
    b = t1.crossing;
  else if (a == t1.crossing)
    b = t0.crossing;
  else
    return std::nullopt;
  if (c == a || c == b) return std::nullopt;
  if (!((b0.crossing == b && b1.crossing == c) || (b0.crossing == c && b1.crossing == b)))
    return std::nullopt;

  const int e_top = t0.crossing == a ? 1 : -1;
  const int e_mid = !m0.over ? 1 : -1;
  const int e_bot = b0.crossing == b ? 1 : -1;
  const int s_a = mu.sign;
  const int s_b = b0.crossing == b ? b0.sign : b1.sign;
  const int s_c = mo.sign;
  if (s_a * s_b != e_mid * e_bot || s_a * s_c != e_top * e_bot) return std::nullopt;
  return Triangle{a, b, c, top, middle, bottom};
}

}  // namespace detail

inline KnotDiagram apply_rmove(const KnotDiagram& d, const RMove& m) {
  const auto& code = d.code();
  const std::size_t n = code.size();
  auto need_sites = [&](std::size_t k) {
    if (m.site.size() != k) detail::not_applicable(m, "expected " + std::to_string(k) + " site indices");
  };
  switch (m.kind) {
    case MoveKind::R1_add: {
      need_sites(1);
      if (m.site[0] >= detail::gap_count(d)) detail::not_applicable(m, "gap out of range");
      if (m.sign != 1 && m.sign != -1) detail::not_applicable(m, "sign must be +1 or -1");
      const int c = d.next_label();
      GaussSymbol o{c, true, m.sign}, u{c, false, m.sign};
      std::vector<GaussSymbol> out = code;
      auto at = out.begin() + static_cast<std::ptrdiff_t>(m.site[0]);
      if (m.over_first)
        out.insert(at, {o, u});
      else
        out.insert(at, {u, o});
      return KnotDiagram(std::move(out));
    }
    case MoveKind::R1_remove: {
      need_sites(1);
      const std::size_t i = m.site[0];
      if (n < 2 || i >= n) detail::not_applicable(m, "site out of range");
      const std::size_t j = (i + 1) % n;
      if (code[i].crossing != code[j].crossing) detail::not_applicable(m, "no kink at site");
      return KnotDiagram(detail::erase_positions(code, {i, j}));
    }
    case MoveKind::R2_add: {
      need_sites(2);
      const std::size_t p = m.site[0], q = m.site[1];
      if (p >= detail::gap_count(d) || q >= detail::gap_count(d))
        detail::not_applicable(m, "gap out of range");
      if (m.sign != 1 && m.sign != -1) detail::not_applicable(m, "sign must be +1 or -1");
      const int a = d.next_label(), b = a + 1;
      std::vector<GaussSymbol> over{{a, true, m.sign}, {b, true, -m.sign}};
      std::vector<GaussSymbol> under = m.parallel
                                           ? std::vector<GaussSymbol>{{a, false, m.sign}, {b, false, -m.sign}}
                                           : std::vector<GaussSymbol>{{b, false, -m.sign}, {a, false, m.sign}};
      std::vector<GaussSymbol> out = code;
      auto insert = [&](std::size_t at, const std::vector<GaussSymbol>& part) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), part.begin(), part.end());
      };
      if (p == q) {
        std::vector<GaussSymbol> both = m.over_first ? over : under;
        const auto& second = m.over_first ? under : over;
        both.insert(both.end(), second.begin(), second.end());
        insert(p, both);
      } else if (p > q) {
        insert(p, over);
        insert(q, under);
      } else {
        insert(q, under);
        insert(p, over);
      }
      return KnotDiagram(std::move(out));
    }
    case MoveKind::R2_remove: {
      need_sites(2);
      const std::size_t i = m.site[0], j = m.site[1];
      if (n < 4 || i >= n || j >= n) detail::not_applicable(m, "site out of range");
      const GaussSymbol &o0 = code[i], &o1 = code[(i + 1) % n];
      const GaussSymbol &u0 = code[j], &u1 = code[(j + 1) % n];
      if (!o0.over || !o1.over || o0.crossing == o1.crossing)
        detail::not_applicable(m, "no over pair at site");
      if (u0.over || u1.over) detail::not_applicable(m, "no under pair at site");
      if (o0.sign == o1.sign) detail::not_applicable(m, "R2 crossings must have opposite signs");
      std::set<int> over_ids{o0.crossing, o1.crossing}, under_ids{u0.crossing, u1.crossing};
      if (over_ids != under_ids) detail::not_applicable(m, "pairs do not share both crossings");
      return KnotDiagram(detail::erase_positions(code, {i, (i + 1) % n, j, (j + 1) % n}));
    }
    case MoveKind::R3: {
      need_sites(3);
      if (!detail::triangle_at(d, m.site[0], m.site[1], m.site[2]))
        detail::not_applicable(m, "no R3 triangle at site");
      std::vector<GaussSymbol> out = code;
      for (std::size_t s : m.site) std::swap(out[s], out[(s + 1) % n]);
      return KnotDiagram(std::move(out));
    }
  }
  detail::not_applicable(m, "unknown move");
}

/// Removal and R3 sites first (R3 in increasing site order), then every
/// insertion: each gap with each sign and orientation.
inline std::vector<RMove> enumerate_applicable_moves(const KnotDiagram& d) {
  const auto& code = d.code();
  const std::size_t n = code.size();
  std::vector<RMove> out;

  for (std::size_t i = 0; i < n && !(n == 2 && i == 1); ++i)
    if (code[i].crossing == code[(i + 1) % n].crossing)
      out.push_back({MoveKind::R1_remove, {i}});

  std::set<std::vector<std::size_t>> r2;
  for (std::size_t i = 0; i < n && n >= 4; ++i) {
    const GaussSymbol &o0 = code[i], &o1 = code[(i + 1) % n];
    if (!o0.over || !o1.over || o0.crossing == o1.crossing || o0.sign == o1.sign) continue;
    const std::size_t pa = d.position(o0.crossing, false), pb = d.position(o1.crossing, false);
    if ((pa + 1) % n == pb)
      r2.insert({i, pa});
    else if ((pb + 1) % n == pa)
      r2.insert({i, pb});
  }
  for (const auto& s : r2) out.push_back({MoveKind::R2_remove, s});

  std::set<std::vector<std::size_t>> r3;
  for (std::size_t top = 0; top < n && n >= 6; ++top) {
    if (!code[top].over || !code[(top + 1) % n].over) continue;
    for (int a : {code[top].crossing, code[(top + 1) % n].crossing}) {
      const std::size_t pa = d.position(a, false);
      for (std::size_t middle : {(pa + n - 1) % n, pa}) {
        const std::size_t other = middle == pa ? (pa + 1) % n : middle;
        if (!code[other].over) continue;
        const int c = code[other].crossing;
        const int b = a == code[top].crossing ? code[(top + 1) % n].crossing : code[top].crossing;
        if (c == a || c == b) continue;
        const std::size_t pb = d.position(b, false), pc = d.position(c, false);
        std::size_t bottom;
        if ((pb + 1) % n == pc)
          bottom = pb;
        else if ((pc + 1) % n == pb)
          bottom = pc;
        else
          continue;
        if (detail::triangle_at(d, top, middle, bottom)) r3.insert({top, middle, bottom});
      }
    }
  }
  for (const auto& s : r3) out.push_back({MoveKind::R3, s});

  const std::size_t gaps = detail::gap_count(d);
  for (std::size_t g = 0; g < gaps; ++g)
    for (int sign : {1, -1})
      for (bool over_first : {true, false}) out.push_back({MoveKind::R1_add, {g}, sign, over_first});
  for (std::size_t p = 0; p < gaps; ++p)
    for (std::size_t q = 0; q < gaps; ++q)
      for (int sign : {1, -1})
        for (bool parallel : {true, false}) {
          out.push_back({MoveKind::R2_add, {p, q}, sign, true, parallel});
          if (p == q) out.push_back({MoveKind::R2_add, {p, q}, sign, false, parallel});
        }
  return out;
}

/// A move on apply_rmove(d, m) that restores d (up to rotation, reversal and
/// renumbering), if one exists.
inline std::optional<RMove> inverse_move(const KnotDiagram& d, const RMove& m) {
  const KnotDiagram after = apply_rmove(d, m);
  const std::string target = d.canonical();
  const int want = -crossing_delta(m.kind);
  for (const auto& cand : enumerate_applicable_moves(after)) {
    if (crossing_delta(cand.kind) != want) continue;
    if (apply_rmove(after, cand).canonical() == target) return cand;
  }
  return std::nullopt;
}

inline int writhe(const KnotDiagram& d) {
  int w = 0;
  for (const auto& s : d.code())
    if (s.over) w += s.sign;
  return w;
}

/// Arcs run from one undercrossing to the next. For each crossing: the arc
/// passing over it and the arcs entering and leaving underneath.
struct ArcStructure {
  std::size_t arcs = 1;
  struct Incidence {
    int crossing;
    std::size_t over, under_in, under_out;
  };
  std::vector<Incidence> crossings;
};

inline ArcStructure arc_structure(const KnotDiagram& d) {
  ArcStructure s;
  const auto& code = d.code();
  std::vector<std::size_t> unders;
  for (std::size_t i = 0; i < code.size(); ++i)
    if (!code[i].over) unders.push_back(i);
  if (unders.empty()) return s;
  const std::size_t m = unders.size();
  s.arcs = m;
  // Arc k leaves the k-th undercrossing; positions before the first
  // undercrossing belong to the arc leaving the last one.
  auto arc_at = [&](std::size_t pos) {
    std::size_t k = m - 1;
    for (std::size_t i = 0; i < m; ++i)
      if (unders[i] < pos) k = i;
    return k;
  };
  for (std::size_t k = 0; k < m; ++k) {
    const GaussSymbol& u = code[unders[k]];
    const std::size_t over_pos = d.position(u.crossing, true);
    s.crossings.push_back({u.crossing, arc_at(over_pos), (k + m - 1) % m, k});
  }
  return s;
}

/// Some 3-coloring of the arcs uses at least two colors and shows, at every
/// crossing, one color or all three. Decided by backtracking search.
inline bool is_tricolorable(const KnotDiagram& d) {
  const ArcStructure s = arc_structure(d);
  if (d.is_empty()) return false;
  // Constraints become checkable once their largest arc is colored.
  std::vector<std::vector<const ArcStructure::Incidence*>> due(s.arcs);
  for (const auto& c : s.crossings)
    due[std::max({c.over, c.under_in, c.under_out})].push_back(&c);

  std::vector<int> color(s.arcs, 0);
  std::function<bool(std::size_t)> search = [&](std::size_t arc) -> bool {
    if (arc == s.arcs)
      return std::any_of(color.begin(), color.end(), [&](int c) { return c != color[0]; });
    // Shifting every color by one preserves validity, so arc 0 stays 0.
    for (int c = 0; c < (arc == 0 ? 1 : 3); ++c) {
      color[arc] = c;
      bool ok = std::all_of(due[arc].begin(), due[arc].end(), [&](const auto* x) {
        return (color[x->over] + color[x->under_in] + color[x->under_out]) % 3 == 0;
      });
      if (ok && search(arc + 1)) return true;
    }
    return false;
  };
  return search(0);
}

/// Lackenby's upper bound (236 c)^11 on the number of moves needed to unknot
/// a c-crossing diagram of the unknot. Far too large to search.
inline Integer lackenby_bound(std::size_t crossings) {
  return boost::multiprecision::pow(Integer(236) * crossings, 11);
}

enum class ReduceStatus { Reduced, Obstructed, Exhausted, BudgetExceeded };

constexpr std::string_view status_name(ReduceStatus s) noexcept {
  switch (s) {
    case ReduceStatus::Reduced: return "Reduced";
    case ReduceStatus::Obstructed: return "Obstructed";
    case ReduceStatus::Exhausted: return "Exhausted";
    case ReduceStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

struct ReduceOptions {
  /// Stop at once when the start diagram is 3-colorable: the unknot is not,
  /// and moves preserve colorability, so no sequence exists.
  bool invariant_pruning = true;
  std::size_t max_states = 1'000'000;
};

struct Reduction {
  ReduceStatus status = ReduceStatus::Exhausted;
  std::optional<std::vector<RMove>> moves;
  std::size_t states = 0;
};

/// Breadth-first search for a shortest move sequence to the empty diagram.
/// States above max_crossings are never entered, and a state at depth k
/// with c crossings is dropped when k + ceil(c/2) > max_moves, since each
/// move removes at most two crossings.
inline Reduction search_unknot(const KnotDiagram& d, std::size_t max_moves,
                               std::size_t max_crossings, const ReduceOptions& opt = {}) {
  Reduction r;
  if (d.is_empty()) {
    r.status = ReduceStatus::Reduced;
    r.moves = std::vector<RMove>{};
    r.states = 1;
    return r;
  }
  if (opt.invariant_pruning && is_tricolorable(d)) {
    r.status = ReduceStatus::Obstructed;
    r.states = 1;
    return r;
  }

  struct State {
    KnotDiagram diagram;
    std::size_t parent;
    RMove move;
  };
  std::vector<State> states{{d, 0, {}}};
  std::unordered_map<std::string, std::size_t> seen{{d.canonical(), 0}};
  auto path_to = [&](std::size_t idx) {
    std::vector<RMove> moves;
    for (; idx != 0; idx = states[idx].parent) moves.push_back(states[idx].move);
    std::reverse(moves.begin(), moves.end());
    return moves;
  };

  std::vector<std::size_t> frontier{0};
  for (std::size_t depth = 0; depth < max_moves && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      const KnotDiagram current = states[idx].diagram;
      const long c0 = static_cast<long>(current.crossing_count());
      for (const RMove& m : enumerate_applicable_moves(current)) {
        const long c = c0 + crossing_delta(m.kind);
        if (c > static_cast<long>(max_crossings)) continue;
        if (depth + 1 + static_cast<std::size_t>((c + 1) / 2) > max_moves) continue;
        KnotDiagram out = apply_rmove(current, m);
        auto [it, fresh] = seen.emplace(out.canonical(), states.size());
        if (!fresh) continue;
        states.push_back({std::move(out), idx, m});
        if (c == 0) {
          r.status = ReduceStatus::Reduced;
          r.moves = path_to(states.size() - 1);
          r.states = states.size();
          return r;
        }
        if (states.size() > opt.max_states) {
          r.status = ReduceStatus::BudgetExceeded;
          r.states = states.size();
          return r;
        }
        next.push_back(states.size() - 1);
      }
    }
    frontier = std::move(next);
  }
  r.status = ReduceStatus::Exhausted;
  r.states = states.size();
  return r;
}

/// Shortest unknotting sequence within the bounds, if the search finds one.
/// Absence alone does not prove the diagram knotted.
inline std::optional<std::vector<RMove>> reduce_to_unknot(const KnotDiagram& d,
                                                          std::size_t max_moves,
                                                          std::size_t max_crossings) {
  return search_unknot(d, max_moves, max_crossings).moves;
}

/// Identifying two points of the strand would need an intersection, and a
/// diagram only has crossings, each with an over and an under passage.
/// Always throws IncompatibleWithKnotTheory.
[[noreturn]] inline void attempt_collapse(const KnotDiagram& d, std::size_t arc_a,
                                          std::size_t arc_b) {
  throw Error(ErrorKind::IncompatibleWithKnotTheory,
              "identifying arcs " + std::to_string(arc_a) + " and " + std::to_string(arc_b) +
                  " of a " + std::to_string(d.crossing_count()) +
                  "-crossing diagram needs a self-intersection; Reidemeister moves only produce "
                  "crossings, each with an over and an under strand",
              {std::to_string(arc_a), std::to_string(arc_b)});
}

}  // namespace synspace
