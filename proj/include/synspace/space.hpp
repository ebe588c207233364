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

// Finite distance spaces: axiom classification, triangle census, balls,
// boundaries, metric closure and stepwise metrization of a ground-state
// ultrametric field.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "synspace/error.hpp"
#include "synspace/rational.hpp"

namespace synspace {

using PointId = std::string;

/// Symmetric, zero-diagonal, nonnegative distance function over labeled
/// points. The triangle and ultrametric inequalities are *not* invariants;
/// classify_space reports on them.
class DistanceMatrix {
 public:
  DistanceMatrix(std::vector<PointId> points,
                 const std::vector<std::vector<Rational>>& rows)
      : points_(std::move(points)) {
    const std::size_t n = points_.size();
    if (n == 0) throw Error(ErrorKind::EmptyField, "a space needs at least one point");
    for (std::size_t i = 0; i < n; ++i) {
      if (points_[i].empty())
        throw Error(ErrorKind::MalformedMatrix, "point " + std::to_string(i) + " has an empty label");
      if (!index_.emplace(points_[i], i).second)
        throw Error(ErrorKind::MalformedMatrix, "duplicate point '" + points_[i] + "'");
    }
    if (rows.size() != n)
      throw Error(ErrorKind::MalformedMatrix, "expected " + std::to_string(n) + " rows, got " +
                                                  std::to_string(rows.size()));
    d_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n)
        throw Error(ErrorKind::MalformedMatrix, "row " + std::to_string(i) + " ('" + points_[i] +
                                                    "') has " + std::to_string(rows[i].size()) +
                                                    " entries, expected " + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) d_.push_back(rows[i][j]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& v = at(i, j);
        if (v < 0)
          throw Error(ErrorKind::MalformedMatrix,
                      "negative entry " + to_string(v) + " at " + cell(i, j), {points_[i], points_[j]});
        if (i == j && v != 0)
          throw Error(ErrorKind::MalformedMatrix,
                      "nonzero diagonal entry " + to_string(v) + " at " + cell(i, j), {points_[i]});
        if (j > i && v != at(j, i))
          throw Error(ErrorKind::MalformedMatrix,
                      "asymmetric entry at " + cell(j, i) + ": " + to_string(at(j, i)) +
                          " differs from " + cell(i, j) + " = " + to_string(v),
                      {points_[i], points_[j]});
      }
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<PointId>& points() const noexcept { return points_; }

  std::optional<std::size_t> index_of(const PointId& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(const PointId& p) const {
    auto i = index_of(p);
    if (!i) throw Error(ErrorKind::UnknownPoint, "no point '" + p + "' in the space", {p});
    return *i;
  }

  const Rational& at(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  const Rational& operator()(const PointId& x, const PointId& y) const {
    return at(require(x), require(y));
  }

  std::vector<std::vector<Rational>> rows() const {
    std::vector<std::vector<Rational>> out(size());
    for (std::size_t i = 0; i < size(); ++i)
      out[i].assign(d_.begin() + static_cast<std::ptrdiff_t>(i * size()),
                    d_.begin() + static_cast<std::ptrdiff_t>((i + 1) * size()));
    return out;
  }

  /// Copy with d(i,j) = d(j,i) = value. No closure is applied.
  DistanceMatrix with_entry(std::size_t i, std::size_t j, const Rational& value) const {
    if (value < 0)
      throw Error(ErrorKind::NegativeDistance, "distance " + to_string(value) + " is negative");
    if (i == j && value != 0)
      throw Error(ErrorKind::SamePoint, "the diagonal is fixed at 0", {points_[i]});
    DistanceMatrix out = *this;
    out.d_[i * size() + j] = value;
    out.d_[j * size() + i] = value;
    return out;
  }

  /// Same labeled function with points listed in `order` (a permutation).
  DistanceMatrix reordered(std::span<const PointId> order) const {
    if (order.size() != size())
      throw Error(ErrorKind::MalformedMatrix, "reordering must list every point exactly once");
    std::vector<std::size_t> idx;
    for (const auto& p : order) idx.push_back(require(p));
    std::vector<std::vector<Rational>> r(size(), std::vector<Rational>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) r[i][j] = at(idx[i], idx[j]);
    return DistanceMatrix({order.begin(), order.end()}, r);
  }

  bool operator==(const DistanceMatrix& o) const {
    return points_ == o.points_ && d_ == o.d_;
  }

 private:
  std::string cell(std::size_t i, std::size_t j) const {
    return "d[" + std::to_string(i) + "][" + std::to_string(j) + "] ('" + points_[i] + "','" +
           points_[j] + "')";
  }

  std::vector<PointId> points_;
  std::unordered_map<PointId, std::size_t> index_;
  std::vector<Rational> d_;
};

/// Equal as labeled distance functions, ignoring the order points are listed in.
inline bool same_space(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a.points())
    if (!b.index_of(p)) return false;
  return a == b.reordered(a.points());
}

enum class SpaceKind { NotSemimetric, Semimetric, Metric, Ultrametric };

constexpr std::string_view kind_name(SpaceKind k) noexcept {
  switch (k) {
    case SpaceKind::NotSemimetric: return "NotSemimetric";
    case SpaceKind::Semimetric: return "Semimetric";
    case SpaceKind::Metric: return "Metric";
    case SpaceKind::Ultrametric: return "Ultrametric";
  }
  return "Unknown";
}

enum class Axiom { Positivity, Triangle, Ultrametric };

constexpr std::string_view axiom_name(Axiom a) noexcept {
  switch (a) {
    case Axiom::Positivity: return "positivity";
    case Axiom::Triangle: return "triangle";
    case Axiom::Ultrametric: return "ultrametric";
  }
  return "unknown";
}

/// First violated axiom. For the inequalities `points` is (x, y, z) with
/// d(x,z) exceeding the bound through y; for positivity it is the pair.
struct Violation {
  Axiom axiom;
  std::vector<PointId> points;
  std::string detail;
};

struct SpaceClass {
  SpaceKind kind = SpaceKind::Ultrametric;
  std::optional<Violation> witness;

  /// Ultrametric implies Metric implies Semimetric.
  bool at_least(SpaceKind k) const noexcept {
    return static_cast<int>(kind) >= static_cast<int>(k);
  }
};

inline SpaceClass classify_space(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  const auto& P = m.points();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) == 0)
        return {SpaceKind::Semimetric,
                Violation{Axiom::Positivity, {P[i], P[j]},
                          "d(" + P[i] + "," + P[j] + ") = 0 for distinct points"}};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        Rational via = m.at(i, j) + m.at(j, k);
        if (m.at(i, k) > via)
          return {SpaceKind::Semimetric,
                  Violation{Axiom::Triangle, {P[i], P[j], P[k]},
                            "d(" + P[i] + "," + P[k] + ") = " + to_string(m.at(i, k)) + " > d(" +
                                P[i] + "," + P[j] + ") + d(" + P[j] + "," + P[k] + ") = " +
                                to_string(via)}};
      }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const Rational& top = std::max(m.at(i, j), m.at(j, k));
        if (m.at(i, k) > top)
          return {SpaceKind::Metric,
                  Violation{Axiom::Ultrametric, {P[i], P[j], P[k]},
                            "d(" + P[i] + "," + P[k] + ") = " + to_string(m.at(i, k)) +
                                " > max(d(" + P[i] + "," + P[j] + "), d(" + P[j] + "," + P[k] +
                                ")) = " + to_string(top)}};
      }
  return {SpaceKind::Ultrametric, std::nullopt};
}

struct TriangleCensus {
  std::size_t equilateral = 0;
  std::size_t isosceles_top_two_equal = 0;
  std::size_t other = 0;
  std::size_t total = 0;
};

inline TriangleCensus triangle_census(const DistanceMatrix& m) {
  TriangleCensus c;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<Rational, 3> s{m.at(i, j), m.at(j, k), m.at(i, k)};
        std::sort(s.begin(), s.end());
        ++c.total;
        if (s[0] == s[2])
          ++c.equilateral;
        else if (s[1] == s[2])
          ++c.isosceles_top_two_equal;
        else
          ++c.other;
      }
  return c;
}

struct NeighborhoodSpec {
  PointId center;
  Rational radius;
  bool closed = true;
};

/// Ball around spec.center, closed (<=) or open (<). Points in matrix order.
inline std::vector<PointId> closed_neighborhood(const DistanceMatrix& m,
                                                const NeighborhoodSpec& spec) {
  if (spec.radius < 0)
    throw Error(ErrorKind::NegativeDistance, "radius " + to_string(spec.radius) + " is negative");
  const std::size_t c = m.require(spec.center);
  std::vector<PointId> out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const Rational& d = m.at(c, j);
    if (spec.closed ? d <= spec.radius : d < spec.radius) out.push_back(m.points()[j]);
  }
  return out;
}

/// Largest candidate radius r > 0 (candidates: half of every matrix entry)
/// whose radius-r balls around x and y are disjoint.
inline std::optional<Rational> are_separated(const DistanceMatrix& m, const PointId& x,
                                             const PointId& y, bool closed) {
  const std::size_t xi = m.require(x);
  const std::size_t yi = m.require(y);
  if (xi == yi) throw Error(ErrorKind::SamePoint, "separation needs two distinct points", {x});

  std::set<Rational> candidates;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m.at(i, j) > 0) candidates.insert(m.at(i, j) / 2);

  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    const Rational& r = *it;
    bool disjoint = true;
    for (std::size_t z = 0; z < m.size() && disjoint; ++z) {
      bool in_x = closed ? m.at(xi, z) <= r : m.at(xi, z) < r;
      bool in_y = closed ? m.at(yi, z) <= r : m.at(yi, z) < r;
      disjoint = !(in_x && in_y);
    }
    if (disjoint) return r;
  }
  return std::nullopt;
}

/// Points of `subset` within eps of some point outside it: the discrete edge.
inline std::vector<PointId> boundary(const DistanceMatrix& m, std::span<const PointId> subset,
                                     const Rational& eps) {
  std::vector<bool> inside(m.size(), false);
  for (const auto& p : subset) inside[m.require(p)] = true;
  std::vector<PointId> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!inside[i]) continue;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!inside[j] && m.at(i, j) <= eps) {
        out.push_back(m.points()[i]);
        break;
      }
    }
  }
  return out;
}

/// All-pairs shortest distances (Floyd-Warshall over exact rationals).
inline DistanceMatrix metric_closure(const DistanceMatrix& m) {
  auto r = m.rows();
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = r[i][k] + r[k][j];
        if (via < r[i][j]) r[i][j] = via;
      }
  return DistanceMatrix(m.points(), r);
}

/// Sets d(x,y) = new_d without closing. Used by metrize_step and kept by
/// derivation snapshots as the pre-closure view.
inline DistanceMatrix set_distance(const DistanceMatrix& m, const PointId& x, const PointId& y,
                                   const Rational& new_d) {
  const std::size_t xi = m.require(x);
  const std::size_t yi = m.require(y);
  if (xi == yi) throw Error(ErrorKind::SamePoint, "cannot move a point towards itself", {x});
  if (new_d < 0)
    throw Error(ErrorKind::NegativeDistance, "distance " + to_string(new_d) + " is negative",
                {x, y});
  if (new_d >= m.at(xi, yi))
    throw Error(ErrorKind::NotACloserDistance,
                "d(" + x + "," + y + ") = " + to_string(m.at(xi, yi)) + " is not larger than " +
                    to_string(new_d),
                {x, y});
  return m.with_entry(xi, yi, new_d);
}

/// One metrization step: draw x and y to new_d, then re-close so the
/// triangle inequality holds again. new_d = 0 identifies the two points.
inline DistanceMatrix metrize_step(const DistanceMatrix& m, const PointId& x, const PointId& y,
                                   const Rational& new_d) {
  return metric_closure(set_distance(m, x, y, new_d));
}

/// Constant field: every off-diagonal distance equals k.
inline DistanceMatrix make_ultrametric_field(std::vector<PointId> labels, const Rational& k) {
  if (labels.empty()) throw Error(ErrorKind::EmptyField, "a field needs at least one point");
  if (k <= 0)
    throw Error(ErrorKind::NegativeDistance, "field distance must be positive, got " + to_string(k));
  const std::size_t n = labels.size();
  std::vector<std::vector<Rational>> r(n, std::vector<Rational>(n, k));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 0;
  return DistanceMatrix(std::move(labels), r);
}

/// Points are labeled p1..pn.
inline DistanceMatrix make_ultrametric_field(std::size_t n, const Rational& k) {
  std::vector<PointId> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  return make_ultrametric_field(std::move(labels), k);
}

}  // namespace synspace
