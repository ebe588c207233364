// Copyright 2026 The synspace Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "synspace/dendrogram.hpp"
#include "synspace/space.hpp"

namespace synspace::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// p/q with 0 <= p <= max_num and 1 <= q <= max_den.
inline Rational random_rational(Rng& rng, int max_num, int max_den) {
  return Rational(static_cast<int>(uniform(rng, 0, max_num)), static_cast<int>(uniform(rng, 1, max_den)));
}

inline std::vector<PointId> labels(std::size_t n, const std::string& prefix = "x") {
  std::vector<PointId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Symmetric, zero diagonal, otherwise arbitrary (zeros included).
inline DistanceMatrix random_matrix(Rng& rng, std::size_t n) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = random_rational(rng, 24, 6);
  return DistanceMatrix(labels(n), d);
}

/// A random dendrogram built by repeatedly joining 2 or 3 clusters at a
/// height above all of their parts, plus the distance matrix recorded while
/// joining (every cross pair gets the join height).
struct RandomTree {
  Dendrogram tree;
  DistanceMatrix distances;
};

inline RandomTree random_tree(Rng& rng, std::size_t leaves) {
  struct Cluster {
    Dendrogram tree;
    Rational height;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> clusters;
  const std::vector<PointId> names = labels(leaves, "t");
  for (std::size_t i = 0; i < leaves; ++i) clusters.push_back({Dendrogram::leaf(names[i]), 0, {i}});
  std::vector<std::vector<Rational>> d(leaves, std::vector<Rational>(leaves, 0));

  while (clusters.size() > 1) {
    std::shuffle(clusters.begin(), clusters.end(), rng);
    const std::size_t k = std::min<std::size_t>(clusters.size(), uniform(rng, 2, 3));
    Rational floor = 0;
    for (std::size_t i = 0; i < k; ++i) floor = std::max(floor, clusters[i].height);
    const Rational h = floor + Rational(static_cast<int>(uniform(rng, 1, 9)), static_cast<int>(uniform(rng, 1, 4)));
    std::vector<Dendrogram> parts;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t a : clusters[i].members)
        for (std::size_t b : members) d[a][b] = d[b][a] = h;
      members.insert(members.end(), clusters[i].members.begin(), clusters[i].members.end());
      parts.push_back(clusters[i].tree);
    }
    Cluster joined{Dendrogram::join(h, parts), h, members};
    clusters.erase(clusters.begin(), clusters.begin() + static_cast<std::ptrdiff_t>(k));
    clusters.push_back(std::move(joined));
  }
  return {clusters.front().tree, DistanceMatrix(names, d)};
}

/// Brute-force axiom checks over all ordered triples, used as oracles.
inline bool triangle_holds(const DistanceMatrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      for (std::size_t z = 0; z < m.size(); ++z)
        if (m.at(x, z) > m.at(x, y) + m.at(y, z)) return false;
  return true;
}

inline bool ultrametric_holds(const DistanceMatrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      for (std::size_t z = 0; z < m.size(); ++z)
        if (m.at(x, z) > std::max(m.at(x, y), m.at(y, z))) return false;
  return true;
}

inline bool positive_off_diagonal(const DistanceMatrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (x != y && m.at(x, y) == 0) return false;
  return true;
}

}  // namespace synspace::testing
