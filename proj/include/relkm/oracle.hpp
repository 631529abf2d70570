// Copyright 2026 The relkm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Slow reference implementations for tests and acceptance runs. Everything
// here evaluates the defining formulas in maximally literal form — explicit
// difference vectors, explicit centroids, exhaustive enumeration — with none
// of the optimizations used on the production path, so a bug there cannot be
// replicated here. Not included by the umbrella header; not for use in
// production code paths.

#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relkm/core.hpp"
#include "relkm/types.hpp"

namespace relkm::oracle {

/// Explicit vectors p_1..p_n in R^d, for building Euclidean instances with
/// known geometry.
struct PointCloud {
  std::vector<std::vector<double>> points;
};

/// The squared distance matrix derived from explicit vectors:
/// A[i][j] = |p_i - p_j|^2.
inline SquaredDistanceMatrix squared_distance_matrix(const PointCloud& cloud) {
  const std::size_t n = cloud.points.size();
  if (n == 0) throw std::invalid_argument("squared_distance_matrix: empty point cloud");
  const std::size_t dim = cloud.points[0].size();
  for (const auto& p : cloud.points) {
    if (p.size() != dim) throw std::invalid_argument("squared_distance_matrix: ragged dimensions");
  }
  SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double diff = cloud.points[i][k] - cloud.points[j][k];
        s += diff * diff;
      }
      a(i, j) = s;
      a(j, i) = s;
    }
  }
  return SquaredDistanceMatrix(std::move(a));
}

/// Squared centroid distances straight from the definition: materialize
/// v_ij = (1/|S_j|) sum_{k in S_j} e_k - e_i and evaluate the quadratic form
/// q_ij = -1/2 v_ij^T A v_ij in O(n^2) per entry. Empty clusters yield
/// +infinity.
inline CentroidDistanceTable naive_centroid_distances(const SquaredDistanceMatrix& a,
                                                      const Clustering& c) {
  const std::size_t n = a.size();
  if (c.size() != n) {
    throw std::invalid_argument("naive_centroid_distances: matrix/clustering size mismatch");
  }
  const std::size_t clusters = c.cluster_count();
  CentroidDistanceTable q(n, clusters);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < clusters; ++j) {
      const auto& members = c.members()[j];
      if (members.empty()) continue;
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t k : members) v[k] += 1.0 / static_cast<double>(members.size());
      v[i] -= 1.0;
      double quad = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) quad += v[r] * a(r, s) * v[s];
      }
      q(i, j) = -0.5 * quad;
    }
  }
  return q;
}

inline double naive_value(const SquaredDistanceMatrix& a, const Clustering& c) {
  const CentroidDistanceTable q = naive_centroid_distances(a, c);
  double value = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) value += q(i, c.labels()[i]);
  return value;
}

/// Exhaustive minimum over all cluster_count^n label assignments. Ties break
/// to the lexicographically smallest label sequence. Refuses n > 10.
inline std::pair<Clustering, double> brute_force_optimum(const SquaredDistanceMatrix& a,
                                                         std::size_t cluster_count) {
  const std::size_t n = a.size();
  if (n > 10) {
    throw std::invalid_argument("brute_force_optimum: n = " + std::to_string(n) +
                                " exceeds the enumeration bound of 10");
  }
  if (cluster_count == 0 || cluster_count > n) {
    throw std::invalid_argument("brute_force_optimum: cluster count must be in [1, n]");
  }
  std::vector<std::size_t> labels(n, 0);
  std::vector<std::size_t> best_labels;
  double best_value = 0.0;
  bool have_best = false;
  for (;;) {
    const double value = naive_value(a, Clustering(labels, cluster_count));
    if (!have_best || value < best_value) {
      best_labels = labels;
      best_value = value;
      have_best = true;
    }
    // odometer, last position fastest: enumerates in lexicographic order
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++labels[pos] < cluster_count) break;
      labels[pos] = 0;
      if (pos == 0) return {Clustering(std::move(best_labels), cluster_count), best_value};
    }
  }
}

struct LloydStep {
  std::vector<std::size_t> labels;
  double value;
};

namespace detail {

inline std::vector<std::vector<double>> centroids_of(const PointCloud& cloud, const Clustering& c) {
  const std::size_t dim = cloud.points[0].size();
  std::vector<std::vector<double>> centers(c.cluster_count());
  for (std::size_t j = 0; j < c.cluster_count(); ++j) {
    const auto& members = c.members()[j];
    if (members.empty()) continue;
    std::vector<double> mean(dim, 0.0);
    for (std::size_t k : members) {
      for (std::size_t r = 0; r < dim; ++r) mean[r] += cloud.points[k][r];
    }
    for (std::size_t r = 0; r < dim; ++r) mean[r] /= static_cast<double>(members.size());
    centers[j] = std::move(mean);
  }
  return centers;
}

inline double squared_distance(const std::vector<double>& p, const std::vector<double>& z) {
  double s = 0.0;
  for (std::size_t r = 0; r < p.size(); ++r) {
    const double diff = p[r] - z[r];
    s += diff * diff;
  }
  return s;
}

inline double lloyd_value(const PointCloud& cloud, const Clustering& c,
                          const std::vector<std::vector<double>>& centers) {
  double value = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    value += squared_distance(cloud.points[i], centers[c.labels()[i]]);
  }
  return value;
}

}  // namespace detail

/// Classical Lloyd iteration on explicit vectors, with the same stop rule as
/// run_single: arithmetic-mean centroids, nearest-centroid reassignment with
/// ties to the lowest index, undo and stop when the value fails to decrease.
/// Returns the per-iteration trace (entry 0 is the initial state) so a run on
/// the derived squared distance matrix can be compared step by step.
inline std::vector<LloydStep> lloyd_reference(const PointCloud& cloud, const Clustering& initial,
                                              std::size_t max_iterations = 1000) {
  if (cloud.points.size() != initial.size()) {
    throw std::invalid_argument("lloyd_reference: cloud/clustering size mismatch");
  }
  if (max_iterations == 0) throw std::invalid_argument("lloyd_reference: max_iterations must be >= 1");

  Clustering current = initial;
  auto centers = detail::centroids_of(cloud, current);
  double value = detail::lloyd_value(cloud, current, centers);

  std::vector<LloydStep> trace;
  trace.push_back({current.labels(), value});

  for (std::size_t iterations = 0; iterations < max_iterations; ++iterations) {
    std::vector<std::size_t> labels(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      double best = 0.0;
      std::size_t best_j = current.cluster_count();
      for (std::size_t j = 0; j < current.cluster_count(); ++j) {
        if (centers[j].empty()) continue;  // dead cluster, never wins
        const double dist = detail::squared_distance(cloud.points[i], centers[j]);
        if (best_j == current.cluster_count() || dist < best) {
          best = dist;
          best_j = j;
        }
      }
      labels[i] = best_j;
    }
    Clustering next(std::move(labels), current.cluster_count());
    auto next_centers = detail::centroids_of(cloud, next);
    const double next_value = detail::lloyd_value(cloud, next, next_centers);
    if (!(next_value < value)) break;  // undo and stop
    current = std::move(next);
    centers = std::move(next_centers);
    value = next_value;
    trace.push_back({current.labels(), value});
  }
  return trace;
}

}  // namespace relkm::oracle
