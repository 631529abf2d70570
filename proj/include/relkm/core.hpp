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

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relkm/types.hpp"

namespace relkm {

namespace detail {

// Sum of q[i][labels[i]] in ascending point order.
inline double value_from_table(const CentroidDistanceTable& q, const Clustering& c) {
  double value = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) value += q(i, c.labels()[i]);
  return value;
}

}  // namespace detail

/// Squared centroid distances q[i][j] for every point i against every cluster
/// j of `c`, computed as
///
///     q[i][j] = -(1 / 2|S_j|^2) * sum_{a,b in S_j} A[a][b]
///               + (1 / |S_j|)   * sum_{k in S_j} A[i][k]
///
/// The first summand depends only on the cluster and is computed once per
/// cluster; the whole table costs O(n^2 + nN) arithmetic. Columns of empty
/// clusters hold +infinity. All sums accumulate in ascending index order so
/// results are reproducible across runs and thread counts.
inline CentroidDistanceTable squared_centroid_distances(const SquaredDistanceMatrix& a,
                                                        const Clustering& c) {
  const std::size_t n = a.size();
  if (c.size() != n) {
    throw std::invalid_argument("squared_centroid_distances: matrix is " + std::to_string(n) +
                                " points but clustering has " + std::to_string(c.size()));
  }
  const std::size_t clusters = c.cluster_count();
  CentroidDistanceTable q(n, clusters);

  // Per-cluster base term -(1/2m^2) * sum_{a,b in S_j} A[a][b].
  std::vector<double> base(clusters, CentroidDistanceTable::kEmptyCluster);
  std::vector<double> inv_size(clusters, 0.0);
  for (std::size_t j = 0; j < clusters; ++j) {
    const auto& members = c.members()[j];
    const std::size_t m = members.size();
    if (m == 0) continue;
    double block = 0.0;
    for (std::size_t ma : members) {
      const std::span<const double> row = a.row(ma);
      for (std::size_t mb : members) block += row[mb];
    }
    base[j] = -block / (2.0 * static_cast<double>(m) * static_cast<double>(m));
    inv_size[j] = 1.0 / static_cast<double>(m);
  }

  // Per-point member sums, bucketed by label in one ascending pass over row i.
  const std::vector<std::size_t>& labels = c.labels();
  std::vector<double> row_sum(clusters);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(row_sum.begin(), row_sum.end(), 0.0);
    const std::span<const double> row = a.row(i);
    for (std::size_t k = 0; k < n; ++k) row_sum[labels[k]] += row[k];
    for (std::size_t j = 0; j < clusters; ++j) {
      if (inv_size[j] != 0.0) q(i, j) = base[j] + row_sum[j] * inv_size[j];
    }
  }
  return q;
}

/// Value of a clustering: the sum over all points of the squared centroid
/// distance to the point's own cluster. This is the objective being minimized.
inline double clustering_value(const SquaredDistanceMatrix& a, const Clustering& c) {
  return detail::value_from_table(squared_centroid_distances(a, c), c);
}

/// Move every point to the cluster with the smallest squared centroid
/// distance in `q`. Ties break toward the lowest cluster index; empty
/// clusters (infinite entries) never win. Throws std::logic_error if a row
/// has no finite entry, which cannot happen for a table built from a valid
/// clustering.
inline Clustering reassign(const CentroidDistanceTable& q) {
  const std::size_t n = q.point_count();
  const std::size_t clusters = q.cluster_count();
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = CentroidDistanceTable::kEmptyCluster;
    std::size_t best_j = clusters;
    for (std::size_t j = 0; j < clusters; ++j) {
      if (q(i, j) < best) {
        best = q(i, j);
        best_j = j;
      }
    }
    if (best_j == clusters) {
      throw std::logic_error("reassign: no nonempty cluster for point " + std::to_string(i));
    }
    labels[i] = best_j;
  }
  return Clustering(std::move(labels), clusters);
}

/// One accepted state of the descent: the labels after a reassignment that
/// lowered the value, and that value. Entry 0 of a trace is the initial state.
struct IterationState {
  std::vector<std::size_t> labels;
  double value;
};

struct SingleRunResult {
  Clustering clustering;
  double value;
  std::size_t iterations;  // reassignments attempted, accepted or not
  bool truncated;          // stopped by the iteration cap, not by convergence
  std::vector<IterationState> trace;
};

/// Run the relational k-means descent from `initial` to a local optimum:
/// repeatedly reassign every point to its nearest centroid and keep the new
/// clustering only if the value strictly decreased; otherwise undo the
/// reassignment and stop. Comparisons are exact, with no epsilon. The value
/// sequence over accepted iterations is strictly decreasing, so the returned
/// value never exceeds the initial clustering's value and the loop always
/// terminates; `max_iterations` is a safety cap against floating-point
/// cycling and marks the result truncated when hit.
inline SingleRunResult run_single(const SquaredDistanceMatrix& a, Clustering initial,
                                  std::size_t max_iterations = 1000) {
  if (max_iterations == 0) throw std::invalid_argument("run_single: max_iterations must be >= 1");

  Clustering current = std::move(initial);
  CentroidDistanceTable table = squared_centroid_distances(a, current);
  double value = detail::value_from_table(table, current);

  std::vector<IterationState> trace;
  trace.push_back({current.labels(), value});

  std::size_t iterations = 0;
  bool truncated = false;
  for (;;) {
    if (iterations == max_iterations) {
      truncated = true;
      break;
    }
    Clustering next = reassign(table);
    ++iterations;
    CentroidDistanceTable next_table = squared_centroid_distances(a, next);
    const double next_value = detail::value_from_table(next_table, next);
    if (!(next_value < value)) break;  // undo the reassignment and stop
    current = std::move(next);
    value = next_value;
    table = std::move(next_table);
    trace.push_back({current.labels(), value});
  }
  return {std::move(current), value, iterations, truncated, std::move(trace)};
}

}  // namespace relkm
