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

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relkm {

/// Dense square matrix of doubles, row-major. Plain storage with no
/// structural guarantees; see SquaredDistanceMatrix for the validated kind.
class SquareMatrix {
 public:
  SquareMatrix() = default;

  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  SquareMatrix(std::size_t n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_) {
      throw std::invalid_argument("SquareMatrix: entry count does not match dimension");
    }
  }

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  const std::vector<double>& data() const { return a_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// The matrix A with A[i][j] = f(p_i, p_j)^2 for some symmetric distance
/// function f vanishing on the diagonal. Construction validates symmetry,
/// a zero diagonal and nonnegativity; instances are immutable afterwards.
class SquaredDistanceMatrix {
 public:
  explicit SquaredDistanceMatrix(SquareMatrix entries) : m_(std::move(entries)) {
    const std::size_t n = m_.size();
    if (n == 0) throw std::invalid_argument("SquaredDistanceMatrix: empty matrix");
    for (std::size_t i = 0; i < n; ++i) {
      if (m_(i, i) != 0.0) {
        throw std::invalid_argument("SquaredDistanceMatrix: nonzero diagonal at (" +
                                    std::to_string(i) + "," + std::to_string(i) + ")");
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!std::isfinite(m_(i, j)) || m_(i, j) < 0.0) {
          throw std::invalid_argument("SquaredDistanceMatrix: negative or non-finite entry at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (m_(i, j) != m_(j, i)) {
          throw std::invalid_argument("SquaredDistanceMatrix: asymmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
  }

  static SquaredDistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw std::invalid_argument("SquaredDistanceMatrix: ragged rows");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return SquaredDistanceMatrix(std::move(m));
  }

  std::size_t size() const { return m_.size(); }

  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  std::span<const double> row(std::size_t i) const { return m_.row(i); }

  const SquareMatrix& entries() const { return m_; }

  /// Largest entry; entries are nonnegative so this is also max |A|.
  double max_entry() const { return m_.max_abs(); }

 private:
  SquareMatrix m_;
};

/// Assignment of n points to cluster indices in [0, cluster_count), plus the
/// derived per-cluster membership lists (each ascending). Empty clusters are
/// legal; a cluster that loses all points during iteration simply stays empty.
class Clustering {
 public:
  Clustering(std::vector<std::size_t> labels, std::size_t cluster_count)
      : labels_(std::move(labels)), cluster_count_(cluster_count) {
    if (labels_.empty()) throw std::invalid_argument("Clustering: no points");
    if (cluster_count_ == 0) throw std::invalid_argument("Clustering: cluster count must be >= 1");
    members_.resize(cluster_count_);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] >= cluster_count_) {
        throw std::invalid_argument("Clustering: label " + std::to_string(labels_[i]) +
                                    " out of range at point " + std::to_string(i));
      }
      members_[labels_[i]].push_back(i);
    }
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t cluster_count() const { return cluster_count_; }

  const std::vector<std::size_t>& labels() const { return labels_; }
  const std::vector<std::vector<std::size_t>>& members() const { return members_; }

  std::size_t cluster_size(std::size_t j) const { return members_[j].size(); }

  bool operator==(const Clustering& other) const {
    return cluster_count_ == other.cluster_count_ && labels_ == other.labels_;
  }

 private:
  std::vector<std::size_t> labels_;
  std::size_t cluster_count_;
  std::vector<std::vector<std::size_t>> members_;
};

/// n x N table of squared centroid distances q[i][j] for one iteration.
/// Entries for empty clusters hold +infinity and never win a reassignment.
/// For non-Euclidean inputs finite entries may be negative.
class CentroidDistanceTable {
 public:
  static constexpr double kEmptyCluster = std::numeric_limits<double>::infinity();

  CentroidDistanceTable(std::size_t point_count, std::size_t cluster_count)
      : n_(point_count), clusters_(cluster_count), q_(point_count * cluster_count, kEmptyCluster) {
    if (n_ == 0 || clusters_ == 0) {
      throw std::invalid_argument("CentroidDistanceTable: empty dimensions");
    }
  }

  std::size_t point_count() const { return n_; }
  std::size_t cluster_count() const { return clusters_; }

  double& operator()(std::size_t i, std::size_t j) { return q_[i * clusters_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return q_[i * clusters_ + j]; }

 private:
  std::size_t n_;
  std::size_t clusters_;
  std::vector<double> q_;
};

}  // namespace relkm
