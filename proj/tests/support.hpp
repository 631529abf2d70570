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

// Shared test utilities: deterministic instance generators and a Cholesky
// positive-definiteness probe used as an eigensolver-independent oracle.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relkm/io.hpp"
#include "relkm/oracle.hpp"
#include "relkm/types.hpp"

namespace testsupport {

// Symmetric, zero-diagonal, nonnegative matrix of "squared distances" with
// entries up to max_value. Generic instances of this kind are almost never
// Euclidean-embeddable.
inline relkm::SquaredDistanceMatrix random_squared_matrix(std::size_t n, std::uint64_t seed,
                                                          double max_value = 100.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, max_value);
  relkm::SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = dist(rng);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return relkm::SquaredDistanceMatrix(std::move(a));
}

// A squared distance matrix with a planted triangle-inequality violation:
// two unit distances and one much larger third side.
inline relkm::SquaredDistanceMatrix triangle_violator(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(1.0, 2.0);
  relkm::SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = dist(rng);
      a(i, j) = d * d;
      a(j, i) = d * d;
    }
  }
  // plant d(0,1) = d(0,2) = 1, d(1,2) = 3
  a(0, 1) = a(1, 0) = 1.0;
  a(0, 2) = a(2, 0) = 1.0;
  a(1, 2) = a(2, 1) = 9.0;
  return relkm::SquaredDistanceMatrix(std::move(a));
}

inline relkm::oracle::PointCloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed,
                                              double span = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-span, span);
  relkm::oracle::PointCloud cloud;
  cloud.points.resize(n, std::vector<double>(dim));
  for (auto& p : cloud.points) {
    for (double& x : p) x = dist(rng);
  }
  return cloud;
}

inline relkm::Clustering random_labels(std::size_t n, std::size_t clusters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dist(0, clusters - 1);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = dist(rng);
  return relkm::Clustering(std::move(labels), clusters);
}

// Plain Cholesky factorization attempt: succeeds exactly when the matrix is
// positive definite. Independent of the Jacobi eigensolver under test.
inline bool cholesky_positive_definite(const relkm::SquareMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (s <= 0.0) return false;
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  }
  return true;
}

inline relkm::SquareMatrix shifted(const relkm::SquareMatrix& m, double shift) {
  relkm::SquareMatrix out = m;
  for (std::size_t i = 0; i < m.size(); ++i) out(i, i) += shift;
  return out;
}

// Render a dataset in the input file format (names, "//", semicolon matrix).
inline std::string render_input(const std::vector<std::string>& names,
                                const relkm::SquareMatrix& distances) {
  std::ostringstream out;
  for (const auto& name : names) out << name << '\n';
  out << "//\n";
  for (std::size_t i = 0; i < distances.size(); ++i) {
    for (std::size_t j = 0; j < distances.size(); ++j) {
      if (j > 0) out << ';';
      out << relkm::format_double(distances(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace testsupport
