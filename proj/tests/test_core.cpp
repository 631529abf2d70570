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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "relkm/core.hpp"
#include "relkm/oracle.hpp"
#include "support.hpp"

using relkm::CentroidDistanceTable;
using relkm::Clustering;
using relkm::SquaredDistanceMatrix;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const SquaredDistanceMatrix kTwoPoints = SquaredDistanceMatrix::from_rows({{0, 1}, {1, 0}});

// 1-D points {0, 1, 10}, squared pairwise distances.
const SquaredDistanceMatrix kThreePoints =
    SquaredDistanceMatrix::from_rows({{0, 1, 100}, {1, 0, 81}, {100, 81, 0}});

}  // namespace

TEST_CASE("two unit-separated points in one cluster", "[core]") {
  const Clustering both({0, 0}, 1);
  const CentroidDistanceTable q = relkm::squared_centroid_distances(kTwoPoints, both);
  CHECK(q(0, 0) == Catch::Approx(0.25).margin(1e-12));
  CHECK(q(1, 0) == Catch::Approx(0.25).margin(1e-12));
  CHECK(relkm::clustering_value(kTwoPoints, both) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("singleton cluster distance is the matrix entry", "[core]") {
  const auto a = testsupport::random_squared_matrix(7, 11);
  // cluster 1 = {3} singleton, everything else in cluster 0
  std::vector<std::size_t> labels(7, 0);
  labels[3] = 1;
  const Clustering c(labels, 2);
  const CentroidDistanceTable q = relkm::squared_centroid_distances(a, c);
  for (std::size_t i = 0; i < 7; ++i) {
    if (i == 3) continue;
    CHECK(q(i, 1) == Catch::Approx(a(i, 3)).margin(1e-12));
  }
  CHECK(q(3, 1) == 0.0);
}

TEST_CASE("three collinear points, split clustering", "[core]") {
  const Clustering c({0, 1, 1}, 2);
  const CentroidDistanceTable q = relkm::squared_centroid_distances(kThreePoints, c);
  CHECK(q(1, 0) == Catch::Approx(1.0).margin(1e-12));
  // centroid of {1, 10} sits at 5.5, and (5.5 - 1)^2 = 20.25
  CHECK(q(1, 1) == Catch::Approx(20.25).margin(1e-12));

  const Clustering merged({0, 0, 1}, 2);
  CHECK(relkm::clustering_value(kThreePoints, merged) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("all-singleton clustering has value zero", "[core]") {
  const auto a = testsupport::random_squared_matrix(6, 23);
  const Clustering singletons({0, 1, 2, 3, 4, 5}, 6);
  CHECK(relkm::clustering_value(a, singletons) == 0.0);
}

TEST_CASE("empty clusters get infinite entries and never revive", "[core]") {
  const Clustering c({0, 0, 2}, 3);  // cluster 1 empty
  const CentroidDistanceTable q = relkm::squared_centroid_distances(kThreePoints, c);
  for (std::size_t i = 0; i < 3; ++i) CHECK(q(i, 1) == kInf);
  const Clustering next = relkm::reassign(q);
  for (std::size_t label : next.labels()) CHECK(label != 1);
}

TEST_CASE("dimension mismatch is rejected", "[core]") {
  const Clustering c({0, 0}, 1);
  CHECK_THROWS_AS(relkm::squared_centroid_distances(kThreePoints, c), std::invalid_argument);
  CHECK_THROWS_AS(relkm::clustering_value(kThreePoints, c), std::invalid_argument);
}

TEST_CASE("reassign picks the row argmin with deterministic ties", "[core]") {
  CentroidDistanceTable q(3, 2);
  q(0, 0) = 1.0;
  q(0, 1) = 20.25;  // clear winner
  q(1, 0) = 5.0;
  q(1, 1) = 5.0;  // tie -> lowest index
  q(2, 0) = kInf;
  q(2, 1) = 3.0;  // empty cluster never wins
  const Clustering c = relkm::reassign(q);
  CHECK(c.labels() == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("reassign rejects a row with no finite entry", "[core]") {
  CentroidDistanceTable q(2, 2);  // all entries start at +inf
  CHECK_THROWS_AS(relkm::reassign(q), std::logic_error);
}

TEST_CASE("run_single walks the three-point instance to its optimum", "[core]") {
  const auto result = relkm::run_single(kThreePoints, Clustering({0, 1, 1}, 2));
  CHECK(result.clustering.labels() == std::vector<std::size_t>{0, 0, 1});
  CHECK(result.value == Catch::Approx(0.5).margin(1e-12));
  CHECK(result.iterations == 2);  // one improving, one confirming
  CHECK_FALSE(result.truncated);
  REQUIRE(result.trace.size() == 2);
  CHECK(result.trace[0].labels == std::vector<std::size_t>{0, 1, 1});
  CHECK(result.trace[1].labels == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("run_single keeps a locally optimal start", "[core]") {
  const Clustering optimal({0, 0, 1}, 2);
  // reassign is a fixed point here, so the value cannot change
  const auto q = relkm::squared_centroid_distances(kThreePoints, optimal);
  CHECK(relkm::reassign(q) == optimal);
  CHECK(relkm::clustering_value(kThreePoints, relkm::reassign(q)) ==
        relkm::clustering_value(kThreePoints, optimal));

  const auto result = relkm::run_single(kThreePoints, optimal);
  CHECK(result.clustering == optimal);
  CHECK(result.iterations == 1);  // first reassignment fails to improve and is undone
  CHECK_FALSE(result.truncated);
}

TEST_CASE("run_single terminates immediately on all singletons", "[core]") {
  const auto a = testsupport::random_squared_matrix(5, 31);
  const auto result = relkm::run_single(a, Clustering({0, 1, 2, 3, 4}, 5));
  CHECK(result.value == 0.0);
  CHECK(result.iterations == 1);
}

TEST_CASE("run_single reports truncation when the cap bites", "[core]") {
  // From {{0},{1,10}} the descent needs one improving step; a cap of 1
  // accepts it and then stops without the confirming pass.
  const auto result = relkm::run_single(kThreePoints, Clustering({0, 1, 1}, 2), 1);
  CHECK(result.truncated);
  CHECK(result.iterations == 1);
  CHECK(result.clustering.labels() == std::vector<std::size_t>{0, 0, 1});
  CHECK(result.value == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("decomposition matches the literal quadratic form", "[core][property]") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 39;
    const std::size_t clusters = 1 + trial % 6;
    const auto a = testsupport::random_squared_matrix(n, 1000 + trial);
    const auto c = testsupport::random_labels(n, clusters, 2000 + trial);
    const auto fast = relkm::squared_centroid_distances(a, c);
    const auto naive = relkm::oracle::naive_centroid_distances(a, c);
    const double tol = 1e-9 * std::max(1.0, a.max_entry());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < clusters; ++j) {
        if (c.cluster_size(j) == 0) {
          REQUIRE(fast(i, j) == kInf);
          REQUIRE(naive(i, j) == kInf);
        } else {
          REQUIRE_THAT(fast(i, j), Catch::Matchers::WithinAbs(naive(i, j), tol));
        }
      }
    }
  }
}

TEST_CASE("Euclidean matrices reproduce point-to-centroid distances", "[core][property]") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + trial % 20;
    const std::size_t dim = 1 + trial % 4;
    const std::size_t clusters = 1 + trial % 4;
    const auto cloud = testsupport::random_cloud(n, dim, 500 + trial);
    const auto a = relkm::oracle::squared_distance_matrix(cloud);
    const auto c = testsupport::random_labels(n, clusters, 700 + trial);
    const auto q = relkm::squared_centroid_distances(a, c);
    for (std::size_t j = 0; j < clusters; ++j) {
      const auto& members = c.members()[j];
      if (members.empty()) continue;
      std::vector<double> centroid(dim, 0.0);
      for (std::size_t k : members) {
        for (std::size_t r = 0; r < dim; ++r) centroid[r] += cloud.points[k][r];
      }
      for (double& x : centroid) x /= static_cast<double>(members.size());
      for (std::size_t i = 0; i < n; ++i) {
        double expect = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
          const double diff = cloud.points[i][r] - centroid[r];
          expect += diff * diff;
        }
        REQUIRE_THAT(q(i, j), Catch::Matchers::WithinAbs(expect, 1e-9));
      }
    }
  }
}

TEST_CASE("descent is strictly monotone and lands on a local optimum", "[core][property]") {
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    const std::size_t n = 5 + trial % 20;
    const std::size_t clusters = 2 + trial % 4;
    const auto a = testsupport::random_squared_matrix(n, 4000 + trial);
    const auto result =
        relkm::run_single(a, testsupport::random_labels(n, clusters, 5000 + trial));
    REQUIRE_FALSE(result.truncated);
    for (std::size_t s = 1; s < result.trace.size(); ++s) {
      REQUIRE(result.trace[s].value < result.trace[s - 1].value);
    }
    CHECK(result.value == result.trace.back().value);
    CHECK(result.value <= result.trace.front().value);
    // no further reassignment improves the returned clustering
    const auto q = relkm::squared_centroid_distances(a, result.clustering);
    const Clustering again = relkm::reassign(q);
    CHECK_FALSE(relkm::clustering_value(a, again) < result.value);
  }
}

TEST_CASE("scaling the matrix scales values and keeps decisions", "[core][property]") {
  const std::size_t n = 12;
  const auto a = testsupport::random_squared_matrix(n, 81);
  const auto c = testsupport::random_labels(n, 3, 82);
  const auto q1 = relkm::squared_centroid_distances(a, c);
  for (double lambda : {0.5, 4.0, 3.0}) {
    relkm::SquareMatrix scaled_entries(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) scaled_entries(i, j) = lambda * a(i, j);
    }
    const SquaredDistanceMatrix scaled(std::move(scaled_entries));
    const auto q2 = relkm::squared_centroid_distances(scaled, c);
    const bool exact = lambda == 0.5 || lambda == 4.0;  // powers of two scale exactly
    const double tol = 1e-9 * std::max(1.0, lambda * a.max_entry());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (exact) {
          REQUIRE(q2(i, j) == lambda * q1(i, j));
        } else {
          REQUIRE_THAT(q2(i, j), Catch::Matchers::WithinAbs(lambda * q1(i, j), tol));
        }
      }
    }
    CHECK(relkm::reassign(q1).labels() == relkm::reassign(q2).labels());
    REQUIRE_THAT(relkm::clustering_value(scaled, c),
                 Catch::Matchers::WithinAbs(lambda * relkm::clustering_value(a, c), tol));
  }
}
