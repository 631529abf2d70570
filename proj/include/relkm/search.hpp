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

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "relkm/core.hpp"
#include "relkm/spread.hpp"
#include "relkm/types.hpp"

namespace relkm {

/// SplitMix64: a well-known 64-bit generator with a single word of state.
/// Output k of the stream seeded with s is avalanche(s + (k+1) * gamma),
/// so streams can be split by index without sharing state. Fixed here as the
/// artifact's random source so that identical seeds reproduce identical runs
/// on every build and thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw from [0, bound), unbiased via rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Seed for logical attempt `attempt_index`: output number attempt_index of
/// the SplitMix64 stream seeded with master_seed. Attempts get independent
/// generators instead of sharing one, so results do not depend on thread
/// scheduling.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t attempt_index) {
  SplitMix64 g(master_seed + attempt_index * 0x9E3779B97F4A7C15ULL);
  return g.next();
}

/// Clustering with each of n labels drawn independently and uniformly from
/// [0, cluster_count). Empty clusters may occur and are legal.
inline Clustering random_clustering(std::size_t n, std::size_t cluster_count, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_clustering: need at least one point");
  if (cluster_count == 0) throw std::invalid_argument("random_clustering: cluster count must be >= 1");
  SplitMix64 g(seed);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<std::size_t>(g.below(static_cast<std::uint64_t>(cluster_count)));
  }
  return Clustering(std::move(labels), cluster_count);
}

inline std::size_t default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<std::size_t>(hc);
}

struct SearchParams {
  std::size_t cluster_count = 1;
  std::size_t max_failed_attempts = 20;  // the bad-luck streak K
  std::uint64_t master_seed = 0;
  std::size_t thread_count = default_thread_count();
  std::size_t max_iterations_per_attempt = 1000;
  bool apply_spread = false;
};

struct AttemptRecord {
  std::size_t attempt_index;
  double final_value;
  std::size_t iterations;
  bool improved_best;
};

struct SearchOutcome {
  Clustering best;
  double best_value;
  std::size_t attempts_executed;
  std::vector<AttemptRecord> per_attempt;  // attempts 0..attempts_executed-1, in order
};

/// Repeated randomized restarts of run_single, stopping once the best value
/// has not improved for `max_failed_attempts` consecutive attempts.
///
/// Logical attempt i starts from random_clustering(n, N, derive_seed(seed, i))
/// and is a pure function of the matrix and its seed, so the outcome is
/// identical for every thread_count. Attempts run concurrently in batches of
/// up to thread_count; the improvement streak is evaluated strictly in logical
/// index order, and attempts speculatively executed past the stopping index
/// are discarded. Improvement means strictly smaller value; ties count as
/// failures. With apply_spread set, the matrix is replaced by
/// beta_spread(a).stretched before any attempt.
inline SearchOutcome run_search(const SquaredDistanceMatrix& a, const SearchParams& params) {
  if (params.cluster_count == 0) throw std::invalid_argument("run_search: cluster_count must be >= 1");
  if (params.max_failed_attempts == 0) throw std::invalid_argument("run_search: max_failed_attempts must be >= 1");
  if (params.thread_count == 0) throw std::invalid_argument("run_search: thread_count must be >= 1");
  if (params.max_iterations_per_attempt == 0) throw std::invalid_argument("run_search: max_iterations_per_attempt must be >= 1");

  std::optional<SquaredDistanceMatrix> stretched;
  const SquaredDistanceMatrix* matrix = &a;
  if (params.apply_spread) {
    stretched = beta_spread(a).stretched;
    matrix = &*stretched;
  }
  const std::size_t n = matrix->size();

  const auto attempt = [&](std::size_t index) {
    return run_single(*matrix,
                      random_clustering(n, params.cluster_count,
                                        derive_seed(params.master_seed, index)),
                      params.max_iterations_per_attempt);
  };

  std::vector<AttemptRecord> records;
  std::optional<Clustering> best;
  double best_value = 0.0;
  std::size_t streak = 0;
  std::size_t next_index = 0;
  bool stopped = false;

  while (!stopped) {
    const std::size_t batch = params.thread_count;
    std::vector<std::optional<SingleRunResult>> results(batch);
    std::vector<std::exception_ptr> failures(batch);

    const auto worker = [&](std::size_t slot) {
      try {
        results[slot] = attempt(next_index + slot);
      } catch (...) {
        failures[slot] = std::current_exception();
      }
    };

    std::vector<std::thread> pool;
    pool.reserve(batch > 0 ? batch - 1 : 0);
    for (std::size_t slot = 1; slot < batch; ++slot) pool.emplace_back(worker, slot);
    worker(0);
    for (std::thread& t : pool) t.join();

    for (std::size_t slot = 0; slot < batch; ++slot) {
      if (failures[slot]) std::rethrow_exception(failures[slot]);
      SingleRunResult& r = *results[slot];
      const bool improved = !best.has_value() || r.value < best_value;
      records.push_back({next_index + slot, r.value, r.iterations, improved});
      if (improved) {
        best = std::move(r.clustering);
        best_value = r.value;
        streak = 0;
      } else if (++streak >= params.max_failed_attempts) {
        stopped = true;  // attempts past this index are discarded
        break;
      }
    }
    next_index += batch;
  }

  const std::size_t executed = records.size();
  return {std::move(*best), best_value, executed, std::move(records)};
}

}  // namespace relkm
