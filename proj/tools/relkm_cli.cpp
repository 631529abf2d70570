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

// Command-line front end: parse a distance-matrix file, optionally apply the
// beta-spread transformation, run the multi-restart search, write the
// clustering. Results go to the output stream; all diagnostics go to stderr.
//
// Exit codes: 0 success, 2 usage error, 3 input format/validation error,
// 4 numerical convergence error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relkm/relkm.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relational k-means: cluster objects given only a symmetric distance matrix"};

  std::size_t clusters = 0;
  std::size_t max_failed = 20;
  std::size_t threads = relkm::default_thread_count();
  std::uint64_t seed = 0;
  std::size_t max_iterations = 1000;
  bool spread = false;
  std::string input_path = "-";
  std::string output_path = "-";

  app.add_option("-N,--clusters", clusters, "number of clusters")
      ->required()
      ->check(CLI::PositiveNumber);
  app.add_option("-K,--max-failed", max_failed,
                 "stop after this many consecutive non-improving attempts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", threads, "parallel attempts (default: logical processors)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", seed, "master seed for the restart sequence")->capture_default_str();
  app.add_flag("--spread", spread,
               "apply the beta-spread transformation to Euclideanize the matrix first");
  app.add_option("--max-iterations", max_iterations, "iteration cap per attempt")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-i,--input", input_path, "input file, or - for stdin")->capture_default_str();
  app.add_option("-o,--output", output_path, "output file, or - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitUsage;
  }

  relkm::NamedDataset dataset{{}, relkm::SquareMatrix{}};
  try {
    if (input_path == "-") {
      dataset = relkm::parse_input(std::cin);
    } else {
      std::ifstream in(input_path);
      if (!in) {
        std::cerr << "error: cannot open input file \"" << input_path << "\"\n";
        return kExitInput;
      }
      dataset = relkm::parse_input(in);
    }
  } catch (const relkm::Error& e) {
    std::cerr << "error: " << input_path << ": " << e.what() << "\n";
    return kExitInput;
  }

  const std::size_t n = dataset.names.size();
  if (clusters > n) {
    std::cerr << "error: --clusters " << clusters << " exceeds the number of objects (" << n
              << ")\n";
    return kExitUsage;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dataset.names[i].find(';') != std::string::npos) {
      std::cerr << "warning: object name on line " << (i + 1)
                << " contains ';'; the output will not be machine-parseable\n";
    }
  }

  const auto start = std::chrono::steady_clock::now();
  relkm::SquaredDistanceMatrix matrix = relkm::square_distances(dataset);
  try {
    if (spread) {
      relkm::SpreadResult sp = relkm::beta_spread(matrix);
      std::cerr << "beta-spread: beta=" << relkm::format_double(sp.beta)
                << " (min gram eigenvalue " << relkm::format_double(sp.min_eigenvalue) << ")\n";
      matrix = std::move(sp.stretched);
    }

    relkm::SearchParams params;
    params.cluster_count = clusters;
    params.max_failed_attempts = max_failed;
    params.master_seed = seed;
    params.thread_count = threads;
    params.max_iterations_per_attempt = max_iterations;
    const relkm::SearchOutcome outcome = relkm::run_search(matrix, params);

    std::size_t improvements = 0;
    for (const relkm::AttemptRecord& r : outcome.per_attempt) {
      if (r.improved_best) ++improvements;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "n=" << n << " clusters=" << clusters << " attempts=" << outcome.attempts_executed
              << " improvements=" << improvements
              << " best=" << relkm::format_double(outcome.best_value) << " time="
              << relkm::format_double(elapsed) << "s\n";

    if (output_path == "-") {
      relkm::write_output(std::cout, dataset.names, outcome);
    } else {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file \"" << output_path << "\"\n";
        return kExitInput;
      }
      relkm::write_output(out, dataset.names, outcome);
    }
  } catch (const relkm::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << relkm::format_double(e.residual())
              << ")\n";
    return kExitNumerical;
  }
  return 0;
}
