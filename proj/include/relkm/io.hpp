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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relkm/errors.hpp"
#include "relkm/search.hpp"
#include "relkm/types.hpp"

namespace relkm {

/// Object names plus the raw (not squared) pairwise distance matrix, as
/// loaded from an input file. After a successful parse the matrix is exactly
/// symmetric with an exactly zero diagonal.
struct NamedDataset {
  std::vector<std::string> names;
  SquareMatrix distances;
};

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool blank(std::string_view s) { return trim(s).empty(); }

// getline that accepts LF and CRLF endings.
inline bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace detail

/// Parse the clustering input format: one object name per line, a line
/// containing exactly "//", then an n x n matrix of pairwise distances in
/// semicolon-separated CSV with "." as the decimal separator. Fields may be
/// padded with spaces or tabs; names are whole lines and may contain any
/// character except a line break. The matrix is validated (nonnegative,
/// symmetric within 1e-9 relative, diagonal within 1e-12), then symmetrized
/// by averaging and its diagonal forced to exactly zero. Every failure throws
/// ParseError or ValidationError naming the offending line and field.
inline NamedDataset parse_input(std::istream& in) {
  std::vector<std::string> names;
  std::string line;
  std::size_t line_no = 0;
  bool separator_found = false;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (line == "//") {
      separator_found = true;
      break;
    }
    if (line.empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": blank line before \"//\" (object names must be nonempty)",
                       line_no);
    }
    names.push_back(line);
  }
  if (!separator_found) {
    throw ParseError("missing \"//\" separator line after the object names");
  }
  const std::size_t n = names.size();
  if (n < 2) {
    throw ValidationError("need at least 2 objects, got " + std::to_string(n), line_no);
  }

  const std::size_t matrix_first_line = line_no + 1;
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!detail::read_line(in, line)) {
      throw ParseError("expected " + std::to_string(n) + " matrix rows, found " +
                           std::to_string(i),
                       line_no);
    }
    ++line_no;
    std::string_view rest = line;
    std::size_t j = 0;
    while (true) {
      const std::size_t sep = rest.find(';');
      const std::string_view field = detail::trim(rest.substr(0, sep));
      if (j >= n) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                             " fields in matrix row " + std::to_string(i + 1) + ", got more",
                         line_no, j + 1);
      }
      double value = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
      if (res.ec != std::errc() || res.ptr != field.data() + field.size() || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ", field " + std::to_string(j + 1) +
                             ": cannot parse \"" + std::string(field) + "\" as a number",
                         line_no, j + 1);
      }
      if (!std::isfinite(value)) {
        throw ValidationError("line " + std::to_string(line_no) + ", field " +
                                  std::to_string(j + 1) + ": non-finite distance",
                              line_no, j + 1);
      }
      d(i, j) = value;
      ++j;
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 1);
    }
    if (j != n) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                           " fields in matrix row " + std::to_string(i + 1) + ", got " +
                           std::to_string(j),
                       line_no, j);
    }
  }
  while (detail::read_line(in, line)) {
    ++line_no;
    if (!detail::blank(line)) {
      throw ParseError("line " + std::to_string(line_no) + ": unexpected content after the matrix",
                       line_no);
    }
  }

  // Validate, then normalize: average away rounding-level asymmetry and
  // clamp the diagonal to exactly zero.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) < 0.0) {
        throw ValidationError("negative distance " + format_double(d(i, j)) + " at row " +
                                  std::to_string(i + 1) + ", column " + std::to_string(j + 1),
                              matrix_first_line + i, j + 1);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(d(i, j)), std::abs(d(j, i))});
      if (std::abs(d(i, j) - d(j, i)) > 1e-9 * scale) {
        throw ValidationError("asymmetric distances at (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + "): " + format_double(d(i, j)) +
                                  " vs " + format_double(d(j, i)),
                              matrix_first_line + i, j + 1);
      }
      const double avg = 0.5 * (d(i, j) + d(j, i));
      d(i, j) = avg;
      d(j, i) = avg;
    }
    if (d(i, i) > 1e-12) {
      throw ValidationError("nonzero self-distance " + format_double(d(i, i)) + " for object " +
                                std::to_string(i + 1),
                            matrix_first_line + i, i + 1);
    }
    d(i, i) = 0.0;
  }
  return {std::move(names), std::move(d)};
}

/// Square the raw distances entrywise into the matrix A the clustering
/// operates on. Preserves the zero diagonal and symmetry exactly.
inline SquaredDistanceMatrix square_distances(const NamedDataset& dataset) {
  const std::size_t n = dataset.distances.size();
  SquareMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dataset.distances(i, j);
      a(i, j) = d * d;
    }
  }
  return SquaredDistanceMatrix(std::move(a));
}

/// Write the clustering result: a header line
/// "# value=<best value>; attempts=<count>" followed by one "name;cluster"
/// line per object in input order, LF line endings. Cluster indices are
/// renumbered in order of first appearance so output is stable under label
/// permutation.
inline void write_output(std::ostream& out, const std::vector<std::string>& names,
                         const SearchOutcome& outcome) {
  const std::vector<std::size_t>& labels = outcome.best.labels();
  if (names.size() != labels.size()) {
    throw std::invalid_argument("write_output: " + std::to_string(names.size()) + " names but " +
                                std::to_string(labels.size()) + " labels");
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> renumber(outcome.best.cluster_count(), kUnset);
  std::size_t next = 0;
  for (std::size_t label : labels) {
    if (renumber[label] == kUnset) renumber[label] = next++;
  }
  out << "# value=" << format_double(outcome.best_value) << "; attempts=" << outcome.attempts_executed
      << "\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i] << ';' << renumber[labels[i]] << '\n';
  }
}

}  // namespace relkm
