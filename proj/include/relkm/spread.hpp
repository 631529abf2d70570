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
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relkm/errors.hpp"
#include "relkm/types.hpp"

namespace relkm {

/// Double-centered Gram matrix B = -1/2 * Jc * A * Jc with Jc = I - (1/n)J.
/// A is a Euclidean squared distance matrix exactly when B is positive
/// semidefinite. Every row and column of B sums to zero, so the all-ones
/// vector is always an eigenvector with eigenvalue 0. The result is exactly
/// symmetric by construction.
inline SquareMatrix gram_matrix(const SquaredDistanceMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    const std::span<const double> row = a.row(i);
    for (std::size_t j = 0; j < n; ++j) s += row[j];
    row_mean[i] = s / static_cast<double>(n);
    grand += s;
  }
  grand /= static_cast<double>(n) * static_cast<double>(n);

  SquareMatrix b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = -0.5 * (a(i, j) - row_mean[i] - row_mean[j] + grand);
      b(i, j) = v;
      b(j, i) = v;
    }
  }
  return b;
}

/// Smallest eigenvalue of a symmetric matrix, by cyclic Jacobi rotations on a
/// copy. The input is symmetrized by averaging before iteration. Converged
/// when the off-diagonal Frobenius norm drops below tol * max(1, ||B||_F),
/// which bounds the absolute eigenvalue error by the same quantity. The
/// rotation order is fixed, so the result is deterministic for fixed input.
/// Throws ConvergenceError (carrying the residual) after 100 sweeps.
inline double min_eigenvalue(SquareMatrix b, double tol = 1e-10) {
  const std::size_t n = b.size();
  if (n == 0) throw std::invalid_argument("min_eigenvalue: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("min_eigenvalue: tol must be positive");
  if (n == 1) return b(0, 0);

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double avg = 0.5 * (b(p, q) + b(q, p));
      b(p, q) = avg;
      b(q, p) = avg;
    }
  }

  double frob = 0.0;
  for (double v : b.data()) frob += v * v;
  const double threshold = tol * std::max(1.0, std::sqrt(frob));

  constexpr std::size_t kMaxSweeps = 100;
  for (std::size_t sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * b(p, q) * b(p, q);
    }
    off = std::sqrt(off);
    if (off <= threshold) {
      double lambda = b(0, 0);
      for (std::size_t i = 1; i < n; ++i) lambda = std::min(lambda, b(i, i));
      return lambda;
    }
    if (sweep == kMaxSweeps) {
      throw ConvergenceError("min_eigenvalue: Jacobi did not converge within 100 sweeps", off);
    }

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = b(p, q);
        if (apq == 0.0) continue;
        const double theta = (b(q, q) - b(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);  // theta^2 would overflow
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        b(p, p) -= t * apq;
        b(q, q) += t * apq;
        b(p, q) = 0.0;
        b(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double brp = b(r, p);
          const double brq = b(r, q);
          b(r, p) = c * brp - s * brq;
          b(p, r) = b(r, p);
          b(r, q) = s * brp + c * brq;
          b(q, r) = b(r, q);
        }
      }
    }
  }
  // unreachable: the loop returns on convergence or throws at the cap
  throw std::logic_error("min_eigenvalue: fell through the sweep loop");
}

struct SpreadResult {
  double beta;                     // smallest admissible shift, >= 0
  SquaredDistanceMatrix stretched; // A + beta * (J - I)
  double min_eigenvalue;           // smallest centered-subspace eigenvalue of gram_matrix(A)
};

/// Beta-spread transformation: the smallest beta >= 0 such that
/// A + beta * (J - I) is a Euclidean squared distance matrix.
///
/// Substituting the shifted matrix into the double centering gives
/// B + (beta/2) * Jc, which moves every eigenvalue on the centered subspace
/// up by beta/2 and leaves the all-ones kernel direction at 0. The minimal
/// admissible shift is therefore beta = max(0, -2 * lambda), with lambda the
/// smallest eigenvalue of B restricted to the centered subspace. The
/// restriction is enforced by deflating the all-ones direction above the
/// spectrum before calling the eigensolver.
inline SpreadResult beta_spread(const SquaredDistanceMatrix& a, double tol = 1e-10) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("beta_spread: need at least 2 points");

  SquareMatrix b = gram_matrix(a);

  // Gershgorin bound on the spectrum; lifting the ones direction this far
  // guarantees it cannot be the minimum.
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(b(i, j));
    bound = std::max(bound, s);
  }
  const double lift = (bound + 1.0) / static_cast<double>(n);
  SquareMatrix deflated = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) deflated(i, j) += lift;
  }

  const double lambda = min_eigenvalue(std::move(deflated), tol);
  const double beta = std::max(0.0, -2.0 * lambda);

  SquareMatrix stretched(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = a(i, j) + beta;
      stretched(i, j) = v;
      stretched(j, i) = v;
    }
  }
  return {beta, SquaredDistanceMatrix(std::move(stretched)), lambda};
}

}  // namespace relkm
