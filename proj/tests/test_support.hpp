// Copyright 2026 The qpdite developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <vector>

#include "qpdite/matrix.hpp"
#include "qpdite/rng.hpp"

namespace qpdite::test {

/// Random complex matrix with entries uniform in the unit square.
inline Matrix random_matrix(int rows, int cols, RandomStream& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = cdouble(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  return m;
}

inline Matrix random_hermitian(int d, RandomStream& rng) {
  Matrix m = random_matrix(d, d, rng);
  return cdouble(0.5, 0.0) * (m + m.adjoint());
}

/// Random unitary by Gram-Schmidt on a random matrix (test-only oracle,
/// independent of the library eigensolver).
inline Matrix random_unitary(int d, RandomStream& rng) {
  Matrix m = random_matrix(d, d, rng);
  // Orthonormalize columns.
  for (int j = 0; j < d; ++j) {
    for (int prev = 0; prev < j; ++prev) {
      cdouble dot = 0.0;
      for (int i = 0; i < d; ++i) dot += std::conj(m(i, prev)) * m(i, j);
      for (int i = 0; i < d; ++i) m(i, j) -= dot * m(i, prev);
    }
    double norm = 0.0;
    for (int i = 0; i < d; ++i) norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    for (int i = 0; i < d; ++i) m(i, j) *= 1.0 / norm;
  }
  return m;
}

/// Hermitian matrix with a prescribed spectrum: H = U diag(lambda) U^dag.
inline Matrix hermitian_with_spectrum(const std::vector<double>& lambda, RandomStream& rng) {
  int d = static_cast<int>(lambda.size());
  Matrix u = random_unitary(d, rng);
  Matrix scaled = u;
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) scaled(i, j) *= lambda[j];
  return scaled * u.adjoint();
}

/// Numerical rank of a stack of real vectors; test-local elimination oracle.
inline int rank_of_rows(std::vector<std::vector<double>> rows, double tol = 1e-9) {
  if (rows.empty()) return 0;
  size_t m = rows.size(), n = rows[0].size();
  int rank = 0;
  for (size_t col = 0; col < n && rank < static_cast<int>(m); ++col) {
    size_t piv = m;
    double best = tol;
    for (size_t r = rank; r < m; ++r) {
      if (std::abs(rows[r][col]) > best) {
        best = std::abs(rows[r][col]);
        piv = r;
      }
    }
    if (piv == m) continue;
    std::swap(rows[rank], rows[piv]);
    double inv = 1.0 / rows[rank][col];
    for (size_t c = col; c < n; ++c) rows[rank][c] *= inv;
    for (size_t r = 0; r < m; ++r) {
      if (static_cast<int>(r) == rank) continue;
      double f = rows[r][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

/// Upper-tail 99% quantile of the chi-square distribution via the
/// Wilson-Hilferty approximation (adequate for dof >= 20).
inline double chi2_quantile_99(double dof) {
  const double z99 = 2.3263478740408408;
  double a = 2.0 / (9.0 * dof);
  double c = 1.0 - a + z99 * std::sqrt(a);
  return dof * c * c * c;
}

}  // namespace qpdite::test
