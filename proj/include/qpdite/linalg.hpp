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

#include <vector>

#include "qpdite/matrix.hpp"

namespace qpdite {

/// Result of a Hermitian eigendecomposition: m = U diag(eigenvalues) U^dag
/// with eigenvalues ascending and U's columns orthonormal.
struct EigenSystem {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Rejects inputs with ||m - m^dag||_F > 1e-10 * dim.
EigenSystem eigh(const Matrix& m);

/// U diag(exp(s * lambda_i)) U^dag. Rejects arguments that would overflow.
Matrix herm_exp(const Matrix& m, double s);

struct MatrixNorms {
  double operator_norm;  // largest singular value
  double trace_norm;     // sum of singular values
  double frobenius;
};

MatrixNorms norms(const Matrix& m);

/// Solve A x = b for square A by Gaussian elimination with partial pivoting.
/// Throws on (numerically) singular systems, reporting the detected rank.
std::vector<double> solve_linear_real(const std::vector<std::vector<double>>& a,
                                      const std::vector<double>& b);

/// Numerical rank of a stack of real row vectors by row elimination.
int matrix_rank_real(std::vector<std::vector<double>> rows, double tol);

/// Least-squares solution of A x ~ b (A given by columns) via normal
/// equations; returns x, and fills residual with ||A x - b||_2.
std::vector<double> least_squares_real(const std::vector<std::vector<double>>& columns,
                                       const std::vector<double>& b, double* residual);

}  // namespace qpdite
