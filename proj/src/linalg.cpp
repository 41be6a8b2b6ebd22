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

#include "qpdite/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpdite {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

Matrix EigenSystem::reconstruct() const {
  int d = eigenvectors.rows();
  Matrix scaled = eigenvectors;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) scaled(i, j) *= eigenvalues[j];
  }
  return scaled * eigenvectors.adjoint();
}

EigenSystem eigh(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eigh: matrix not square");
  int d = m.rows();
  if (!is_hermitian(m, 1e-10 * d)) {
    throw std::invalid_argument("eigh: input not Hermitian within 1e-10 * dim tolerance");
  }

  Matrix a = m;
  // Symmetrize exactly so rows stay conjugate to columns during sweeps.
  for (int i = 0; i < d; ++i) {
    a(i, i) = cdouble(a(i, i).real(), 0.0);
    for (int j = i + 1; j < d; ++j) {
      cdouble avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  Matrix v = Matrix::identity(d);

  const double scale = std::max(1.0, a.frobenius_norm());
  const double stop = 1e-14 * scale;
  const int max_sweeps = 100;
  std::vector<cdouble> colp(d), colq(d);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        cdouble b = a(p, q);
        double babs = std::abs(b);
        if (babs <= 1e-300) continue;
        cdouble w = b / babs;  // phase of the pivot
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        double theta = (aqq - app) / (2.0 * babs);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        // Two-sided rotation U with U[p][p]=c, U[p][q]=s*w, U[q][p]=-s*conj(w),
        // U[q][q]=c zeroes the pivot. Update columns, mirror rows by Hermiticity.
        for (int r = 0; r < d; ++r) {
          cdouble arp = a(r, p);
          cdouble arq = a(r, q);
          colp[r] = c * arp - s * std::conj(w) * arq;
          colq[r] = s * w * arp + c * arq;
        }
        for (int r = 0; r < d; ++r) {
          a(r, p) = colp[r];
          a(r, q) = colq[r];
          a(p, r) = std::conj(colp[r]);
          a(q, r) = std::conj(colq[r]);
        }
        a(p, p) = cdouble(app - t * babs, 0.0);
        a(q, q) = cdouble(aqq + t * babs, 0.0);
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (int r = 0; r < d; ++r) {
          cdouble vrp = v(r, p);
          cdouble vrq = v(r, q);
          v(r, p) = c * vrp - s * std::conj(w) * vrq;
          v(r, q) = s * w * vrp + c * vrq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > 1e-10 * scale * d) {
    throw std::runtime_error("eigh: Jacobi iteration failed to converge");
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(d);
  es.eigenvectors = Matrix(d, d);
  for (int j = 0; j < d; ++j) {
    es.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < d; ++i) es.eigenvectors(i, j) = v(i, order[j]);
  }
  return es;
}

Matrix herm_exp(const Matrix& m, double s) {
  if (!std::isfinite(s)) throw std::invalid_argument("herm_exp: scale not finite");
  EigenSystem es = eigh(m);
  int d = m.rows();
  Matrix scaled = es.eigenvectors;
  for (int j = 0; j < d; ++j) {
    double x = s * es.eigenvalues[j];
    if (x > 709.0) {
      throw std::domain_error("herm_exp: exponent " + std::to_string(x) +
                              " overflows double range");
    }
    double e = std::exp(x);
    for (int i = 0; i < d; ++i) scaled(i, j) *= e;
  }
  return scaled * es.eigenvectors.adjoint();
}

MatrixNorms norms(const Matrix& m) {
  MatrixNorms out{0.0, 0.0, m.frobenius_norm()};
  if (m.rows() == 0 || m.cols() == 0) return out;
  Matrix gram = m.adjoint() * m;
  EigenSystem es = eigh(gram);
  for (double lambda : es.eigenvalues) {
    double sv = std::sqrt(std::max(0.0, lambda));
    out.trace_norm += sv;
    out.operator_norm = std::max(out.operator_norm, sv);
  }
  return out;
}

std::vector<double> solve_linear_real(const std::vector<std::vector<double>>& a,
                                      const std::vector<double>& b) {
  int n = static_cast<int>(a.size());
  if (n == 0 || static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("solve_linear_real: shape mismatch");
  }
  std::vector<std::vector<double>> aug(a);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(aug[i].size()) != n) {
      throw std::invalid_argument("solve_linear_real: matrix not square");
    }
    aug[i].push_back(b[i]);
  }
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0.0;
    for (int r = rank; r < n; ++r) {
      if (std::abs(aug[r][col]) > best) {
        best = std::abs(aug[r][col]);
        piv = r;
      }
    }
    if (piv < 0 || best < 1e-12) {
      throw std::runtime_error("solve_linear_real: singular system, rank " +
                               std::to_string(rank) + " of " + std::to_string(n));
    }
    std::swap(aug[rank], aug[piv]);
    double inv = 1.0 / aug[rank][col];
    for (int c = col; c <= n; ++c) aug[rank][c] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      double f = aug[r][col];
      if (f == 0.0) continue;
      for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[rank][c];
    }
    ++rank;
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

int matrix_rank_real(std::vector<std::vector<double>> rows, double tol) {
  if (rows.empty()) return 0;
  int m = static_cast<int>(rows.size());
  int n = static_cast<int>(rows[0].size());
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    double best = tol;
    for (int r = rank; r < m; ++r) {
      if (std::abs(rows[r][col]) > best) {
        best = std::abs(rows[r][col]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    double inv = 1.0 / rows[rank][col];
    for (int c = col; c < n; ++c) rows[rank][c] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      double f = rows[r][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<double> least_squares_real(const std::vector<std::vector<double>>& columns,
                                       const std::vector<double>& b, double* residual) {
  int ncols = static_cast<int>(columns.size());
  if (ncols == 0) throw std::invalid_argument("least_squares_real: no columns");
  int m = static_cast<int>(columns[0].size());
  if (static_cast<int>(b.size()) != m) {
    throw std::invalid_argument("least_squares_real: rhs size mismatch");
  }
  // Normal equations; the stacks here are small and well separated.
  std::vector<std::vector<double>> gram(ncols, std::vector<double>(ncols, 0.0));
  std::vector<double> rhs(ncols, 0.0);
  for (int i = 0; i < ncols; ++i) {
    for (int j = i; j < ncols; ++j) {
      double s = 0.0;
      for (int r = 0; r < m; ++r) s += columns[i][r] * columns[j][r];
      gram[i][j] = s;
      gram[j][i] = s;
    }
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += columns[i][r] * b[r];
    rhs[i] = s;
  }
  // Ridge the diagonal minimally to tolerate rank-deficient stacks.
  double diag_scale = 0.0;
  for (int i = 0; i < ncols; ++i) diag_scale = std::max(diag_scale, gram[i][i]);
  for (int i = 0; i < ncols; ++i) gram[i][i] += 1e-12 * std::max(1.0, diag_scale);
  std::vector<double> x = solve_linear_real(gram, rhs);
  if (residual != nullptr) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) {
      double acc = -b[r];
      for (int i = 0; i < ncols; ++i) acc += columns[i][r] * x[i];
      s += acc * acc;
    }
    *residual = std::sqrt(s);
  }
  return x;
}

}  // namespace qpdite
