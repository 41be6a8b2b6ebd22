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

#include <complex>
#include <initializer_list>
#include <vector>

namespace qpdite {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major. Sized for registers up to 8 qubits
/// (dimension 256); everything is plain O(d^2)/O(d^3) arithmetic.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);

  static Matrix identity(int d);
  static Matrix zero(int rows, int cols);
  static Matrix from_rows(std::initializer_list<std::initializer_list<cdouble>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cdouble& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cdouble& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  cdouble* data() { return data_.data(); }
  const cdouble* data() const { return data_.data(); }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  cdouble trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cdouble scalar);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cdouble s) { return a *= s; }
  friend Matrix operator*(cdouble s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  /// a.apply_to(v): matrix-vector product.
  std::vector<cdouble> apply_to(const std::vector<cdouble>& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cdouble> data_;
};

/// Kronecker product; the left factor owns the most significant index block.
Matrix kron(const Matrix& a, const Matrix& b);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// ||m - m^dag||_F <= tol
bool is_hermitian(const Matrix& m, double tol);

}  // namespace qpdite
