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

#include "qpdite/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace qpdite {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("Matrix: negative dimension");
  }
  data_.assign(static_cast<size_t>(rows) * cols, cdouble(0.0, 0.0));
}

Matrix Matrix::identity(int d) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::zero(int rows, int cols) { return Matrix(rows, cols); }

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cdouble>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw std::invalid_argument("Matrix::from_rows: ragged rows");
    }
    int j = 0;
    for (cdouble v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::conjugate() const {
  Matrix m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

cdouble Matrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix not square");
  cdouble t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool Matrix::all_finite() const {
  for (const cdouble& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix sum: shape mismatch");
  }
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("Matrix difference: shape mismatch");
  }
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(cdouble scalar) {
  for (cdouble& v : data_) v *= scalar;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      cdouble aik = a(i, k);
      if (aik == cdouble(0.0, 0.0)) continue;
      const cdouble* brow = b.data() + static_cast<size_t>(k) * b.cols();
      cdouble* orow = out.data() + static_cast<size_t>(i) * out.cols();
      for (int j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

std::vector<cdouble> Matrix::apply_to(const std::vector<cdouble>& v) const {
  if (static_cast<int>(v.size()) != cols_) {
    throw std::invalid_argument("apply_to: vector size mismatch");
  }
  std::vector<cdouble> out(rows_, cdouble(0.0, 0.0));
  for (int i = 0; i < rows_; ++i) {
    const cdouble* row = data_.data() + static_cast<size_t>(i) * cols_;
    cdouble acc = 0.0;
    for (int j = 0; j < cols_; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ia = 0; ia < a.rows(); ++ia) {
    for (int ja = 0; ja < a.cols(); ++ja) {
      cdouble va = a(ia, ja);
      if (va == cdouble(0.0, 0.0)) continue;
      for (int ib = 0; ib < b.rows(); ++ib) {
        for (int jb = 0; jb < b.cols(); ++jb) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = va * b(ib, jb);
        }
      }
    }
  }
  return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  }
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  double s = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s) <= tol;
}

}  // namespace qpdite
