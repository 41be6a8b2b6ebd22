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

#include <cstdint>
#include <string>
#include <vector>

#include "qpdite/matrix.hpp"
#include "qpdite/rng.hpp"

namespace qpdite {

/// Hermitian signed Pauli string: sign * (tensor of I/X/Y/Z).
struct SignedPauli {
  int sign = 1;  // +1 or -1
  std::string paulis;

  Matrix matrix() const;
};

/// n-qubit Clifford element given by its symplectic tableau (images of the
/// X_i and Z_i generators, with phase bits) and, for n <= 8, an equivalent
/// explicit unitary.
class CliffordElement {
 public:
  /// rows: 2n x 2n binary symplectic matrix in interleaved (x1,z1,x2,z2,...)
  /// coordinates; row 2i is the image of X_i, row 2i+1 the image of Z_i.
  /// phases: 2n sign bits in the same row order.
  CliffordElement(int n, std::vector<std::vector<uint8_t>> rows, std::vector<uint8_t> phases);

  int num_qubits() const { return n_; }
  SignedPauli image_x(int qubit) const;
  SignedPauli image_z(int qubit) const;

  /// Explicit 2^n unitary (global phase fixed arbitrarily); n <= 8.
  const Matrix& unitary() const;

  /// Stable identifier of the (tableau, phases) canonical form, suitable for
  /// counting draws in uniformity tests.
  std::string canonical_key() const;

  const std::vector<std::vector<uint8_t>>& symplectic_rows() const { return rows_; }
  const std::vector<uint8_t>& phase_bits() const { return phases_; }

 private:
  int n_;
  std::vector<std::vector<uint8_t>> rows_;
  std::vector<uint8_t> phases_;
  Matrix unitary_;
};

/// |Sp(2n, F2)| = 2^{n^2} prod_{j=1..n} (4^j - 1); fits in 64 bits for n <= 4.
uint64_t symplectic_group_order(int n);

/// Total canonical forms 4^n * |Sp(2n, F2)| = |C_n / U(1)|.
uint64_t clifford_group_order(int n);

/// Indexed symplectic-group element (a bijection from [0, order) for n <= 4);
/// used by tests to verify the sampling construction enumerates the group.
std::vector<std::vector<uint8_t>> symplectic_from_index(uint64_t index, int n);

/// Uniformly random Clifford element via canonical-form sampling (random
/// symplectic matrix by the transvection construction plus random phase
/// bits); exactly uniform over the group modulo global phase.
CliffordElement random_clifford(int n, RandomStream& rng);
CliffordElement random_clifford(int n, uint64_t seed);

}  // namespace qpdite
