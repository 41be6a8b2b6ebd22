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

#include <string>
#include <vector>

#include <json.hpp>

#include "qpdite/channels.hpp"

namespace qpdite {

struct BasisElement {
  int index = 0;
  std::string label;
  QuantumOperation op;
  std::string recipe;  // gate-sequence documentation, not used to build ops
};

enum class CompletenessClass { all_linear, cptp_only, unverified };

/// Ordered dictionary of implementable operations used for decompositions.
struct BasisSet {
  std::string name;
  int qubit_count = 0;
  CompletenessClass completeness_class = CompletenessClass::unverified;
  std::vector<BasisElement> elements;

  size_t size() const { return elements.size(); }
};

/// 16-element single-qubit basis: 10 Clifford conjugations and 6 rank-1
/// projective operations; complete for all single-qubit linear maps.
BasisSet ebl_single_qubit();

/// Cartesian product dictionary; element (i, j) -> index i*|b| + j.
BasisSet product_basis(const BasisSet& a, const BasisSet& b);

/// 241-element 2-qubit dictionary: the 169 products of the first 13
/// single-qubit elements plus conjugated entangling families.
BasisSet takagi_two_qubit();

/// Replace every element B_i by noise o B_i. The noise must be CPTP on the
/// same number of qubits.
BasisSet apply_noise(const BasisSet& s, const QuantumOperation& noise);

/// rho -> (1-p) rho + p Tr[rho] I / 2^k.
QuantumOperation depolarizing_channel(int k, double p);

/// Single-qubit Pauli channel rho -> (1-px-py-pz) rho + px X rho X + ...
QuantumOperation pauli_noise_channel(double px, double py, double pz);

nlohmann::json basis_to_json(const BasisSet& s);

// Pauli matrices and common gates used across the library.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix phase_s();
Matrix cnot();

/// Tensor of single-qubit Paulis from a string over {I, X, Y, Z}.
Matrix pauli_string_matrix(const std::string& s);

}  // namespace qpdite
