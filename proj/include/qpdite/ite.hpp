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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpdite/channels.hpp"

namespace qpdite {

struct LocalTerm {
  std::vector<int> support;
  Matrix h;  // Hermitian on 2^|support|
};

/// Sum of k-local Hermitian terms on an n-qubit register.
struct LocalHamiltonian {
  int n = 0;
  std::vector<LocalTerm> terms;

  size_t term_count() const { return terms.size(); }
  /// Dense embedded sum (n <= 8).
  Matrix dense() const;
};

/// rho -> e^{-beta h} rho e^{-beta h} as a single-Kraus operation.
QuantumOperation ite_map(const Matrix& h, double beta);

struct TrotterStep {
  QuantumOperation op;
  std::vector<int> support;
};

/// First-order Trotter plan: the term sequence 1..L repeated r times, each
/// step the local map e^{-(beta/r) H_l}. Steps are listed in execution
/// order (step 0 acts on the state first).
struct TrotterPlan {
  int n = 0;
  double beta = 0.0;
  int r = 1;
  std::vector<TrotterStep> steps;

  /// Dense product of the embedded step Kraus operators in execution order
  /// (the rightmost matrix factor acts first).
  Matrix product() const;
};

TrotterPlan trotter_plan(const LocalHamiltonian& h, double beta, int r);

struct ShiftResult {
  LocalHamiltonian hamiltonian;
  std::vector<double> term_shifts;                 // alpha_l added to each term
  std::optional<double> global_ground_energy;     // of the shifted H, for n <= 8
};

/// Shift each local term by alpha_l = -lambda_0(h_l) so its ground energy is
/// exactly zero. For frustration-free models the shifted global Hamiltonian
/// is PSD as well; the global ground energy is reported for n <= 8.
ShiftResult shift_to_psd(const LocalHamiltonian& h);

/// ceil(c * beta^2 L^2 / eps), at least 1.
long choose_r(double beta, long num_terms, double eps, double c = 1.0);

/// H = -XX - YY - ZZ on two qubits, optionally shifted by +II.
LocalHamiltonian heisenberg_2q(bool shifted);

/// Open 1D chain with nearest-neighbor terms -(XX + YY + ZZ), optionally
/// shifted per term.
LocalHamiltonian heisenberg_chain_1d(int n, bool shifted);

/// Parse {n, terms: [{qubits, pauli_sum: [{coeff, pauli_string}]}],
/// shift: "auto"|"none"|<number>}.
LocalHamiltonian hamiltonian_from_json(const nlohmann::json& j);

}  // namespace qpdite
