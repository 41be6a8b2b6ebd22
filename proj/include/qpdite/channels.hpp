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

#include "qpdite/matrix.hpp"

namespace qpdite {

enum class OpKind { unitary, projective, general };

/// A completely positive (possibly non-trace-preserving) k-qubit operation
/// in Kraus form, rho -> sum_m K_m rho K_m^dag.
///
/// Projective operations carry the measured projector Pi = sum K^dag K; the
/// sampler realizes them as the two-outcome POVM {Pi, 1 - Pi} followed by
/// post-selection on the Pi outcome.
struct QuantumOperation {
  int qubit_count = 0;
  std::vector<Matrix> kraus;
  bool trace_preserving = false;
  OpKind kind = OpKind::general;
  Matrix projector;  // K^dag K, set for projective kind only

  int dim() const { return 1 << qubit_count; }

  static QuantumOperation identity(int k);
  /// Single-Kraus operation; kind and TP flag are classified from K^dag K.
  static QuantumOperation single_kraus(Matrix k);
  static QuantumOperation unitary_op(Matrix u);
  static QuantumOperation from_kraus(std::vector<Matrix> ks);
};

/// Choi matrix C = (T (x) I)(|psi+><psi+|) with unnormalized |psi+> = sum |ii>;
/// the output factor is the most significant index block.
Matrix choi_of(const QuantumOperation& op);

/// sum_m K_m rho K_m^dag; the result is unnormalized for non-TP operations
/// (its trace is the post-selection probability for projective ones).
Matrix apply(const QuantumOperation& op, const Matrix& rho);

/// Extend op to n qubits, acting on the given (distinct, ordered) support
/// qubits and as identity elsewhere. Qubit 0 is the most significant bit.
QuantumOperation embed(const QuantumOperation& op, const std::vector<int>& support, int n);

struct Classification {
  bool cp = false;
  bool tp = false;
};

/// CP iff the Choi matrix is PSD (min eigenvalue >= -1e-9); TP iff the
/// partial trace of the Choi over the output factor equals identity.
Classification classify(const QuantumOperation& op);

/// Partial trace of a d^2 x d^2 Choi matrix over its output (first) factor.
Matrix partial_trace_output(const Matrix& choi, int d);

/// Pure state on n qubits; qubit 0 is the most significant bit of the index.
struct StateVector {
  int n = 0;
  std::vector<cdouble> amp;

  static StateVector computational_basis(int n, uint64_t index);
  int dim() const { return 1 << n; }
  double norm() const;
  void normalize();
  Matrix density() const;
};

/// Apply a 2^k x 2^k matrix to the support qubits of the state (support[0]
/// is the most significant local bit). No normalization is performed.
void apply_local(StateVector& state, const Matrix& local, const std::vector<int>& support);

/// <psi| A |psi| (real part; A must be Hermitian for this to be meaningful).
double expectation_value(const Matrix& a, const StateVector& psi);

}  // namespace qpdite
