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

#include "qpdite/basis.hpp"
#include "qpdite/channels.hpp"

namespace qpdite {

/// Quasiprobability decomposition of a target map over a basis:
/// target = sum_i q_i B_i with gamma = sum |q_i| and p_i = |q_i| / gamma.
struct QPDecomposition {
  std::string basis_label;
  std::vector<double> coefficients;
  double gamma = 0.0;
  std::vector<double> probabilities;
  std::vector<int> signs;  // +1 / -1
  double residual = 0.0;

  /// Cumulative probabilities for categorical sampling.
  std::vector<double> cumulative() const;
};

/// Direct linear solve over a complete basis (exactly 16^k linearly
/// independent elements). Throws on rank-deficient bases with a rank
/// diagnostic.
QPDecomposition solve_exact(const QuantumOperation& target, const BasisSet& basis);

/// L1-minimizing linear program: min sum(q+ + q-) subject to the Choi
/// matching constraints in the real Hermitian parametrization. Requires the
/// target's Choi to lie in the real span of the basis (checked by a
/// least-squares residual below 1e-7); throws an infeasibility report
/// otherwise.
QPDecomposition solve_min_gamma(const QuantumOperation& target, const BasisSet& basis);

/// exp(-2 beta lambda_0): the diamond norm of the imaginary-time evolution
/// map, a lower bound on gamma for any decomposition.
double diamond_lower_bound_ite(const Matrix& h, double beta);

/// ||C(target) - sum q_i C(B_i)||_F
double reconstruct_residual(const QPDecomposition& d, const BasisSet& basis,
                            const QuantumOperation& target);

/// Real parametrization of a Hermitian matrix: diagonal entries followed by
/// sqrt(2)*Re and sqrt(2)*Im of the upper triangle (an isometry for the
/// Frobenius inner product).
std::vector<double> vec_real_hermitian(const Matrix& m);

nlohmann::json qpd_to_json(const QPDecomposition& d);

}  // namespace qpdite
