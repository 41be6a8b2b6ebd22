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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpdite/basis.hpp"
#include "qpdite/ite.hpp"
#include "qpdite/linalg.hpp"
#include "qpdite/qpd.hpp"
#include "test_support.hpp"

using namespace qpdite;

TEST_CASE("solve_exact recovers basis elements as unit coordinate vectors") {
  BasisSet ebl = ebl_single_qubit();
  for (int target_idx : {0, 4, 12, 15}) {
    QPDecomposition d = solve_exact(ebl.elements[target_idx].op, ebl);
    CHECK(d.gamma == doctest::Approx(1.0).epsilon(1e-9));
    for (int i = 0; i < 16; ++i) {
      CHECK(std::abs(d.coefficients[i] - (i == target_idx ? 1.0 : 0.0)) < 1e-9);
    }
    CHECK(d.residual <= 1e-8);
  }
}

TEST_CASE("solve_exact on the shifted single-qubit ITE") {
  Matrix zp = pauli_z() + Matrix::identity(2);
  QuantumOperation target = ite_map(zp, 0.1);
  BasisSet ebl = ebl_single_qubit();
  QPDecomposition d = solve_exact(target, ebl);
  CHECK(d.residual <= 1e-8);
  CHECK(d.gamma >= 1.0 - 1e-9);
  // gamma = sum |q| and the probabilities normalize.
  double psum = 0.0;
  for (double p : d.probabilities) psum += p;
  CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
  double gsum = 0.0;
  for (double q : d.coefficients) gsum += std::abs(q);
  CHECK(d.gamma == doctest::Approx(gsum).epsilon(1e-12));
}

TEST_CASE("solve_exact rejects rank-deficient dictionaries") {
  BasisSet ebl = ebl_single_qubit();
  BasisSet broken = ebl;
  broken.elements[3] = broken.elements[2];  // duplicate row
  CHECK_THROWS_WITH_AS(solve_exact(QuantumOperation::identity(1), broken),
                       doctest::Contains("rank"), std::runtime_error);
  BasisSet wrong_count = ebl;
  wrong_count.elements.pop_back();
  CHECK_THROWS_AS(solve_exact(QuantumOperation::identity(1), wrong_count),
                  std::invalid_argument);
}

TEST_CASE("coefficient scaling is linear in the target") {
  BasisSet ebl = ebl_single_qubit();
  Matrix zp = pauli_z() + Matrix::identity(2);
  QuantumOperation target = ite_map(zp, 0.2);
  QPDecomposition base = solve_exact(target, ebl);
  double c = 2.5;
  QuantumOperation scaled =
      QuantumOperation::single_kraus(cdouble(std::sqrt(c), 0.0) * target.kraus[0]);
  QPDecomposition d = solve_exact(scaled, ebl);
  CHECK(d.gamma == doctest::Approx(c * base.gamma).epsilon(1e-9));
  for (int i = 0; i < 16; ++i) {
    CHECK(d.coefficients[i] == doctest::Approx(c * base.coefficients[i]).epsilon(1e-7));
  }
}

TEST_CASE("solve_min_gamma golden values for the CNOT channel") {
  QuantumOperation cx = QuantumOperation::unitary_op(cnot());

  BasisSet ebl2 = product_basis(ebl_single_qubit(), ebl_single_qubit());
  QPDecomposition over_ebl = solve_min_gamma(cx, ebl2);
  CHECK(over_ebl.gamma == doctest::Approx(9.0).epsilon(1e-6));

  BasisSet takagi = takagi_two_qubit();
  QPDecomposition over_takagi = solve_min_gamma(cx, takagi);
  CHECK(over_takagi.gamma == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(over_takagi.residual <= 1e-6);
}

TEST_CASE("LP optimum never exceeds the exact-solve gamma") {
  BasisSet ebl2 = product_basis(ebl_single_qubit(), ebl_single_qubit());
  LocalHamiltonian ham = heisenberg_2q(true);
  for (double beta : {0.1, 0.4}) {
    QuantumOperation target = ite_map(ham.terms[0].h, beta);
    QPDecomposition exact = solve_exact(target, ebl2);
    QPDecomposition lp = solve_min_gamma(target, ebl2);
    CHECK(lp.gamma <= exact.gamma + 1e-6);
    // The product dictionary is complete, so the solution is unique.
    CHECK(lp.gamma == doctest::Approx(exact.gamma).epsilon(1e-6));
  }
}

TEST_CASE("sweep ordering: lower bound <= takagi <= ebl") {
  BasisSet ebl2 = product_basis(ebl_single_qubit(), ebl_single_qubit());
  BasisSet takagi = takagi_two_qubit();
  LocalHamiltonian ham = heisenberg_2q(true);
  for (double beta : {0.0, 0.1, 0.5}) {
    QuantumOperation target = ite_map(ham.terms[0].h, beta);
    double g_ebl = solve_exact(target, ebl2).gamma;
    double g_tak = solve_min_gamma(target, takagi).gamma;
    double lb = diamond_lower_bound_ite(ham.terms[0].h, beta);
    CHECK(lb <= g_tak + 1e-6);
    CHECK(g_tak <= g_ebl + 1e-6);
    if (beta == 0.0) {
      CHECK(g_ebl == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(g_tak == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(lb == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("solve_min_gamma reports infeasibility for targets outside the span") {
  BasisSet takagi = takagi_two_qubit();
  // A generic non-Heisenberg ITE map does not lie in the 193-dimensional
  // span of the Takagi Choi stack.
  RandomStream rng(77);
  Matrix h = test::random_hermitian(4, rng);
  QuantumOperation target = ite_map(h, 0.4);
  CHECK_THROWS_WITH_AS(solve_min_gamma(target, takagi), doctest::Contains("span"),
                       std::runtime_error);
}

TEST_CASE("diamond lower bound closed form") {
  Matrix h2q = heisenberg_2q(false).terms[0].h;
  CHECK(diamond_lower_bound_ite(h2q, 0.0) == doctest::Approx(1.0));
  Matrix shifted = heisenberg_2q(true).terms[0].h;
  for (double beta : {0.2, 0.7, 1.4}) {
    CHECK(diamond_lower_bound_ite(shifted, beta) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(diamond_lower_bound_ite(h2q, 0.5) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

  // Known-spectrum oracle: H = U diag(lambda) U^dag.
  RandomStream rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> lambda = {rng.uniform() * 4.0 - 2.0, rng.uniform() * 4.0 - 2.0,
                                  rng.uniform() * 4.0 - 2.0, rng.uniform() * 4.0 - 2.0};
    Matrix h = test::hermitian_with_spectrum(lambda, rng);
    double beta = rng.uniform();
    double lambda0 = *std::min_element(lambda.begin(), lambda.end());
    double expected = std::exp(-2.0 * beta * lambda0);
    CHECK(std::abs(diamond_lower_bound_ite(h, beta) - expected) <= 1e-12 * expected);
  }
}

TEST_CASE("reconstruct_residual") {
  BasisSet ebl = ebl_single_qubit();
  Matrix zp = pauli_z() + Matrix::identity(2);
  QuantumOperation target = ite_map(zp, 0.1);
  QPDecomposition d = solve_exact(target, ebl);
  CHECK(reconstruct_residual(d, ebl, target) <= 1e-8);

  SUBCASE("single-coefficient perturbation") {
    double eps = 1e-3;
    QPDecomposition perturbed = d;
    perturbed.coefficients[5] += eps;
    double base = d.residual;
    double cnorm = choi_of(ebl.elements[5].op).frobenius_norm();
    double got = reconstruct_residual(perturbed, ebl, target);
    CHECK(std::abs(got - eps * cnorm) <= 1e-9 + base);
  }

  SUBCASE("zero coefficients against the identity target") {
    QPDecomposition zero;
    zero.coefficients.assign(16, 0.0);
    double got = reconstruct_residual(zero, ebl, QuantumOperation::identity(1));
    CHECK(got == doctest::Approx(2.0).epsilon(1e-12));  // ||C(I)||_F = 2^k
  }
}

TEST_CASE("qpd JSON serialization") {
  BasisSet ebl = ebl_single_qubit();
  QPDecomposition d = solve_exact(QuantumOperation::identity(1), ebl);
  nlohmann::json j = qpd_to_json(d);
  CHECK(j["basis_label"] == "ebl");
  CHECK(j["gamma"].get<double>() == doctest::Approx(1.0));
  CHECK(j["coefficients"].size() == 16);
}
