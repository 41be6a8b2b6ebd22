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
#include "qpdite/channels.hpp"
#include "qpdite/ite.hpp"
#include "qpdite/linalg.hpp"
#include "test_support.hpp"

using namespace qpdite;

TEST_CASE("choi of the single-qubit identity channel") {
  Matrix c = choi_of(QuantumOperation::identity(1));
  CHECK(c.trace().real() == doctest::Approx(2.0));
  EigenSystem es = eigh(c);
  int rank = 0;
  for (double v : es.eigenvalues)
    if (std::abs(v) > 1e-10) ++rank;
  CHECK(rank == 1);
}

TEST_CASE("choi of the Z-basis projector") {
  Matrix p0 = Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  Matrix c = choi_of(QuantumOperation::single_kraus(p0));
  Matrix expected(4, 4);
  expected(0, 0) = 1.0;  // |00><00|
  CHECK(frobenius_distance(c, expected) < 1e-14);
  CHECK(c.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("choi is additive over Kraus terms and scales linearly") {
  RandomStream rng(5);
  Matrix k1 = test::random_matrix(2, 2, rng);
  Matrix k2 = test::random_matrix(2, 2, rng);
  QuantumOperation both;
  both.qubit_count = 1;
  both.kraus = {k1, k2};
  Matrix sum = choi_of(QuantumOperation::single_kraus(k1));
  sum += choi_of(QuantumOperation::single_kraus(k2));
  CHECK(frobenius_distance(choi_of(both), sum) < 1e-10);

  double c = 0.37;
  Matrix scaled = choi_of(QuantumOperation::single_kraus(cdouble(std::sqrt(c), 0.0) * k1));
  Matrix direct = cdouble(c, 0.0) * choi_of(QuantumOperation::single_kraus(k1));
  CHECK(frobenius_distance(scaled, direct) < 1e-10);
}

TEST_CASE("apply preserves trace for TP operations") {
  RandomStream rng(9);
  BasisSet ebl = ebl_single_qubit();
  Matrix rho = test::random_hermitian(2, rng);
  rho = rho * rho.adjoint();  // PSD
  rho *= cdouble(1.0 / rho.trace().real(), 0.0);
  for (int i = 0; i < 10; ++i) {
    Matrix out = apply(ebl.elements[i].op, rho);
    CHECK(out.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("projector applied to |+> has trace 1/2") {
  Matrix p0 = Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  Matrix plus = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  Matrix out = apply(QuantumOperation::single_kraus(p0), plus);
  CHECK(out.trace().real() == doctest::Approx(0.5));
}

TEST_CASE("ITE application trace matches the dense route") {
  Matrix h = pauli_string_matrix("XX");
  h += pauli_string_matrix("YY");
  h += pauli_string_matrix("ZZ");
  h *= cdouble(-1.0, 0.0);
  h += Matrix::identity(4);
  double beta = 0.05;
  QuantumOperation op = ite_map(h, beta);
  Matrix rho = StateVector::computational_basis(2, 1).density();  // |01><01|
  Matrix out = apply(op, rho);
  // Tr[e^{-beta H} rho e^{-beta H}] = Tr[e^{-2 beta H} rho]
  double expected = (herm_exp(h, -2.0 * beta) * rho).trace().real();
  CHECK(out.trace().real() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("apply rejects dimension mismatch") {
  CHECK_THROWS_AS(apply(QuantumOperation::identity(1), Matrix::identity(4)),
                  std::invalid_argument);
}

TEST_CASE("embed basics") {
  QuantumOperation id3 = embed(QuantumOperation::identity(1), {0}, 3);
  CHECK(frobenius_distance(id3.kraus[0], Matrix::identity(8)) == 0.0);
  CHECK(id3.trace_preserving);

  // Z on qubit 1 of 2 acts as I (x) Z.
  QuantumOperation z1 = embed(QuantumOperation::unitary_op(pauli_z()), {1}, 2);
  CHECK(frobenius_distance(z1.kraus[0], kron(Matrix::identity(2), pauli_z())) == 0.0);
  Matrix rho01 = StateVector::computational_basis(2, 1).density();
  Matrix out = apply(z1, rho01);
  CHECK(frobenius_distance(out, rho01) < 1e-14);  // |01> is a Z eigenstate
  StateVector psi = StateVector::computational_basis(2, 1);
  apply_local(psi, pauli_z(), {1});
  CHECK(psi.amp[1].real() == doctest::Approx(-1.0));
}

TEST_CASE("embed on non-adjacent qubits matches the permutation oracle") {
  RandomStream rng(23);
  Matrix u = test::random_unitary(4, rng);
  QuantumOperation emb = embed(QuantumOperation::unitary_op(u), {0, 2}, 3);

  // Brute-force oracle: permutation matrix mapping (q0,q1,q2) -> (q0,q2,q1),
  // then conjugate the Kronecker extension.
  Matrix perm(8, 8);
  for (int b = 0; b < 8; ++b) {
    int q0 = (b >> 2) & 1, q1 = (b >> 1) & 1, q2 = b & 1;
    int target = (q0 << 2) | (q2 << 1) | q1;
    perm(target, b) = 1.0;
  }
  Matrix expected = perm.adjoint() * kron(u, Matrix::identity(2)) * perm;
  CHECK(frobenius_distance(emb.kraus[0], expected) < 1e-12);
}

TEST_CASE("embed rejects bad support") {
  CHECK_THROWS_AS(embed(QuantumOperation::identity(1), {3}, 2), std::out_of_range);
  CHECK_THROWS_AS(embed(QuantumOperation::identity(2), {1, 1}, 3), std::invalid_argument);
}

TEST_CASE("classify the EBL dictionary") {
  BasisSet ebl = ebl_single_qubit();
  for (int i = 0; i < 16; ++i) {
    Classification c = classify(ebl.elements[i].op);
    CHECK(c.cp);
    CHECK(c.tp == (i < 10));
  }
}

TEST_CASE("classify the ITE map") {
  Matrix h = pauli_string_matrix("XX");
  h += pauli_string_matrix("YY");
  h += pauli_string_matrix("ZZ");
  h *= cdouble(-1.0, 0.0);
  Classification c = classify(ite_map(h, 0.3));
  CHECK(c.cp);
  CHECK_FALSE(c.tp);

  // beta = 0 is the identity channel.
  Classification c0 = classify(ite_map(h, 0.0));
  CHECK(c0.cp);
  CHECK(c0.tp);
}

TEST_CASE("CP operations map PSD states to PSD states") {
  RandomStream rng(31);
  BasisSet ebl = ebl_single_qubit();
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = test::random_matrix(2, 2, rng);
    Matrix rho = a * a.adjoint();
    rho *= cdouble(1.0 / rho.trace().real(), 0.0);
    const auto& e = ebl.elements[rng.uniform_int(16)];
    Matrix out = apply(e.op, rho);
    Matrix herm = cdouble(0.5, 0.0) * (out + out.adjoint());
    EigenSystem es = eigh(herm);
    CHECK(es.eigenvalues.front() >= -1e-9);
  }
}

TEST_CASE("statevector local application agrees with dense embedding") {
  RandomStream rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 3;
    Matrix u = test::random_unitary(4, rng);
    std::vector<int> support = trial % 2 == 0 ? std::vector<int>{0, 2} : std::vector<int>{2, 1};
    StateVector psi;
    psi.n = n;
    psi.amp.resize(8);
    for (auto& a : psi.amp) a = cdouble(rng.uniform() - 0.5, rng.uniform() - 0.5);
    psi.normalize();

    StateVector via_local = psi;
    apply_local(via_local, u, support);
    QuantumOperation emb = embed(QuantumOperation::unitary_op(u), support, n);
    std::vector<cdouble> via_dense = emb.kraus[0].apply_to(psi.amp);
    for (int i = 0; i < 8; ++i) {
      CHECK(std::abs(via_local.amp[i] - via_dense[i]) < 1e-12);
    }
  }
}

TEST_CASE("projective kind detection") {
  BasisSet ebl = ebl_single_qubit();
  for (int i = 10; i < 16; ++i) {
    const QuantumOperation& op = ebl.elements[i].op;
    CHECK(op.kind == OpKind::projective);
    const Matrix& proj = op.projector;
    CHECK(frobenius_distance(proj * proj, proj) < 1e-9);
    CHECK(eigh(proj).eigenvalues.back() == doctest::Approx(1.0).epsilon(1e-9));
    // Rank 1.
    double tr = proj.trace().real();
    CHECK(tr == doctest::Approx(1.0).epsilon(1e-9));
  }
}
