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
#include <map>
#include <set>

#include "qpdite/basis.hpp"
#include "qpdite/clifford.hpp"
#include "qpdite/ite.hpp"
#include "qpdite/linalg.hpp"
#include "qpdite/tpq.hpp"
#include "test_support.hpp"

using namespace qpdite;

TEST_CASE("symplectic_from_index enumerates the group exactly") {
  for (int n : {1, 2}) {
    uint64_t order = symplectic_group_order(n);
    std::set<std::string> seen;
    for (uint64_t i = 0; i < order; ++i) {
      auto rows = symplectic_from_index(i, n);
      std::string key;
      for (const auto& row : rows)
        for (uint8_t b : row) key.push_back(b ? '1' : '0');
      seen.insert(key);
      // Symplectic relations: <row_a, row_b> = 1 iff partner rows.
      for (size_t a = 0; a < rows.size(); ++a) {
        for (size_t b = 0; b < rows.size(); ++b) {
          int inner = 0;
          for (size_t k = 0; k < rows[a].size(); k += 2) {
            inner ^= (rows[a][k] & rows[b][k + 1]) ^ (rows[a][k + 1] & rows[b][k]);
          }
          CHECK(inner == (((a ^ 1) == b) ? 1 : 0));
        }
      }
    }
    CHECK(seen.size() == order);
  }
}

TEST_CASE("group orders") {
  CHECK(symplectic_group_order(1) == 6);
  CHECK(symplectic_group_order(2) == 720);
  CHECK(clifford_group_order(1) == 24);
  CHECK(clifford_group_order(2) == 11520);
}

TEST_CASE("single-qubit Clifford sampling is uniform (chi-square, 24k draws)") {
  const int draws = 24000;
  std::map<std::string, int> counts;
  for (int i = 0; i < draws; ++i) {
    RandomStream rng = RandomStream::derive(77, {stream_domain::kClifford, (uint64_t)i});
    CliffordElement c = random_clifford(1, rng);
    counts[c.canonical_key()]++;
  }
  CHECK(counts.size() == 24);
  double expected = draws / 24.0;
  double chi2 = 0.0;
  for (const auto& [key, cnt] : counts) {
    double d = cnt - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < test::chi2_quantile_99(23));
}

TEST_CASE("two-qubit Clifford sampling is uniform over canonical forms") {
  const int draws = 115200;  // 10 per canonical form
  std::map<std::string, int> counts;
  for (int i = 0; i < draws; ++i) {
    RandomStream rng = RandomStream::derive(101, {stream_domain::kClifford, (uint64_t)i});
    CliffordElement c = random_clifford(2, rng);
    counts[c.canonical_key()]++;
  }
  CHECK(counts.size() <= 11520);
  double expected = draws / 11520.0;
  long seen_draws = 0;
  for (const auto& [key, cnt] : counts) seen_draws += cnt;
  CHECK(seen_draws == draws);
  double chi2 = 0.0;
  for (const auto& [key, cnt] : counts) {
    double d = cnt - expected;
    chi2 += d * d / expected;
  }
  // Bins never hit contribute expected each.
  chi2 += (11520.0 - counts.size()) * expected;
  CHECK(chi2 < test::chi2_quantile_99(11519));
}

TEST_CASE("tableau images match unitary conjugation") {
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 6; ++trial) {
      RandomStream rng = RandomStream::derive(4242, {(uint64_t)n, (uint64_t)trial});
      CliffordElement c = random_clifford(n, rng);
      const Matrix& u = c.unitary();
      CHECK(frobenius_distance(u * u.adjoint(), Matrix::identity(1 << n)) < 1e-9);
      for (int q = 0; q < n; ++q) {
        std::string zs(n, 'I'), xs(n, 'I');
        zs[q] = 'Z';
        xs[q] = 'X';
        Matrix uzu = u * pauli_string_matrix(zs) * u.adjoint();
        Matrix uxu = u * pauli_string_matrix(xs) * u.adjoint();
        CHECK(frobenius_distance(uzu, c.image_z(q).matrix()) < 1e-9);
        CHECK(frobenius_distance(uxu, c.image_x(q).matrix()) < 1e-9);
      }
    }
  }
}

TEST_CASE("random_pauli properties") {
  std::map<std::string, int> counts;
  const int draws = 15000;
  for (int i = 0; i < draws; ++i) {
    RandomStream rng = RandomStream::derive(9, {stream_domain::kPauli, (uint64_t)i});
    PauliObservable p = random_pauli(2, rng);
    counts[p.label]++;
    CHECK(p.label != "II");
  }
  CHECK(counts.size() == 15);
  double expected = draws / 15.0;
  double chi2 = 0.0;
  for (const auto& [key, cnt] : counts) {
    double d = cnt - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < test::chi2_quantile_99(14));

  RandomStream rng = RandomStream::derive(10, {stream_domain::kPauli});
  for (int i = 0; i < 5; ++i) {
    PauliObservable p = random_pauli(3, rng);
    CHECK(norms(p.matrix).operator_norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(frobenius_distance(p.matrix * p.matrix, Matrix::identity(8)) < 1e-12);
  }
}

TEST_CASE("gibbs_state") {
  Matrix h = heisenberg_2q(true).terms[0].h;

  SUBCASE("beta = 0 is maximally mixed") {
    GibbsState g = gibbs_state(h, 0.0);
    CHECK(frobenius_distance(g.rho, cdouble(0.25, 0.0) * Matrix::identity(4)) < 1e-12);
    CHECK(g.partition_function == doctest::Approx(4.0));
  }

  SUBCASE("large beta projects onto the ground space") {
    GibbsState g = gibbs_state(h, 60.0);
    // Shifted Heisenberg ground space is the triplet sector (3-fold).
    EigenSystem es = eigh(h);
    Matrix proj(4, 4);
    for (int k = 0; k < 3; ++k) {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          proj(i, j) += es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
    }
    proj *= cdouble(1.0 / 3.0, 0.0);
    CHECK(frobenius_distance(g.rho, proj) < 1e-9);
  }

  SUBCASE("energy decreases monotonically in beta") {
    double prev = 1e300;
    for (double beta : {0.0, 0.2, 0.5, 1.0, 2.0}) {
      GibbsState g = gibbs_state(h, beta);
      double e = (h * g.rho).trace().real();
      CHECK(e <= prev + 1e-12);
      prev = e;
    }
  }

  SUBCASE("unit trace") {
    GibbsState g = gibbs_state(h, 0.7);
    CHECK(g.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("exact TPQ state construction is normalized") {
  LocalHamiltonian ham = heisenberg_chain_1d(3, false);
  Matrix ite_op = herm_exp(ham.dense(), -0.02);
  for (int i = 0; i < 4; ++i) {
    RandomStream rng = RandomStream::derive(64, {stream_domain::kClifford, (uint64_t)i});
    CliffordElement c = random_clifford(3, rng);
    StateVector psi = StateVector::computational_basis(3, 0);
    psi.amp = c.unitary().apply_to(psi.amp);
    psi.amp = ite_op.apply_to(psi.amp);
    psi.normalize();
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("exact TPQ states are normalized and concentrate with n") {
  TpqConfig cfg;
  cfg.hamiltonian = heisenberg_chain_1d(4, false);
  cfg.ite_exponent = 0.02;
  cfg.num_states = 6;
  cfg.num_paulis = 12;
  cfg.mode = TpqMode::exact_ite;
  cfg.seed = 5;
  TpqResult r4 = tpq_experiment(cfg);
  CHECK(r4.gibbs_beta == doctest::Approx(0.04));
  CHECK(r4.cells.size() == 72);
  for (const auto& c : r4.cells) {
    CHECK(std::abs(c.tpq_value) <= 1.0 + 1e-9);
  }

  // Thermal errors shrink with system size (averaged over a few seeds).
  double mean4 = 0.0, mean6 = 0.0;
  int seeds = 6;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = 100 + s;
    cfg.hamiltonian = heisenberg_chain_1d(4, false);
    mean4 += tpq_experiment(cfg).mean_abs_error;
    cfg.hamiltonian = heisenberg_chain_1d(6, false);
    mean6 += tpq_experiment(cfg).mean_abs_error;
  }
  CHECK(mean6 / seeds < mean4 / seeds);
}

TEST_CASE("beta = 0 TPQ states average to the maximally mixed value") {
  // With no imaginary-time evolution the TPQ value is <0|U^dag O U|0>, whose
  // Clifford average vanishes for traceless O.
  int n = 2;
  PauliObservable obs{"XZ", pauli_string_matrix("XZ")};
  double sum = 0.0, sum_sq = 0.0;
  int draws = 400;
  for (int i = 0; i < draws; ++i) {
    RandomStream rng = RandomStream::derive(31337, {stream_domain::kClifford, (uint64_t)i});
    CliffordElement c = random_clifford(n, rng);
    StateVector psi = StateVector::computational_basis(n, 0);
    psi.amp = c.unitary().apply_to(psi.amp);
    double v = expectation_value(obs.matrix, psi);
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / draws;
  double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
  CHECK(std::abs(mean) <= 3.0 * se + 1e-12);
}

TEST_CASE("simulated TPQ agrees with exact TPQ at n = 3") {
  TpqConfig cfg;
  cfg.hamiltonian = heisenberg_chain_1d(3, false);
  cfg.ite_exponent = 0.02;
  cfg.num_states = 4;
  cfg.num_paulis = 8;
  cfg.seed = 17;
  cfg.mode = TpqMode::exact_ite;
  TpqResult exact = tpq_experiment(cfg);

  cfg.mode = TpqMode::simulated_ite;
  cfg.num_samples = 2048;
  cfg.shots = 128;
  cfg.trotter_r = 1;
  cfg.workers = 2;
  TpqResult sim = tpq_experiment(cfg);

  REQUIRE(sim.cells.size() == exact.cells.size());
  double combined =
      std::sqrt(sim.std_error * sim.std_error + exact.std_error * exact.std_error);
  CHECK(std::abs(sim.mean_abs_error - exact.mean_abs_error) <= 3.0 * combined);
  CHECK(sim.mean_abs_error <= 2.0 * exact.mean_abs_error);
}
