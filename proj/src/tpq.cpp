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

#include "qpdite/tpq.hpp"

#include <cmath>
#include <stdexcept>

#include "qpdite/basis.hpp"
#include "qpdite/linalg.hpp"
#include "qpdite/qpd.hpp"
#include "qpdite/sampler.hpp"

namespace qpdite {

PauliObservable random_pauli(int n, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("random_pauli: need n >= 1");
  // Uniform over the 4^n - 1 non-identity strings.
  uint64_t code = rng.uniform_int((uint64_t(1) << (2 * n)) - 1) + 1;
  static const char symbols[] = "IXYZ";
  std::string label(n, 'I');
  for (int q = 0; q < n; ++q) {
    label[q] = symbols[(code >> (2 * q)) & 3];
  }
  PauliObservable p;
  p.label = label;
  p.matrix = pauli_string_matrix(label);
  return p;
}

PauliObservable random_pauli(int n, uint64_t seed) {
  RandomStream rng = RandomStream::derive(seed, {stream_domain::kPauli});
  return random_pauli(n, rng);
}

GibbsState gibbs_state(const Matrix& h, double beta) {
  GibbsState g;
  Matrix w = herm_exp(h, -beta);
  g.partition_function = w.trace().real();
  if (g.partition_function <= 0.0) {
    throw std::runtime_error("gibbs_state: nonpositive partition function");
  }
  w *= cdouble(1.0 / g.partition_function, 0.0);
  g.rho = std::move(w);
  return g;
}

TpqResult tpq_experiment(const TpqConfig& cfg) {
  const LocalHamiltonian& ham = cfg.hamiltonian;
  int n = ham.n;
  if (n < 1 || n > 8) throw std::invalid_argument("tpq_experiment: n out of range");
  if (cfg.num_states < 1 || cfg.num_paulis < 1) {
    throw std::invalid_argument("tpq_experiment: counts must be >= 1");
  }

  TpqResult result;
  result.n = n;
  result.mode = cfg.mode;
  result.ite_exponent = cfg.ite_exponent;
  result.gibbs_beta = 2.0 * cfg.ite_exponent;

  Matrix h_dense = ham.dense();
  GibbsState gibbs = gibbs_state(h_dense, result.gibbs_beta);
  Matrix ite_op = herm_exp(h_dense, -cfg.ite_exponent);

  // Simulated mode shares one decomposition across all (translation
  // invariant) terms, solved over the product EBL dictionary after shifting
  // each local term to zero ground energy.
  BasisSet basis;
  QPDecomposition qpd;
  TrotterPlan plan;
  if (cfg.mode == TpqMode::simulated_ite) {
    ShiftResult shifted = shift_to_psd(ham);
    plan = trotter_plan(shifted.hamiltonian, cfg.ite_exponent, cfg.trotter_r);
    int k = static_cast<int>(shifted.hamiltonian.terms[0].support.size());
    BasisSet single = ebl_single_qubit();
    basis = single;
    for (int i = 1; i < k; ++i) basis = product_basis(basis, single);
    qpd = solve_exact(ite_map(shifted.hamiltonian.terms[0].h, cfg.ite_exponent / cfg.trotter_r),
                      basis);
    // Distinct terms would each need their own decomposition.
    for (const LocalTerm& t : shifted.hamiltonian.terms) {
      if (frobenius_distance(t.h, shifted.hamiltonian.terms[0].h) > 1e-12) {
        throw std::invalid_argument(
            "tpq_experiment: simulated mode requires a translation-invariant model");
      }
    }
  }

  for (int si = 0; si < cfg.num_states; ++si) {
    RandomStream crng =
        RandomStream::derive(cfg.seed, {stream_domain::kClifford, static_cast<uint64_t>(si)});
    CliffordElement cl = random_clifford(n, crng);

    StateVector initial = StateVector::computational_basis(n, 0);
    initial.amp = cl.unitary().apply_to(initial.amp);

    StateVector exact_state = initial;
    if (cfg.mode == TpqMode::exact_ite) {
      exact_state.amp = ite_op.apply_to(exact_state.amp);
      exact_state.normalize();
    }

    for (int pi = 0; pi < cfg.num_paulis; ++pi) {
      RandomStream prng = RandomStream::derive(
          cfg.seed, {stream_domain::kPauli, static_cast<uint64_t>(si), static_cast<uint64_t>(pi)});
      PauliObservable pauli = random_pauli(n, prng);

      TpqCell cell;
      cell.state_index = si;
      cell.pauli = pauli.label;
      cell.gibbs_value = (pauli.matrix * gibbs.rho).trace().real();

      if (cfg.mode == TpqMode::exact_ite) {
        cell.tpq_value = expectation_value(pauli.matrix, exact_state);
      } else {
        std::vector<SamplingStep> steps;
        steps.reserve(plan.steps.size());
        for (const TrotterStep& ts : plan.steps) {
          steps.push_back(SamplingStep{&qpd, &basis, ts.support});
        }
        SamplerOptions opt;
        opt.shots = cfg.shots;
        opt.workers = cfg.workers;
        opt.seed = RandomStream::derive(cfg.seed, {stream_domain::kTpqRun,
                                                   static_cast<uint64_t>(si),
                                                   static_cast<uint64_t>(pi)})
                       .next_u64();
        Observable obs = Observable::pauli_string(pauli.label);
        EstimatorResult est = run_algorithm2(steps, initial, obs, cfg.num_samples, opt);
        if (!est.ratio_defined) {
          throw std::runtime_error("tpq_experiment: undefined sampled expectation");
        }
        cell.tpq_value = est.ratio;
      }
      cell.abs_error = std::abs(cell.tpq_value - cell.gibbs_value);
      result.cells.push_back(std::move(cell));
    }
  }

  double sum = 0.0;
  for (const TpqCell& c : result.cells) sum += c.abs_error;
  result.mean_abs_error = sum / result.cells.size();
  double var = 0.0;
  for (const TpqCell& c : result.cells) {
    double d = c.abs_error - result.mean_abs_error;
    var += d * d;
  }
  size_t m = result.cells.size();
  if (m > 1) result.std_error = std::sqrt(var / (double(m) * (m - 1)));
  return result;
}

}  // namespace qpdite
