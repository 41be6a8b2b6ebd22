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

#include "qpdite/channels.hpp"
#include "qpdite/clifford.hpp"
#include "qpdite/ite.hpp"
#include "qpdite/rng.hpp"

namespace qpdite {

struct PauliObservable {
  std::string label;
  Matrix matrix;
};

/// Uniform non-identity n-qubit Pauli string; operator norm 1.
PauliObservable random_pauli(int n, RandomStream& rng);
PauliObservable random_pauli(int n, uint64_t seed);

struct GibbsState {
  Matrix rho;
  double partition_function = 0.0;
};

/// rho_beta = e^{-beta H} / Z by dense exponentiation (n <= 8).
GibbsState gibbs_state(const Matrix& h, double beta);

enum class TpqMode { exact_ite, simulated_ite };

/// Thermal-pure-quantum-state study: random Clifford initial states pushed
/// through e^{-beta H} (exactly, or via the sampled Trotterized
/// decomposition), compared against the Gibbs state of the same model.
struct TpqConfig {
  LocalHamiltonian hamiltonian;       // the physical (unshifted) model
  double ite_exponent = 0.02;         // exponent applied once to the state
  int num_states = 10;
  int num_paulis = 30;
  TpqMode mode = TpqMode::exact_ite;
  // Simulated mode settings.
  long num_samples = 1024;
  int shots = 512;
  int trotter_r = 1;
  uint64_t seed = 0;
  int workers = 1;
};

struct TpqCell {
  int state_index = 0;
  std::string pauli;
  double tpq_value = 0.0;
  double gibbs_value = 0.0;
  double abs_error = 0.0;
};

struct TpqResult {
  int n = 0;
  TpqMode mode = TpqMode::exact_ite;
  double ite_exponent = 0.0;
  double gibbs_beta = 0.0;  // inverse temperature of the reference state
  std::vector<TpqCell> cells;
  double mean_abs_error = 0.0;
  double std_error = 0.0;  // standard error of the mean over cells
};

/// The reference Gibbs state uses inverse temperature 2 * ite_exponent: the
/// state e^{-beta H} U |0..0> enters expectation values through the squared
/// exponential.
TpqResult tpq_experiment(const TpqConfig& cfg);

}  // namespace qpdite
