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

#include "qpdite/ite.hpp"
#include "qpdite/sampler.hpp"
#include "qpdite/tpq.hpp"

namespace qpdite {

struct RunContext {
  std::string out_dir = "out";
  std::string format = "csv";  // csv | json
  uint64_t seed = 1;
  int workers = 1;
};

/// Resolve a Hamiltonian reference: a builder name (heis2q, heis2q-shifted,
/// chain-<n>, chain-<n>-shifted) or a path to a JSON specification file.
LocalHamiltonian resolve_hamiltonian(const std::string& ref);

/// Resolve a decomposition dictionary for k-qubit targets: "ebl" (k=1),
/// "ebl-product", "takagi", or "noisy:<p>" (depolarizing-composed products).
BasisSet resolve_basis(const std::string& ref, int k);

// ---------------------------------------------------------------------------
// gamma-sweep: QPD cost of the ITE map against inverse temperature.

struct GammaSweepConfig {
  std::string hamiltonian = "heis2q-shifted";
  double beta_start = 0.0;
  double beta_end = 1.0;
  double beta_step = 0.05;
};

struct GammaSweepRow {
  double beta = 0.0;
  double gamma_ebl = 0.0;
  double gamma_takagi = 0.0;
  double lower_bound = 0.0;
};

std::vector<GammaSweepRow> gamma_sweep_rows(const GammaSweepConfig& cfg, const RunContext& ctx);
int run_gamma_sweep(const GammaSweepConfig& cfg, const RunContext& ctx);

// ---------------------------------------------------------------------------
// ite-energy: sampled energy of the imaginary-time evolved state per step.

struct IteEnergyConfig {
  std::string hamiltonian = "heis2q";
  std::string basis = "ebl-product";
  int steps = 4;
  double beta_step = 0.01;
  std::vector<long> schedule = {400, 800, 3200, 25600};
  int shots = 512;
  int reps = 10;
  uint64_t initial_state = 0;  // computational basis index
};

struct IteEnergyRow {
  int step = 0;
  double beta = 0.0;
  long num_samples = 0;
  double exact_energy = 0.0;
  double energy_mean = 0.0;
  double energy_std = 0.0;
  double energy_se = 0.0;
  double gamma_total = 0.0;
  std::vector<EstimatorResult> repetitions;
};

std::vector<IteEnergyRow> ite_energy_rows(const IteEnergyConfig& cfg, const RunContext& ctx);
int run_ite_energy(const IteEnergyConfig& cfg, const RunContext& ctx);

// ---------------------------------------------------------------------------
// tpq: thermal-pure-quantum-state error study.

struct TpqCliConfig {
  std::string hamiltonian = "chain";  // "chain" uses heisenberg_chain_1d(n)
  std::vector<int> ns = {4, 5, 6};
  std::string mode = "both";  // exact | simulated | both
  int states = 10;
  int paulis = 30;
  double ite_exponent = 0.02;
  std::vector<long> samples = {1024, 9400, 51200, 409600, 1638400};  // aligned with ns
  int shots = 512;
  int trotter_r = 1;
};

int run_tpq(const TpqCliConfig& cfg, const RunContext& ctx);

// ---------------------------------------------------------------------------
// oracle: sampled estimates against the dense reference, side by side.

struct OracleConfig {
  std::string experiment = "ite-energy";
  std::string hamiltonian = "heis2q";
  std::string basis = "ebl-product";
  int steps = 2;
  double beta_step = 0.01;
  long num_samples = 3200;
  int shots = 512;
  uint64_t initial_state = 0;
};

struct OracleRow {
  int step = 0;
  double sampled = 0.0;
  double std_error = 0.0;
  double exact = 0.0;
  double abs_diff = 0.0;
  double n_sigma = 0.0;
};

std::vector<OracleRow> oracle_rows(const OracleConfig& cfg, const RunContext& ctx);
int run_oracle(const OracleConfig& cfg, const RunContext& ctx);

/// Write {out_dir}/error.json with the failure message; used by the CLI to
/// report machine-readable errors alongside the nonzero exit status.
void write_error_record(const RunContext& ctx, const std::string& subcommand,
                        const std::string& message);

}  // namespace qpdite
