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
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpdite/basis.hpp"
#include "qpdite/channels.hpp"
#include "qpdite/qpd.hpp"

namespace qpdite {

/// ceil(2 gamma^2 / eps^2 * ln(1/delta)): Hoeffding sample budget for
/// estimating both trace estimators within eps with failure probability
/// delta. For R-step sequences pass gamma_total = prod gamma_k.
long required_samples(double gamma_total, double eps, double delta);

/// Observable with ||A|| <= 1. Pauli observables use the two-outcome
/// fast path; general observables are eigendecomposed once per run.
struct Observable {
  Matrix matrix;
  bool involution = false;  // A^2 = I: shot outcomes are +/-1 Bernoulli draws

  static Observable general(Matrix a);
  static Observable pauli_string(const std::string& s);
};

/// One decomposed map in a sequence, applied to the given support qubits.
struct SamplingStep {
  const QPDecomposition* qpd = nullptr;
  const BasisSet* basis = nullptr;
  std::vector<int> support;
};

/// Per-trial log, mainly for tests and debugging.
struct SampleRecord {
  std::vector<int> indices;     // sampled basis index per step
  std::vector<int> signs;       // sgn(q_i) per step
  std::vector<int> indicators;  // post-selection outcome per executed step
  double a_value = 0.0;         // observable outcome (0 for aborted trials)
  double weight_w = 0.0;        // gamma^R * prod sgn * prod I
  double weight_m = 0.0;        // weight_w * a_value
};

struct EstimatorResult {
  double trace_estimate = 0.0;
  double obs_estimate = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
  long num_samples = 0;
  double gamma_total = 1.0;
  double trace_std_error = 0.0;
  double obs_std_error = 0.0;
  double ratio_std_error = 0.0;  // delta-method error of obs/trace
  uint64_t seed = 0;
  std::vector<std::string> warnings;
};

struct SamplerOptions {
  /// shots > 0: statevector propagation, the observable is measured with
  /// this many eigenvalue draws per trial. shots == 0: exact mode (density
  /// propagation, observable expectation computed without shot noise).
  int shots = 512;
  uint64_t seed = 0;
  int workers = 1;
  /// If both positive, append a warning when N < required_samples(.., eps, delta).
  double target_eps = 0.0;
  double target_delta = 0.0;
  std::vector<SampleRecord>* records = nullptr;
};

/// Monte-Carlo estimate of the rescaled expectation value Tr[A T(rho)] /
/// Tr[T(rho)] for a single decomposed map.
EstimatorResult run_algorithm1(const QPDecomposition& qpd, const BasisSet& basis,
                               const StateVector& rho0, const Observable& a, long num_samples,
                               const SamplerOptions& options);

/// Monte-Carlo estimate for a sequence of decomposed maps applied in order;
/// trials abort (contributing zero weight) at the first failed
/// post-selection.
EstimatorResult run_algorithm2(const std::vector<SamplingStep>& steps, const StateVector& rho0,
                               const Observable& a, long num_samples,
                               const SamplerOptions& options);

/// Dense brute-force reference: applies the operations in order to rho0 and
/// returns Tr[A E(rho)] / Tr[E(rho)]. Throws if the trace vanishes.
double exact_rescaled_expectation(
    const std::vector<std::pair<QuantumOperation, std::vector<int>>>& steps, const Matrix& rho0,
    const Matrix& a, int n);

nlohmann::json estimator_to_json(const EstimatorResult& r);
std::string estimator_csv_header();
std::string estimator_csv_row(const std::string& experiment, double beta, int steps, int shots,
                              const EstimatorResult& r);

/// Run fn(begin, end) over a partition of [0, n) across `workers` threads.
/// Results must be written to per-index slots so the partition does not
/// affect the outcome.
void parallel_for(long n, int workers, const std::function<void(long, long)>& fn);

}  // namespace qpdite
