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

#include "qpdite/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "qpdite/linalg.hpp"
#include "qpdite/rng.hpp"

namespace qpdite {

long required_samples(double gamma_total, double eps, double delta) {
  if (eps <= 0.0) throw std::invalid_argument("required_samples: eps must be positive");
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("required_samples: delta must lie in (0, 1)");
  }
  double n = 2.0 * gamma_total * gamma_total / (eps * eps) * std::log(1.0 / delta);
  return static_cast<long>(std::ceil(n));
}

Observable Observable::general(Matrix a) {
  Observable o;
  o.matrix = std::move(a);
  o.involution = false;
  return o;
}

Observable Observable::pauli_string(const std::string& s) {
  Observable o;
  o.matrix = pauli_string_matrix(s);
  o.involution = true;
  return o;
}

void parallel_for(long n, int workers, const std::function<void(long, long)>& fn) {
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  workers = static_cast<int>(std::min<long>(workers, n));
  std::vector<std::thread> pool;
  long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long begin = w * chunk;
    long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

namespace {

/// Per-step data prepared once before the trial loop.
struct PreparedStep {
  std::vector<double> cumulative;
  std::vector<int> signs;
  double gamma = 1.0;
  std::vector<int> support;
  const BasisSet* basis = nullptr;
  // Exact mode only: embedded operations on the full register.
  std::vector<QuantumOperation> embedded;
};

int sample_categorical(const std::vector<double>& cumulative, double u) {
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return static_cast<int>(cumulative.size()) - 1;
  return static_cast<int>(it - cumulative.begin());
}

/// Stochastic application of one basis element to a pure state: samples the
/// two-outcome post-selection (non-TP elements) and a Kraus branch in a
/// single uniform draw. Returns false on post-selection failure.
bool apply_element_statevector(const BasisElement& e, const std::vector<int>& support,
                               StateVector& psi, RandomStream& rng,
                               std::vector<StateVector>& scratch) {
  size_t nk = e.op.kraus.size();
  if (nk == 1 && e.op.trace_preserving) {
    apply_local(psi, e.op.kraus[0], support);
    return true;
  }
  if (scratch.size() < nk) scratch.resize(nk);
  std::vector<double> weights(nk);
  double total = 0.0;
  for (size_t m = 0; m < nk; ++m) {
    scratch[m] = psi;
    apply_local(scratch[m], e.op.kraus[m], support);
    double w = scratch[m].norm();
    weights[m] = w * w;
    total += weights[m];
  }
  double u = rng.uniform();
  if (!e.op.trace_preserving && u >= total) return false;
  if (e.op.trace_preserving) u *= total;  // guard roundoff in sum K^dag K = 1
  double acc = 0.0;
  size_t pick = nk - 1;
  for (size_t m = 0; m < nk; ++m) {
    acc += weights[m];
    if (u < acc) {
      pick = m;
      break;
    }
  }
  psi = scratch[pick];
  psi.normalize();
  return true;
}

/// Exact-mode application: the full channel acts on the density operator and
/// only the post-selection outcome is sampled. Returns false on failure.
bool apply_element_density(const QuantumOperation& embedded, Matrix& rho, RandomStream& rng) {
  Matrix next = apply(embedded, rho);
  double p = next.trace().real();
  if (embedded.trace_preserving) {
    rho = next;
    if (p > 0.0) rho *= cdouble(1.0 / p, 0.0);  // counteract drift
    return true;
  }
  double u = rng.uniform();
  if (u >= p) return false;
  if (p <= 0.0) return false;
  rho = next;
  rho *= cdouble(1.0 / p, 0.0);
  return true;
}

struct ObservableMeasurer {
  const Observable* obs;
  int shots;
  // General (non-involution) shot mode: eigendecomposition of A.
  EigenSystem eigensystem;
  bool has_eigensystem = false;

  double measure_statevector(const StateVector& psi, RandomStream& rng) const {
    if (shots <= 0) return expectation_value(obs->matrix, psi);
    if (obs->involution) {
      double mean = expectation_value(obs->matrix, psi);
      double p_plus = std::clamp(0.5 * (1.0 + mean), 0.0, 1.0);
      long plus = 0;
      for (int s = 0; s < shots; ++s) {
        if (rng.uniform() < p_plus) ++plus;
      }
      return (2.0 * plus - shots) / static_cast<double>(shots);
    }
    // Born weights in the eigenbasis of A.
    int d = psi.dim();
    std::vector<double> cumulative(d, 0.0);
    double acc = 0.0;
    for (int m = 0; m < d; ++m) {
      cdouble ov = 0.0;
      for (int i = 0; i < d; ++i) ov += std::conj(eigensystem.eigenvectors(i, m)) * psi.amp[i];
      acc += std::norm(ov);
      cumulative[m] = acc;
    }
    if (acc > 0.0 && std::abs(acc - 1.0) > 1e-12) {
      for (double& c : cumulative) c /= acc;
    }
    double sum = 0.0;
    for (int s = 0; s < shots; ++s) {
      int m = sample_categorical(cumulative, rng.uniform());
      sum += eigensystem.eigenvalues[m];
    }
    return sum / shots;
  }

  double measure_density(const Matrix& rho) const {
    return (obs->matrix * rho).trace().real();
  }
};

}  // namespace

EstimatorResult run_algorithm2(const std::vector<SamplingStep>& steps, const StateVector& rho0,
                               const Observable& a, long num_samples,
                               const SamplerOptions& options) {
  if (num_samples < 1) throw std::invalid_argument("run_algorithm2: need at least one sample");
  if (steps.empty()) throw std::invalid_argument("run_algorithm2: empty step sequence");
  int n = rho0.n;
  if (a.matrix.rows() != rho0.dim()) {
    throw std::invalid_argument("run_algorithm2: observable dimension mismatch");
  }
  if (!a.involution) {
    double onorm = norms(a.matrix).operator_norm;
    if (onorm > 1.0 + 1e-9) {
      throw std::invalid_argument("run_algorithm2: observable norm " + std::to_string(onorm) +
                                  " exceeds 1");
    }
  }
  const bool exact_mode = options.shots <= 0;

  std::vector<PreparedStep> prepared;
  prepared.reserve(steps.size());
  double gamma_total = 1.0;
  for (const SamplingStep& s : steps) {
    if (s.qpd == nullptr || s.basis == nullptr) {
      throw std::invalid_argument("run_algorithm2: step missing decomposition or basis");
    }
    if (s.qpd->coefficients.size() != s.basis->size()) {
      throw std::invalid_argument("run_algorithm2: decomposition/basis size mismatch");
    }
    PreparedStep p;
    p.cumulative = s.qpd->cumulative();
    p.signs = s.qpd->signs;
    p.gamma = s.qpd->gamma;
    p.support = s.support;
    p.basis = s.basis;
    if (exact_mode) {
      p.embedded.reserve(s.basis->size());
      for (const BasisElement& e : s.basis->elements) {
        p.embedded.push_back(embed(e.op, s.support, n));
      }
    }
    gamma_total *= p.gamma;
    prepared.push_back(std::move(p));
  }

  ObservableMeasurer measurer{&a, options.shots, {}, false};
  if (!exact_mode && !a.involution) {
    measurer.eigensystem = eigh(a.matrix);
    measurer.has_eigensystem = true;
  }

  StateVector psi0 = rho0;
  psi0.normalize();
  Matrix rho_init = exact_mode ? psi0.density() : Matrix();

  std::vector<double> w_values(num_samples, 0.0);
  std::vector<double> m_values(num_samples, 0.0);
  if (options.records != nullptr) options.records->assign(num_samples, SampleRecord{});

  size_t num_steps = prepared.size();
  auto worker = [&](long begin, long end) {
    std::vector<StateVector> scratch;
    std::vector<int> indices(num_steps);
    for (long j = begin; j < end; ++j) {
      RandomStream rng =
          RandomStream::derive(options.seed, {stream_domain::kTrial, static_cast<uint64_t>(j)});
      // Draw the full index tuple up front (the joint distribution is the
      // product of the per-step distributions).
      int sign_product = 1;
      for (size_t k = 0; k < num_steps; ++k) {
        indices[k] = sample_categorical(prepared[k].cumulative, rng.uniform());
        sign_product *= prepared[k].signs[indices[k]];
      }
      // Execute until a post-selection fails; aborted trials weigh zero.
      bool success = true;
      size_t executed = 0;
      StateVector psi;
      Matrix rho;
      if (exact_mode) {
        rho = rho_init;
      } else {
        psi = psi0;
      }
      for (size_t k = 0; k < num_steps && success; ++k) {
        const PreparedStep& p = prepared[k];
        if (exact_mode) {
          success = apply_element_density(p.embedded[indices[k]], rho, rng);
        } else {
          success = apply_element_statevector(p.basis->elements[indices[k]], p.support, psi, rng,
                                              scratch);
        }
        ++executed;
      }
      double a_value = 0.0;
      if (success) {
        a_value = exact_mode ? measurer.measure_density(rho)
                             : measurer.measure_statevector(psi, rng);
      }
      double w = success ? gamma_total * sign_product : 0.0;
      w_values[j] = w;
      m_values[j] = w * a_value;
      if (options.records != nullptr) {
        SampleRecord& rec = (*options.records)[j];
        rec.indices.assign(indices.begin(), indices.end());
        rec.signs.resize(num_steps);
        for (size_t k = 0; k < num_steps; ++k) rec.signs[k] = prepared[k].signs[indices[k]];
        rec.indicators.assign(executed, 1);
        if (!success) rec.indicators.back() = 0;
        rec.a_value = a_value;
        rec.weight_w = w;
        rec.weight_m = w * a_value;
      }
    }
  };
  parallel_for(num_samples, std::max(1, options.workers), worker);

  // Deterministic merge: accumulate in trial order, independent of workers.
  double w_sum = 0.0, m_sum = 0.0;
  for (long j = 0; j < num_samples; ++j) {
    w_sum += w_values[j];
    m_sum += m_values[j];
  }
  EstimatorResult r;
  r.num_samples = num_samples;
  r.gamma_total = gamma_total;
  r.seed = options.seed;
  r.trace_estimate = w_sum / num_samples;
  r.obs_estimate = m_sum / num_samples;
  double w_var = 0.0, m_var = 0.0, wm_cov = 0.0;
  for (long j = 0; j < num_samples; ++j) {
    double dw = w_values[j] - r.trace_estimate;
    double dm = m_values[j] - r.obs_estimate;
    w_var += dw * dw;
    m_var += dm * dm;
    wm_cov += dw * dm;
  }
  if (num_samples > 1) {
    double scale = double(num_samples) * (num_samples - 1);
    r.trace_std_error = std::sqrt(w_var / scale);
    r.obs_std_error = std::sqrt(m_var / scale);
  }
  if (r.trace_estimate != 0.0 && std::isfinite(r.obs_estimate / r.trace_estimate)) {
    r.ratio = r.obs_estimate / r.trace_estimate;
    r.ratio_defined = true;
    if (num_samples > 1) {
      double scale = double(num_samples) * (num_samples - 1);
      double var = (m_var + r.ratio * r.ratio * w_var - 2.0 * r.ratio * wm_cov) / scale;
      r.ratio_std_error = std::sqrt(std::max(0.0, var)) / std::abs(r.trace_estimate);
    }
  } else {
    r.warnings.push_back("trace estimate is zero; rescaled expectation undefined");
  }
  if (options.target_eps > 0.0 && options.target_delta > 0.0) {
    long need = required_samples(gamma_total, options.target_eps, options.target_delta);
    if (num_samples < need) {
      r.warnings.push_back("N=" + std::to_string(num_samples) + " below Hoeffding budget " +
                           std::to_string(need) + " for requested precision");
    }
  }
  return r;
}

EstimatorResult run_algorithm1(const QPDecomposition& qpd, const BasisSet& basis,
                               const StateVector& rho0, const Observable& a, long num_samples,
                               const SamplerOptions& options) {
  std::vector<int> support(rho0.n);
  for (int i = 0; i < rho0.n; ++i) support[i] = i;
  std::vector<SamplingStep> steps{SamplingStep{&qpd, &basis, std::move(support)}};
  return run_algorithm2(steps, rho0, a, num_samples, options);
}

double exact_rescaled_expectation(
    const std::vector<std::pair<QuantumOperation, std::vector<int>>>& steps, const Matrix& rho0,
    const Matrix& a, int n) {
  Matrix rho = rho0;
  for (const auto& [op, support] : steps) {
    QuantumOperation emb = embed(op, support, n);
    rho = apply(emb, rho);
  }
  double tr = rho.trace().real();
  if (std::abs(tr) < 1e-300) {
    throw std::domain_error("exact_rescaled_expectation: evolved state has zero trace");
  }
  return (a * rho).trace().real() / tr;
}

nlohmann::json estimator_to_json(const EstimatorResult& r) {
  nlohmann::json j;
  j["trace_estimate"] = r.trace_estimate;
  j["obs_estimate"] = r.obs_estimate;
  if (r.ratio_defined) {
    j["ratio"] = r.ratio;
  } else {
    j["ratio"] = nullptr;
  }
  j["num_samples"] = r.num_samples;
  j["gamma_total"] = r.gamma_total;
  j["trace_std_error"] = r.trace_std_error;
  j["obs_std_error"] = r.obs_std_error;
  j["seed"] = r.seed;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

std::string estimator_csv_header() {
  return "experiment,beta,steps,N,shots,seed,gamma_total,trace_est,trace_se,obs_est,obs_se,ratio";
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

std::string estimator_csv_row(const std::string& experiment, double beta, int steps, int shots,
                              const EstimatorResult& r) {
  std::string row = experiment;
  row += "," + fmt_double(beta);
  row += "," + std::to_string(steps);
  row += "," + std::to_string(r.num_samples);
  row += "," + std::to_string(shots);
  row += "," + std::to_string(r.seed);
  row += "," + fmt_double(r.gamma_total);
  row += "," + fmt_double(r.trace_estimate);
  row += "," + fmt_double(r.trace_std_error);
  row += "," + fmt_double(r.obs_estimate);
  row += "," + fmt_double(r.obs_std_error);
  row += ",";
  row += r.ratio_defined ? fmt_double(r.ratio) : "nan";
  return row;
}

}  // namespace qpdite
