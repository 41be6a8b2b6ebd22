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

#include "qpdite/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "qpdite/linalg.hpp"
#include "qpdite/qpd.hpp"
#include "qpdite/rng.hpp"

namespace qpdite {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& body) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << body;
}

int effective_workers(const RunContext& ctx) {
  if (ctx.workers > 0) return ctx.workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

LocalHamiltonian resolve_hamiltonian(const std::string& ref) {
  if (ref == "heis2q") return heisenberg_2q(false);
  if (ref == "heis2q-shifted") return heisenberg_2q(true);
  if (ref.rfind("chain-", 0) == 0) {
    std::string rest = ref.substr(6);
    bool shifted = false;
    if (rest.size() > 8 && rest.substr(rest.size() - 8) == "-shifted") {
      shifted = true;
      rest = rest.substr(0, rest.size() - 8);
    }
    int n = std::stoi(rest);
    return heisenberg_chain_1d(n, shifted);
  }
  // Otherwise a JSON specification file.
  if (!fs::exists(ref)) {
    throw std::invalid_argument("hamiltonian reference '" + ref +
                                "' is neither a builder name nor an existing file");
  }
  std::ifstream in(ref);
  nlohmann::json j;
  in >> j;
  return hamiltonian_from_json(j);
}

BasisSet resolve_basis(const std::string& ref, int k) {
  if (ref == "ebl") {
    if (k != 1) throw std::invalid_argument("basis 'ebl' is single-qubit");
    return ebl_single_qubit();
  }
  if (ref == "ebl-product") {
    BasisSet b = ebl_single_qubit();
    BasisSet out = b;
    for (int i = 1; i < k; ++i) out = product_basis(out, b);
    return out;
  }
  if (ref == "takagi") {
    if (k != 2) throw std::invalid_argument("basis 'takagi' is two-qubit");
    return takagi_two_qubit();
  }
  if (ref.rfind("noisy:", 0) == 0) {
    double p = std::stod(ref.substr(6));
    BasisSet base = resolve_basis("ebl-product", k);
    return apply_noise(base, depolarizing_channel(k, p));
  }
  throw std::invalid_argument("unknown basis '" + ref + "'");
}

// ---------------------------------------------------------------------------

std::vector<GammaSweepRow> gamma_sweep_rows(const GammaSweepConfig& cfg, const RunContext& ctx) {
  LocalHamiltonian ham = resolve_hamiltonian(cfg.hamiltonian);
  if (ham.terms.size() != 1 || ham.n != 2) {
    throw std::invalid_argument("gamma-sweep expects a single-term 2-qubit Hamiltonian");
  }
  const Matrix& h = ham.terms[0].h;
  if (cfg.beta_step <= 0.0 || cfg.beta_end < cfg.beta_start) {
    throw std::invalid_argument("gamma-sweep: invalid beta grid");
  }
  std::vector<double> betas;
  for (double b = cfg.beta_start; b <= cfg.beta_end + 1e-12; b += cfg.beta_step) {
    betas.push_back(b);
  }
  BasisSet ebl2 = resolve_basis("ebl-product", 2);
  BasisSet takagi = takagi_two_qubit();
  std::vector<GammaSweepRow> rows(betas.size());
  parallel_for(static_cast<long>(betas.size()), effective_workers(ctx), [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      double beta = betas[i];
      QuantumOperation target = ite_map(h, beta);
      GammaSweepRow row;
      row.beta = beta;
      row.gamma_ebl = solve_exact(target, ebl2).gamma;
      row.gamma_takagi = solve_min_gamma(target, takagi).gamma;
      row.lower_bound = diamond_lower_bound_ite(h, beta);
      rows[i] = row;
    }
  });
  return rows;
}

int run_gamma_sweep(const GammaSweepConfig& cfg, const RunContext& ctx) {
  std::vector<GammaSweepRow> rows = gamma_sweep_rows(cfg, ctx);
  fs::path dir(ctx.out_dir);
  if (ctx.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"beta", r.beta},
                   {"gamma_ebl", r.gamma_ebl},
                   {"gamma_takagi", r.gamma_takagi},
                   {"diamond_lower_bound", r.lower_bound}});
    }
    write_text(dir / "gamma_sweep.json", j.dump(2) + "\n");
  } else {
    std::string csv = "beta,gamma_ebl,gamma_takagi,diamond_lower_bound\n";
    for (const auto& r : rows) {
      csv += fmt(r.beta) + "," + fmt(r.gamma_ebl) + "," + fmt(r.gamma_takagi) + "," +
             fmt(r.lower_bound) + "\n";
    }
    write_text(dir / "gamma_sweep.csv", csv);
    write_text(dir / "gamma_sweep.gp",
               "set datafile separator \",\"\n"
               "set key top left\n"
               "set xlabel \"beta\"\n"
               "set ylabel \"gamma\"\n"
               "plot \"gamma_sweep.csv\" using 1:2 with linespoints title \"EBL product\", \\\n"
               "     \"gamma_sweep.csv\" using 1:3 with linespoints title \"Takagi\", \\\n"
               "     \"gamma_sweep.csv\" using 1:4 with lines title \"diamond lower bound\"\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<IteEnergyRow> ite_energy_rows(const IteEnergyConfig& cfg, const RunContext& ctx) {
  LocalHamiltonian ham = resolve_hamiltonian(cfg.hamiltonian);
  if (ham.terms.size() != 1) {
    throw std::invalid_argument(
        "ite-energy drives repeated applications of a single-term Hamiltonian");
  }
  if (cfg.steps < 1) throw std::invalid_argument("ite-energy: steps must be >= 1");
  if (static_cast<int>(cfg.schedule.size()) < cfg.steps) {
    throw std::invalid_argument("ite-energy: schedule must list N for every step");
  }
  if (cfg.reps < 1) throw std::invalid_argument("ite-energy: reps must be >= 1");

  const Matrix& h = ham.terms[0].h;
  int n = ham.n;
  Matrix h_dense = ham.dense();
  double h_norm = norms(h_dense).operator_norm;
  Observable obs = Observable::general(cdouble(1.0 / h_norm, 0.0) * h_dense);

  BasisSet basis = resolve_basis(cfg.basis, n);
  QuantumOperation step_map = ite_map(h, cfg.beta_step);
  // Complete dictionaries (16^k elements) admit the direct solve; smaller
  // ones (Takagi) go through the minimizing linear program.
  QPDecomposition qpd = basis.size() == (size_t(1) << (4 * n))
                            ? solve_exact(step_map, basis)
                            : solve_min_gamma(step_map, basis);

  StateVector rho0 = StateVector::computational_basis(n, cfg.initial_state);
  std::vector<int> full_support(n);
  for (int i = 0; i < n; ++i) full_support[i] = i;

  std::vector<IteEnergyRow> rows;
  for (int t = 1; t <= cfg.steps; ++t) {
    IteEnergyRow row;
    row.step = t;
    row.beta = cfg.beta_step * t;
    row.num_samples = cfg.schedule[t - 1];

    std::vector<std::pair<QuantumOperation, std::vector<int>>> dense_steps(
        t, {step_map, full_support});
    row.exact_energy =
        h_norm * exact_rescaled_expectation(dense_steps, rho0.density(), obs.matrix, n);

    std::vector<SamplingStep> steps(t, SamplingStep{&qpd, &basis, full_support});
    std::vector<double> energies;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      SamplerOptions opt;
      opt.shots = cfg.shots;
      opt.workers = effective_workers(ctx);
      opt.seed = RandomStream::derive(ctx.seed, {stream_domain::kRepetition,
                                                 static_cast<uint64_t>(t),
                                                 static_cast<uint64_t>(rep)})
                     .next_u64();
      EstimatorResult est = run_algorithm2(steps, rho0, obs, row.num_samples, opt);
      if (!est.ratio_defined) {
        throw std::runtime_error("ite-energy: undefined ratio at step " + std::to_string(t));
      }
      energies.push_back(h_norm * est.ratio);
      row.gamma_total = est.gamma_total;
      row.repetitions.push_back(std::move(est));
    }
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= energies.size();
    double var = 0.0;
    for (double e : energies) var += (e - mean) * (e - mean);
    row.energy_mean = mean;
    if (energies.size() > 1) {
      row.energy_std = std::sqrt(var / (energies.size() - 1));
      row.energy_se = row.energy_std / std::sqrt(static_cast<double>(energies.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_ite_energy(const IteEnergyConfig& cfg, const RunContext& ctx) {
  std::vector<IteEnergyRow> rows = ite_energy_rows(cfg, ctx);
  fs::path dir(ctx.out_dir);
  if (ctx.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json reps = nlohmann::json::array();
      for (const auto& e : r.repetitions) reps.push_back(estimator_to_json(e));
      j.push_back({{"step", r.step},
                   {"beta", r.beta},
                   {"N", r.num_samples},
                   {"exact_energy", r.exact_energy},
                   {"energy_mean", r.energy_mean},
                   {"energy_std", r.energy_std},
                   {"energy_se", r.energy_se},
                   {"gamma_total", r.gamma_total},
                   {"repetitions", reps}});
    }
    write_text(dir / "ite_energy.json", j.dump(2) + "\n");
    return 0;
  }
  std::string csv = "step,beta,N,shots,reps,exact_energy,energy_mean,energy_std,energy_se\n";
  std::string samples = estimator_csv_header() + "\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.step) + "," + fmt(r.beta) + "," + std::to_string(r.num_samples) +
           "," + std::to_string(cfg.shots) + "," + std::to_string(cfg.reps) + "," +
           fmt(r.exact_energy) + "," + fmt(r.energy_mean) + "," + fmt(r.energy_std) + "," +
           fmt(r.energy_se) + "\n";
    for (const auto& e : r.repetitions) {
      samples += estimator_csv_row("ite-energy", r.beta, r.step, cfg.shots, e) + "\n";
    }
  }
  write_text(dir / "ite_energy.csv", csv);
  write_text(dir / "samples.csv", samples);
  write_text(dir / "ite_energy.gp",
             "set datafile separator \",\"\n"
             "set key bottom right\n"
             "set xlabel \"Trotter step\"\n"
             "set ylabel \"energy\"\n"
             "plot \"ite_energy.csv\" using 1:7:8 with yerrorbars title \"sampled\", \\\n"
             "     \"ite_energy.csv\" using 1:6 with lines title \"exact\"\n");
  return 0;
}

// ---------------------------------------------------------------------------

int run_tpq(const TpqCliConfig& cfg, const RunContext& ctx) {
  if (cfg.mode != "exact" && cfg.mode != "simulated" && cfg.mode != "both") {
    throw std::invalid_argument("tpq: mode must be exact, simulated, or both");
  }
  if (cfg.ns.empty()) throw std::invalid_argument("tpq: need at least one system size");

  struct Block {
    TpqResult result;
    long samples = 0;
  };
  std::vector<Block> blocks;
  for (size_t i = 0; i < cfg.ns.size(); ++i) {
    int n = cfg.ns[i];
    LocalHamiltonian ham = cfg.hamiltonian == "chain"
                               ? heisenberg_chain_1d(n, false)
                               : resolve_hamiltonian(cfg.hamiltonian);
    if (ham.n != n) throw std::invalid_argument("tpq: hamiltonian size does not match n");
    long samples = cfg.samples.empty()
                       ? 1024
                       : cfg.samples[std::min(i, cfg.samples.size() - 1)];
    TpqConfig base;
    base.hamiltonian = ham;
    base.ite_exponent = cfg.ite_exponent;
    base.num_states = cfg.states;
    base.num_paulis = cfg.paulis;
    base.num_samples = samples;
    base.shots = cfg.shots;
    base.trotter_r = cfg.trotter_r;
    base.seed = splitmix64(ctx.seed ^ static_cast<uint64_t>(n));
    base.workers = effective_workers(ctx);
    if (cfg.mode == "exact" || cfg.mode == "both") {
      base.mode = TpqMode::exact_ite;
      blocks.push_back({tpq_experiment(base), samples});
    }
    if (cfg.mode == "simulated" || cfg.mode == "both") {
      base.mode = TpqMode::simulated_ite;
      blocks.push_back({tpq_experiment(base), samples});
    }
  }

  fs::path dir(ctx.out_dir);
  auto mode_name = [](TpqMode m) {
    return m == TpqMode::exact_ite ? std::string("exact") : std::string("simulated");
  };
  if (ctx.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& b : blocks) {
      nlohmann::json cells = nlohmann::json::array();
      for (const auto& c : b.result.cells) {
        cells.push_back({{"state_index", c.state_index},
                         {"pauli_string", c.pauli},
                         {"tpq_value", c.tpq_value},
                         {"gibbs_value", c.gibbs_value},
                         {"abs_error", c.abs_error}});
      }
      j.push_back({{"n", b.result.n},
                   {"mode", mode_name(b.result.mode)},
                   {"beta", b.result.ite_exponent},
                   {"gibbs_beta", b.result.gibbs_beta},
                   {"N", b.samples},
                   {"mean_abs_error", b.result.mean_abs_error},
                   {"std_error", b.result.std_error},
                   {"cells", cells}});
    }
    write_text(dir / "tpq.json", j.dump(2) + "\n");
    return 0;
  }
  std::string cells = "n,mode,beta,state_index,pauli_string,tpq_value,gibbs_value,abs_error\n";
  std::string summary = "n,mode,beta,N,cells,mean_abs_error,std_error\n";
  for (const auto& b : blocks) {
    const TpqResult& r = b.result;
    for (const auto& c : r.cells) {
      cells += std::to_string(r.n) + "," + mode_name(r.mode) + "," + fmt(r.ite_exponent) + "," +
               std::to_string(c.state_index) + "," + c.pauli + "," + fmt(c.tpq_value) + "," +
               fmt(c.gibbs_value) + "," + fmt(c.abs_error) + "\n";
    }
    // Aggregate row per (n, mode).
    cells += std::to_string(r.n) + "," + mode_name(r.mode) + "," + fmt(r.ite_exponent) +
             ",-1,aggregate,nan,nan," + fmt(r.mean_abs_error) + "\n";
    summary += std::to_string(r.n) + "," + mode_name(r.mode) + "," + fmt(r.ite_exponent) + "," +
               std::to_string(b.samples) + "," + std::to_string(r.cells.size()) + "," +
               fmt(r.mean_abs_error) + "," + fmt(r.std_error) + "\n";
  }
  write_text(dir / "tpq_cells.csv", cells);
  write_text(dir / "tpq_summary.csv", summary);
  write_text(dir / "tpq.gp",
             "set datafile separator \",\"\n"
             "set key top right\n"
             "set xlabel \"qubits\"\n"
             "set ylabel \"mean thermal error\"\n"
             "set logscale y\n"
             "plot \"tpq_summary.csv\" using 1:(strcol(2) eq \"exact\" ? $6 : NaN):7 "
             "with yerrorbars title \"exact ITE\", \\\n"
             "     \"tpq_summary.csv\" using 1:(strcol(2) eq \"simulated\" ? $6 : NaN):7 "
             "with yerrorbars title \"simulated ITE\"\n");
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<OracleRow> oracle_rows(const OracleConfig& cfg, const RunContext& ctx) {
  if (cfg.experiment != "ite-energy") {
    throw std::invalid_argument("oracle: unsupported experiment '" + cfg.experiment + "'");
  }
  LocalHamiltonian ham = resolve_hamiltonian(cfg.hamiltonian);
  if (ham.terms.size() != 1) {
    throw std::invalid_argument("oracle: expected a single-term Hamiltonian");
  }
  int n = ham.n;
  Matrix h_dense = ham.dense();
  double h_norm = norms(h_dense).operator_norm;
  Observable obs = Observable::general(cdouble(1.0 / h_norm, 0.0) * h_dense);
  BasisSet basis = resolve_basis(cfg.basis, n);
  QuantumOperation step_map = ite_map(ham.terms[0].h, cfg.beta_step);
  QPDecomposition qpd = basis.size() == (size_t(1) << (4 * n))
                            ? solve_exact(step_map, basis)
                            : solve_min_gamma(step_map, basis);
  StateVector rho0 = StateVector::computational_basis(n, cfg.initial_state);
  std::vector<int> full_support(n);
  for (int i = 0; i < n; ++i) full_support[i] = i;

  std::vector<OracleRow> rows;
  for (int t = 1; t <= cfg.steps; ++t) {
    std::vector<std::pair<QuantumOperation, std::vector<int>>> dense_steps(
        t, {step_map, full_support});
    double exact = exact_rescaled_expectation(dense_steps, rho0.density(), obs.matrix, n);

    std::vector<SamplingStep> steps(t, SamplingStep{&qpd, &basis, full_support});
    SamplerOptions opt;
    opt.shots = cfg.shots;
    opt.workers = effective_workers(ctx);
    opt.seed = RandomStream::derive(ctx.seed, {stream_domain::kRepetition,
                                               static_cast<uint64_t>(t)})
                   .next_u64();
    EstimatorResult est = run_algorithm2(steps, rho0, obs, cfg.num_samples, opt);
    if (!est.ratio_defined) {
      throw std::runtime_error("oracle: undefined sampled ratio at step " + std::to_string(t));
    }
    OracleRow row;
    row.step = t;
    row.sampled = est.ratio;
    row.std_error = est.ratio_std_error;
    row.exact = exact;
    row.abs_diff = std::abs(est.ratio - exact);
    row.n_sigma = est.ratio_std_error > 0.0 ? row.abs_diff / est.ratio_std_error : 0.0;
    rows.push_back(row);
  }
  return rows;
}

int run_oracle(const OracleConfig& cfg, const RunContext& ctx) {
  std::vector<OracleRow> rows = oracle_rows(cfg, ctx);
  fs::path dir(ctx.out_dir);
  if (ctx.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      j.push_back({{"step", r.step},
                   {"sampled", r.sampled},
                   {"std_error", r.std_error},
                   {"exact", r.exact},
                   {"abs_diff", r.abs_diff},
                   {"n_sigma", r.n_sigma}});
    }
    write_text(dir / "oracle.json", j.dump(2) + "\n");
    return 0;
  }
  std::string csv = "step,sampled,std_error,exact,abs_diff,n_sigma\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.step) + "," + fmt(r.sampled) + "," + fmt(r.std_error) + "," +
           fmt(r.exact) + "," + fmt(r.abs_diff) + "," + fmt(r.n_sigma) + "\n";
  }
  write_text(dir / "oracle.csv", csv);
  write_text(dir / "oracle.gp",
             "set datafile separator \",\"\n"
             "set xlabel \"step\"\n"
             "set ylabel \"rescaled expectation\"\n"
             "plot \"oracle.csv\" using 1:2:3 with yerrorbars title \"sampled\", \\\n"
             "     \"oracle.csv\" using 1:4 with lines title \"dense oracle\"\n");
  return 0;
}

void write_error_record(const RunContext& ctx, const std::string& subcommand,
                        const std::string& message) {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["error"] = message;
  try {
    write_text(fs::path(ctx.out_dir) / "error.json", j.dump(2) + "\n");
  } catch (...) {
    // Reporting failure must not mask the original error.
  }
}

}  // namespace qpdite
