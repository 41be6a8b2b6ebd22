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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpdite/experiments.hpp"

namespace {

using nlohmann::json;

/// Pull defaults from a JSON config file; explicit flags override them.
json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw std::runtime_error(std::string("cannot open config file ") + argv[i + 1]);
      json j;
      in >> j;
      return j;
    }
  }
  return json::object();
}

template <typename T>
void from_config(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasiprobabilistic imaginary-time evolution experiments"};
  app.require_subcommand(1);

  json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  qpdite::RunContext ctx;
  from_config(cfg, "seed", ctx.seed);
  from_config(cfg, "workers", ctx.workers);
  from_config(cfg, "out", ctx.out_dir);
  from_config(cfg, "format", ctx.format);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override file values)");
  app.add_option("--seed", ctx.seed, "base RNG seed");
  app.add_option("--workers", ctx.workers, "worker threads (0 = hardware concurrency)");
  app.add_option("--out", ctx.out_dir, "output directory");
  app.add_option("--format", ctx.format, "output format: csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  // gamma-sweep ------------------------------------------------------------
  qpdite::GammaSweepConfig gs;
  from_config(cfg, "hamiltonian", gs.hamiltonian);
  auto* sweep = app.add_subcommand("gamma-sweep", "QPD cost of ITE against beta");
  sweep->fallthrough();
  sweep->add_option("--hamiltonian", gs.hamiltonian, "builder name or JSON file");
  std::string betas_spec;
  from_config(cfg, "betas", betas_spec);
  sweep->add_option("--betas", betas_spec, "grid start:end:step (default 0:1:0.05)");

  // ite-energy ---------------------------------------------------------------
  qpdite::IteEnergyConfig ie;
  from_config(cfg, "hamiltonian", ie.hamiltonian);
  from_config(cfg, "basis", ie.basis);
  from_config(cfg, "steps", ie.steps);
  from_config(cfg, "beta_step", ie.beta_step);
  from_config(cfg, "schedule", ie.schedule);
  from_config(cfg, "shots", ie.shots);
  from_config(cfg, "reps", ie.reps);
  from_config(cfg, "initial_state", ie.initial_state);
  auto* energy = app.add_subcommand("ite-energy", "sampled energy per Trotter step");
  energy->fallthrough();
  energy->add_option("--hamiltonian", ie.hamiltonian, "builder name or JSON file");
  energy->add_option("--basis", ie.basis, "ebl-product | takagi | noisy:<p>");
  energy->add_option("--steps", ie.steps, "number of Trotter steps");
  energy->add_option("--beta-step", ie.beta_step, "beta per step");
  std::string schedule_spec;
  energy->add_option("--schedule", schedule_spec, "comma-separated N per step");
  energy->add_option("--shots", ie.shots, "shots per sampled circuit");
  energy->add_option("--reps", ie.reps, "independent repetitions per step");

  // tpq ----------------------------------------------------------------------
  qpdite::TpqCliConfig tp;
  from_config(cfg, "mode", tp.mode);
  from_config(cfg, "states", tp.states);
  from_config(cfg, "paulis", tp.paulis);
  from_config(cfg, "ite_exponent", tp.ite_exponent);
  from_config(cfg, "samples", tp.samples);
  from_config(cfg, "shots", tp.shots);
  from_config(cfg, "trotter_r", tp.trotter_r);
  from_config(cfg, "ns", tp.ns);
  auto* tpq = app.add_subcommand("tpq", "thermal-pure-quantum-state error study");
  tpq->fallthrough();
  tpq->add_option("--n", tp.ns, "system sizes")->delimiter(',');
  tpq->add_option("--mode", tp.mode, "exact | simulated | both");
  tpq->add_option("--states", tp.states, "random Clifford states per size");
  tpq->add_option("--paulis", tp.paulis, "random Pauli observables per state");
  tpq->add_option("--ite-exponent", tp.ite_exponent, "exponent applied once to the state");
  tpq->add_option("--samples", tp.samples, "QPD samples per size")->delimiter(',');
  tpq->add_option("--shots", tp.shots, "shots per sampled circuit");
  tpq->add_option("--trotter-r", tp.trotter_r, "Trotter repetitions");

  // oracle ---------------------------------------------------------------------
  qpdite::OracleConfig orc;
  from_config(cfg, "experiment", orc.experiment);
  from_config(cfg, "oracle_steps", orc.steps);
  auto* oracle = app.add_subcommand("oracle", "sampled estimate against the dense reference");
  oracle->fallthrough();
  oracle->add_option("--experiment", orc.experiment, "experiment to cross-check");
  oracle->add_option("--hamiltonian", orc.hamiltonian, "builder name or JSON file");
  oracle->add_option("--basis", orc.basis, "decomposition dictionary");
  oracle->add_option("--steps", orc.steps, "number of repeated applications");
  oracle->add_option("--beta-step", orc.beta_step, "beta per step");
  oracle->add_option("--samples", orc.num_samples, "QPD samples");
  oracle->add_option("--shots", orc.shots, "shots per sampled circuit");

  CLI11_PARSE(app, argc, argv);

  std::string sub;
  try {
    if (sweep->parsed()) {
      sub = "gamma-sweep";
      if (!betas_spec.empty()) {
        double a = 0, b = 1, s = 0.05;
        if (std::sscanf(betas_spec.c_str(), "%lf:%lf:%lf", &a, &b, &s) != 3) {
          throw std::invalid_argument("--betas expects start:end:step");
        }
        gs.beta_start = a;
        gs.beta_end = b;
        gs.beta_step = s;
      }
      return qpdite::run_gamma_sweep(gs, ctx);
    }
    if (energy->parsed()) {
      sub = "ite-energy";
      if (!schedule_spec.empty()) {
        ie.schedule.clear();
        size_t pos = 0;
        while (pos < schedule_spec.size()) {
          size_t comma = schedule_spec.find(',', pos);
          if (comma == std::string::npos) comma = schedule_spec.size();
          ie.schedule.push_back(std::stol(schedule_spec.substr(pos, comma - pos)));
          pos = comma + 1;
        }
      }
      return qpdite::run_ite_energy(ie, ctx);
    }
    if (tpq->parsed()) {
      sub = "tpq";
      return qpdite::run_tpq(tp, ctx);
    }
    if (oracle->parsed()) {
      sub = "oracle";
      return qpdite::run_oracle(orc, ctx);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    qpdite::write_error_record(ctx, sub, e.what());
    return 2;
  }
  return 1;
}
