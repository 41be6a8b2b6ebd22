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

#include "qpdite/ite.hpp"

#include <cmath>
#include <stdexcept>

#include "qpdite/basis.hpp"
#include "qpdite/linalg.hpp"

namespace qpdite {

Matrix LocalHamiltonian::dense() const {
  if (n > 8) throw std::invalid_argument("LocalHamiltonian::dense: register too large");
  int d = 1 << n;
  Matrix total(d, d);
  for (const LocalTerm& t : terms) {
    QuantumOperation wrapped;
    wrapped.qubit_count = static_cast<int>(t.support.size());
    wrapped.kraus.push_back(t.h);
    QuantumOperation emb = embed(wrapped, t.support, n);
    total += emb.kraus[0];
  }
  return total;
}

QuantumOperation ite_map(const Matrix& h, double beta) {
  if (beta < 0.0) throw std::invalid_argument("ite_map: beta must be nonnegative");
  Matrix k = herm_exp(h, -beta);
  return QuantumOperation::single_kraus(std::move(k));
}

Matrix TrotterPlan::product() const {
  int d = 1 << n;
  Matrix acc = Matrix::identity(d);
  for (const TrotterStep& s : steps) {
    QuantumOperation emb = embed(s.op, s.support, n);
    acc = emb.kraus[0] * acc;  // later steps multiply from the left
  }
  return acc;
}

TrotterPlan trotter_plan(const LocalHamiltonian& h, double beta, int r) {
  if (r < 1) throw std::invalid_argument("trotter_plan: r must be positive");
  if (h.terms.empty()) throw std::invalid_argument("trotter_plan: empty Hamiltonian");
  TrotterPlan plan;
  plan.n = h.n;
  plan.beta = beta;
  plan.r = r;
  // Translation-invariant models repeat one local map; build each distinct
  // term once and reuse it across repetitions.
  std::vector<QuantumOperation> per_term;
  per_term.reserve(h.terms.size());
  for (const LocalTerm& t : h.terms) per_term.push_back(ite_map(t.h, beta / r));
  for (int rep = 0; rep < r; ++rep) {
    for (size_t l = 0; l < h.terms.size(); ++l) {
      plan.steps.push_back(TrotterStep{per_term[l], h.terms[l].support});
    }
  }
  return plan;
}

ShiftResult shift_to_psd(const LocalHamiltonian& h) {
  ShiftResult out;
  out.hamiltonian.n = h.n;
  for (const LocalTerm& t : h.terms) {
    EigenSystem es = eigh(t.h);
    double alpha = -es.eigenvalues.front();
    LocalTerm shifted;
    shifted.support = t.support;
    shifted.h = t.h;
    int d = t.h.rows();
    for (int i = 0; i < d; ++i) shifted.h(i, i) += alpha;
    out.hamiltonian.terms.push_back(std::move(shifted));
    out.term_shifts.push_back(alpha);
  }
  if (h.n <= 8) {
    EigenSystem es = eigh(out.hamiltonian.dense());
    out.global_ground_energy = es.eigenvalues.front();
  }
  return out;
}

long choose_r(double beta, long num_terms, double eps, double c) {
  if (eps <= 0.0) throw std::invalid_argument("choose_r: eps must be positive");
  double raw = c * beta * beta * static_cast<double>(num_terms) * num_terms / eps;
  long r = static_cast<long>(std::ceil(raw));
  return r < 1 ? 1 : r;
}

namespace {

Matrix heisenberg_term() {
  Matrix h = pauli_string_matrix("XX");
  h += pauli_string_matrix("YY");
  h += pauli_string_matrix("ZZ");
  h *= cdouble(-1.0, 0.0);
  return h;
}

}  // namespace

LocalHamiltonian heisenberg_2q(bool shifted) {
  LocalHamiltonian h;
  h.n = 2;
  LocalTerm t;
  t.support = {0, 1};
  t.h = heisenberg_term();
  if (shifted) {
    for (int i = 0; i < 4; ++i) t.h(i, i) += 1.0;
  }
  h.terms.push_back(std::move(t));
  return h;
}

LocalHamiltonian heisenberg_chain_1d(int n, bool shifted) {
  if (n < 2) throw std::invalid_argument("heisenberg_chain_1d: need at least 2 qubits");
  LocalHamiltonian h;
  h.n = n;
  for (int i = 0; i + 1 < n; ++i) {
    LocalTerm t;
    t.support = {i, i + 1};
    t.h = heisenberg_term();
    if (shifted) {
      for (int d = 0; d < 4; ++d) t.h(d, d) += 1.0;
    }
    h.terms.push_back(std::move(t));
  }
  return h;
}

LocalHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
  LocalHamiltonian h;
  h.n = j.at("n").get<int>();
  if (h.n < 1 || h.n > 8) throw std::invalid_argument("hamiltonian_from_json: n out of range");
  for (const auto& jt : j.at("terms")) {
    LocalTerm t;
    t.support = jt.at("qubits").get<std::vector<int>>();
    int d = 1 << t.support.size();
    t.h = Matrix::zero(d, d);
    for (const auto& js : jt.at("pauli_sum")) {
      double coeff = js.at("coeff").get<double>();
      std::string ps = js.at("pauli_string").get<std::string>();
      if (static_cast<int>(ps.size()) != static_cast<int>(t.support.size())) {
        throw std::invalid_argument("hamiltonian_from_json: pauli_string arity mismatch");
      }
      t.h += cdouble(coeff, 0.0) * pauli_string_matrix(ps);
    }
    if (!is_hermitian(t.h, 1e-10 * d)) {
      throw std::invalid_argument("hamiltonian_from_json: term is not Hermitian");
    }
    h.terms.push_back(std::move(t));
  }
  if (h.terms.empty()) throw std::invalid_argument("hamiltonian_from_json: no terms");
  if (j.contains("shift")) {
    const auto& shift = j.at("shift");
    if (shift.is_string()) {
      std::string s = shift.get<std::string>();
      if (s == "auto") {
        h = shift_to_psd(h).hamiltonian;
      } else if (s != "none") {
        throw std::invalid_argument("hamiltonian_from_json: shift must be auto, none, or a number");
      }
    } else if (shift.is_number()) {
      double alpha = shift.get<double>();
      for (LocalTerm& t : h.terms) {
        for (int i = 0; i < t.h.rows(); ++i) t.h(i, i) += alpha;
      }
    } else {
      throw std::invalid_argument("hamiltonian_from_json: bad shift field");
    }
  }
  return h;
}

}  // namespace qpdite
