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

#include "qpdite/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qpdite/linalg.hpp"

namespace qpdite {

namespace {

int qubits_for_dim(int d) {
  int k = 0;
  while ((1 << k) < d) ++k;
  if ((1 << k) != d) throw std::invalid_argument("operation dimension is not a power of two");
  return k;
}

}  // namespace

QuantumOperation QuantumOperation::identity(int k) {
  QuantumOperation op;
  op.qubit_count = k;
  op.kraus.push_back(Matrix::identity(1 << k));
  op.trace_preserving = true;
  op.kind = OpKind::unitary;
  return op;
}

QuantumOperation QuantumOperation::single_kraus(Matrix k) {
  if (!k.is_square()) throw std::invalid_argument("single_kraus: matrix not square");
  if (!k.all_finite()) throw std::invalid_argument("single_kraus: non-finite entries");
  QuantumOperation op;
  op.qubit_count = qubits_for_dim(k.rows());
  Matrix q = k.adjoint() * k;
  int d = k.rows();
  if (frobenius_distance(q, Matrix::identity(d)) <= 1e-9) {
    op.kind = OpKind::unitary;
    op.trace_preserving = true;
  } else if (frobenius_distance(q * q, q) <= 1e-9) {
    op.kind = OpKind::projective;
    op.trace_preserving = false;
    // Hermitize the measured projector.
    op.projector = cdouble(0.5, 0.0) * (q + q.adjoint());
  } else {
    op.kind = OpKind::general;
    op.trace_preserving = false;
  }
  op.kraus.push_back(std::move(k));
  return op;
}

QuantumOperation QuantumOperation::unitary_op(Matrix u) {
  QuantumOperation op = single_kraus(std::move(u));
  if (op.kind != OpKind::unitary) {
    throw std::invalid_argument("unitary_op: matrix is not unitary");
  }
  return op;
}

QuantumOperation QuantumOperation::from_kraus(std::vector<Matrix> ks) {
  if (ks.empty()) throw std::invalid_argument("from_kraus: empty Kraus list");
  if (ks.size() == 1) return single_kraus(std::move(ks[0]));
  int d = ks[0].rows();
  QuantumOperation op;
  op.qubit_count = qubits_for_dim(d);
  Matrix sum = Matrix::zero(d, d);
  for (const Matrix& k : ks) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("from_kraus: inconsistent Kraus dimensions");
    }
    sum += k.adjoint() * k;
  }
  if (frobenius_distance(sum, Matrix::identity(d)) <= 1e-9) {
    op.trace_preserving = true;
    op.kind = OpKind::general;
  } else if (frobenius_distance(sum * sum, sum) <= 1e-9) {
    op.trace_preserving = false;
    op.kind = OpKind::projective;
    op.projector = cdouble(0.5, 0.0) * (sum + sum.adjoint());
  } else {
    op.trace_preserving = false;
    op.kind = OpKind::general;
  }
  op.kraus = std::move(ks);
  return op;
}

Matrix choi_of(const QuantumOperation& op) {
  int d = op.dim();
  Matrix c(d * d, d * d);
  // C = sum_m |v_m><v_m| with |v_m> the row-major flattening of K_m.
  for (const Matrix& k : op.kraus) {
    for (int r1 = 0; r1 < d; ++r1) {
      for (int c1 = 0; c1 < d; ++c1) {
        cdouble v1 = k(r1, c1);
        if (v1 == cdouble(0.0, 0.0)) continue;
        for (int r2 = 0; r2 < d; ++r2) {
          for (int c2 = 0; c2 < d; ++c2) {
            c(r1 * d + c1, r2 * d + c2) += v1 * std::conj(k(r2, c2));
          }
        }
      }
    }
  }
  return c;
}

Matrix apply(const QuantumOperation& op, const Matrix& rho) {
  int d = op.dim();
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("apply: state dimension mismatch");
  }
  Matrix out(d, d);
  for (const Matrix& k : op.kraus) out += k * rho * k.adjoint();
  return out;
}

QuantumOperation embed(const QuantumOperation& op, const std::vector<int>& support, int n) {
  int k = op.qubit_count;
  if (static_cast<int>(support.size()) != k) {
    throw std::invalid_argument("embed: support size does not match operation arity");
  }
  std::set<int> seen;
  for (int q : support) {
    if (q < 0 || q >= n) throw std::out_of_range("embed: support qubit out of range");
    if (!seen.insert(q).second) throw std::invalid_argument("embed: duplicate support qubit");
  }

  int dn = 1 << n;
  // Bit of qubit q sits at position n-1-q; support[0] is the most significant
  // local bit of the embedded operation.
  std::vector<int> shift(k);
  for (int i = 0; i < k; ++i) shift[i] = n - 1 - support[i];
  uint64_t support_mask = 0;
  for (int i = 0; i < k; ++i) support_mask |= uint64_t(1) << shift[i];

  auto local_index = [&](uint64_t full) {
    int loc = 0;
    for (int i = 0; i < k; ++i) loc = (loc << 1) | static_cast<int>((full >> shift[i]) & 1);
    return loc;
  };

  QuantumOperation out;
  out.qubit_count = n;
  out.trace_preserving = op.trace_preserving;
  out.kind = op.kind;
  for (const Matrix& km : op.kraus) {
    Matrix big(dn, dn);
    for (uint64_t r = 0; r < static_cast<uint64_t>(dn); ++r) {
      uint64_t rest = r & ~support_mask;
      int lr = local_index(r);
      for (int lc = 0; lc < (1 << k); ++lc) {
        cdouble v = km(lr, lc);
        if (v == cdouble(0.0, 0.0)) continue;
        uint64_t c = rest;
        for (int i = 0; i < k; ++i) {
          if ((lc >> (k - 1 - i)) & 1) c |= uint64_t(1) << shift[i];
        }
        big(static_cast<int>(r), static_cast<int>(c)) = v;
      }
    }
    out.kraus.push_back(std::move(big));
  }
  if (op.kind == OpKind::projective) {
    Matrix q(dn, dn);
    for (const Matrix& km : out.kraus) q += km.adjoint() * km;
    out.projector = cdouble(0.5, 0.0) * (q + q.adjoint());
  }
  return out;
}

Matrix partial_trace_output(const Matrix& choi, int d) {
  if (choi.rows() != d * d || choi.cols() != d * d) {
    throw std::invalid_argument("partial_trace_output: dimension mismatch");
  }
  Matrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int o = 0; o < d; ++o) out(i, j) += choi(o * d + i, o * d + j);
  return out;
}

Classification classify(const QuantumOperation& op) {
  Matrix c = choi_of(op);
  // The Choi of a Kraus-form operation is Hermitian by construction.
  EigenSystem es = eigh(c);
  Classification result;
  result.cp = es.eigenvalues.front() >= -1e-9;
  Matrix marginal = partial_trace_output(c, op.dim());
  result.tp = frobenius_distance(marginal, Matrix::identity(op.dim())) <= 1e-9;
  return result;
}

StateVector StateVector::computational_basis(int n, uint64_t index) {
  StateVector s;
  s.n = n;
  s.amp.assign(size_t(1) << n, cdouble(0.0, 0.0));
  s.amp[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cdouble& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  double nr = norm();
  if (nr <= 0.0) throw std::runtime_error("StateVector::normalize: zero norm");
  double inv = 1.0 / nr;
  for (cdouble& a : amp) a *= inv;
}

Matrix StateVector::density() const {
  int d = dim();
  Matrix rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = amp[i] * std::conj(amp[j]);
  return rho;
}

void apply_local(StateVector& state, const Matrix& local, const std::vector<int>& support) {
  int k = static_cast<int>(support.size());
  int dk = 1 << k;
  if (local.rows() != dk || local.cols() != dk) {
    throw std::invalid_argument("apply_local: operator dimension mismatch");
  }
  int n = state.n;
  std::vector<int> shift(k);
  uint64_t support_mask = 0;
  for (int i = 0; i < k; ++i) {
    if (support[i] < 0 || support[i] >= n) throw std::out_of_range("apply_local: bad qubit");
    shift[i] = n - 1 - support[i];
    support_mask |= uint64_t(1) << shift[i];
  }
  uint64_t dn = uint64_t(1) << n;
  std::vector<uint64_t> offsets(dk);
  for (int m = 0; m < dk; ++m) {
    uint64_t off = 0;
    for (int i = 0; i < k; ++i) {
      if ((m >> (k - 1 - i)) & 1) off |= uint64_t(1) << shift[i];
    }
    offsets[m] = off;
  }
  std::vector<cdouble> gathered(dk);
  for (uint64_t base = 0; base < dn; ++base) {
    if (base & support_mask) continue;  // enumerate rest-configurations only
    for (int m = 0; m < dk; ++m) gathered[m] = state.amp[base | offsets[m]];
    for (int m = 0; m < dk; ++m) {
      cdouble acc = 0.0;
      const cdouble* row = local.data() + static_cast<size_t>(m) * dk;
      for (int m2 = 0; m2 < dk; ++m2) acc += row[m2] * gathered[m2];
      state.amp[base | offsets[m]] = acc;
    }
  }
}

double expectation_value(const Matrix& a, const StateVector& psi) {
  if (a.rows() != psi.dim()) throw std::invalid_argument("expectation_value: dim mismatch");
  std::vector<cdouble> av = a.apply_to(psi.amp);
  cdouble acc = 0.0;
  for (int i = 0; i < psi.dim(); ++i) acc += std::conj(psi.amp[i]) * av[i];
  return acc.real();
}

}  // namespace qpdite
