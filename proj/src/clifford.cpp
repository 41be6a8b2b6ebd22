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

#include "qpdite/clifford.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace qpdite {

namespace {

using BitVec = std::vector<uint8_t>;

int symplectic_inner(const BitVec& v, const BitVec& w) {
  int t = 0;
  for (size_t i = 0; i < v.size(); i += 2) {
    t ^= (v[i] & w[i + 1]) ^ (v[i + 1] & w[i]);
  }
  return t;
}

BitVec transvect(const BitVec& h, const BitVec& v) {
  if (symplectic_inner(v, h) == 0) return v;
  BitVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] ^ h[i];
  return out;
}

bool any_bit(const BitVec& v) {
  for (uint8_t b : v)
    if (b) return true;
  return false;
}

/// Transvections (h1, h2) with T_h2(T_h1(x)) = y for nonzero x, y.
std::pair<BitVec, BitVec> find_transvection(const BitVec& x, const BitVec& y) {
  size_t nn = x.size();
  BitVec zero(nn, 0);
  if (x == y) return {zero, zero};
  if (symplectic_inner(x, y) == 1) {
    BitVec h(nn);
    for (size_t i = 0; i < nn; ++i) h[i] = x[i] ^ y[i];
    return {h, zero};
  }
  BitVec z(nn, 0);
  // A qubit pair where both x and y are nonzero.
  for (size_t i = 0; i < nn; i += 2) {
    if ((x[i] | x[i + 1]) && (y[i] | y[i + 1])) {
      z[i] = x[i] ^ y[i];
      z[i + 1] = x[i + 1] ^ y[i + 1];
      if (z[i] == 0 && z[i + 1] == 0) {
        z[i + 1] = 1;
        if (x[i] != x[i + 1]) z[i] = 1;
      }
      BitVec h1(nn), h2(nn);
      for (size_t k = 0; k < nn; ++k) {
        h1[k] = x[k] ^ z[k];
        h2[k] = z[k] ^ y[k];
      }
      return {h1, h2};
    }
  }
  // Otherwise pick one pair where only x is nonzero and one where only y is.
  for (size_t i = 0; i < nn; i += 2) {
    if ((x[i] | x[i + 1]) && !(y[i] | y[i + 1])) {
      if (x[i] == x[i + 1]) {
        z[i + 1] = 1;
      } else {
        z[i + 1] = x[i];
        z[i] = x[i + 1];
      }
      break;
    }
  }
  for (size_t i = 0; i < nn; i += 2) {
    if (!(x[i] | x[i + 1]) && (y[i] | y[i + 1])) {
      if (y[i] == y[i + 1]) {
        z[i + 1] = 1;
      } else {
        z[i + 1] = y[i];
        z[i] = y[i + 1];
      }
      break;
    }
  }
  BitVec h1(nn), h2(nn);
  for (size_t k = 0; k < nn; ++k) {
    h1[k] = x[k] ^ z[k];
    h2[k] = z[k] ^ y[k];
  }
  return {h1, h2};
}

/// One level of the construction: choose the image f1 of e1 (any nonzero
/// vector) and the coset data for the image of e2, then recurse on the
/// symplectic complement. `draw_f1` returns a number in [1, 4^m - 1] and
/// `draw_bits` a (2m-1)-bit number for the current block size m.
std::vector<BitVec> symplectic_build(int m, const std::function<uint64_t(int)>& draw_f1,
                                     const std::function<uint64_t(int)>& draw_bits) {
  size_t nn = 2 * static_cast<size_t>(m);
  uint64_t k = draw_f1(m);
  BitVec f1(nn);
  for (size_t b = 0; b < nn; ++b) f1[b] = static_cast<uint8_t>((k >> b) & 1);
  BitVec e1(nn, 0);
  e1[0] = 1;
  auto [t1, t2] = find_transvection(e1, f1);
  uint64_t bits = draw_bits(m);
  BitVec eprime = e1;
  for (size_t j = 2; j < nn; ++j) {
    eprime[j] = static_cast<uint8_t>((bits >> (j - 1)) & 1);
  }
  BitVec h0 = transvect(t1, eprime);
  h0 = transvect(t2, h0);
  bool extra = (bits & 1) != 0;

  std::vector<BitVec> g;
  if (m == 1) {
    g = {{1, 0}, {0, 1}};
  } else {
    std::vector<BitVec> inner = symplectic_build(m - 1, draw_f1, draw_bits);
    g.assign(nn, BitVec(nn, 0));
    g[0][0] = 1;
    g[1][1] = 1;
    for (size_t r = 0; r < nn - 2; ++r)
      for (size_t c = 0; c < nn - 2; ++c) g[r + 2][c + 2] = inner[r][c];
  }
  for (BitVec& row : g) {
    row = transvect(t1, row);
    row = transvect(t2, row);
    row = transvect(h0, row);
    if (extra && any_bit(f1)) row = transvect(f1, row);
  }
  return g;
}

}  // namespace

uint64_t symplectic_group_order(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("symplectic_group_order: need 1 <= n <= 4");
  uint64_t o = uint64_t(1) << (n * n);
  for (int j = 1; j <= n; ++j) o *= (uint64_t(1) << (2 * j)) - 1;
  return o;
}

uint64_t clifford_group_order(int n) {
  return symplectic_group_order(n) << (2 * n);
}

std::vector<std::vector<uint8_t>> symplectic_from_index(uint64_t index, int n) {
  // Mixed-radix digits consumed level by level: (4^m - 1) then 2^{2m-1}.
  uint64_t i = index;
  auto draw_f1 = [&i](int m) {
    uint64_t s = (uint64_t(1) << (2 * m)) - 1;
    uint64_t k = (i % s) + 1;
    i /= s;
    return k;
  };
  auto draw_bits = [&i](int m) {
    uint64_t s = uint64_t(1) << (2 * m - 1);
    uint64_t b = i % s;
    i /= s;
    return b;
  };
  return symplectic_build(n, draw_f1, draw_bits);
}

CliffordElement random_clifford(int n, RandomStream& rng) {
  if (n < 1 || n > 8) throw std::invalid_argument("random_clifford: need 1 <= n <= 8");
  auto draw_f1 = [&rng](int m) {
    return rng.uniform_int((uint64_t(1) << (2 * m)) - 1) + 1;
  };
  auto draw_bits = [&rng](int m) {
    return rng.next_u64() & ((uint64_t(1) << (2 * m - 1)) - 1);
  };
  std::vector<BitVec> rows = symplectic_build(n, draw_f1, draw_bits);
  std::vector<uint8_t> phases(2 * n);
  for (int i = 0; i < 2 * n; ++i) phases[i] = static_cast<uint8_t>(rng.bit());
  return CliffordElement(n, std::move(rows), std::move(phases));
}

CliffordElement random_clifford(int n, uint64_t seed) {
  RandomStream rng = RandomStream::derive(seed, {stream_domain::kClifford});
  return random_clifford(n, rng);
}

Matrix SignedPauli::matrix() const {
  Matrix m = Matrix::identity(1);
  for (char c : paulis) {
    Matrix p(2, 2);
    switch (c) {
      case 'I': p = Matrix::identity(2); break;
      case 'X': p = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); break;
      case 'Y':
        p = Matrix::from_rows({{0.0, cdouble(0.0, -1.0)}, {cdouble(0.0, 1.0), 0.0}});
        break;
      case 'Z': p = Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); break;
      default: throw std::invalid_argument("SignedPauli: bad symbol");
    }
    m = kron(m, p);
  }
  if (sign < 0) m *= cdouble(-1.0, 0.0);
  return m;
}

namespace {

/// Apply a signed Pauli string to a statevector amplitude array (in place).
void apply_signed_pauli(const SignedPauli& p, std::vector<cdouble>& amp, int n) {
  uint64_t x_mask = 0, z_mask = 0;
  int y_count = 0;
  for (int q = 0; q < n; ++q) {
    uint64_t bit = uint64_t(1) << (n - 1 - q);
    switch (p.paulis[q]) {
      case 'X': x_mask |= bit; break;
      case 'Y':
        x_mask |= bit;
        z_mask |= bit;
        ++y_count;
        break;
      case 'Z': z_mask |= bit; break;
      default: break;
    }
  }
  // P = sign * i^{y_count} * (phase from Z bits) * bit flip; concretely
  // P|b> = sign * prod_q factor_q |b ^ x_mask> with X:1, Z:(-1)^b,
  // Y: i(-1)^b.
  cdouble y_phase = 1.0;
  switch (y_count % 4) {
    case 0: y_phase = 1.0; break;
    case 1: y_phase = cdouble(0.0, 1.0); break;
    case 2: y_phase = -1.0; break;
    case 3: y_phase = cdouble(0.0, -1.0); break;
  }
  uint64_t dim = amp.size();
  std::vector<cdouble> out(dim);
  for (uint64_t b = 0; b < dim; ++b) {
    int par = __builtin_popcountll(b & z_mask) & 1;
    cdouble f = y_phase * (par ? -1.0 : 1.0) * (p.sign < 0 ? -1.0 : 1.0);
    out[b ^ x_mask] = f * amp[b];
  }
  amp.swap(out);
}

}  // namespace

CliffordElement::CliffordElement(int n, std::vector<std::vector<uint8_t>> rows,
                                 std::vector<uint8_t> phases)
    : n_(n), rows_(std::move(rows)), phases_(std::move(phases)) {
  if (static_cast<int>(rows_.size()) != 2 * n || static_cast<int>(phases_.size()) != 2 * n) {
    throw std::invalid_argument("CliffordElement: tableau shape mismatch");
  }
  for (int a = 0; a < 2 * n; ++a) {
    for (int b = 0; b < 2 * n; ++b) {
      int expect = ((a ^ 1) == b) ? 1 : 0;
      if (symplectic_inner(rows_[a], rows_[b]) != expect) {
        throw std::invalid_argument("CliffordElement: rows violate symplectic relations");
      }
    }
  }
  if (n_ > 8) throw std::invalid_argument("CliffordElement: explicit unitary limited to n <= 8");

  // Synthesize the unitary column by column: |psi_0> is the joint +1
  // eigenstate of the Z images; column x is prod_i P_i^{x_i} |psi_0> where
  // P_i is the X_i image.
  int d = 1 << n_;
  std::vector<SignedPauli> ximg(n_), zimg(n_);
  for (int q = 0; q < n_; ++q) {
    ximg[q] = image_x(q);
    zimg[q] = image_z(q);
  }
  std::vector<cdouble> psi0;
  for (int v = 0; v < d; ++v) {
    std::vector<cdouble> w(d, cdouble(0.0, 0.0));
    w[v] = 1.0;
    for (int q = 0; q < n_; ++q) {
      std::vector<cdouble> pw = w;
      apply_signed_pauli(zimg[q], pw, n_);
      for (int b = 0; b < d; ++b) w[b] = 0.5 * (w[b] + pw[b]);
    }
    double norm2 = 0.0;
    for (const cdouble& c : w) norm2 += std::norm(c);
    if (norm2 > 1e-9) {
      double inv = 1.0 / std::sqrt(norm2);
      for (cdouble& c : w) c *= inv;
      // Phase convention: first nonzero amplitude real positive.
      for (const cdouble& c : w) {
        if (std::abs(c) > 1e-9) {
          cdouble ph = std::conj(c) / std::abs(c);
          for (cdouble& cc : w) cc *= ph;
          break;
        }
      }
      psi0 = std::move(w);
      break;
    }
  }
  if (psi0.empty()) throw std::runtime_error("CliffordElement: stabilizer state not found");

  unitary_ = Matrix(d, d);
  for (int x = 0; x < d; ++x) {
    std::vector<cdouble> col = psi0;
    for (int q = 0; q < n_; ++q) {
      if ((x >> (n_ - 1 - q)) & 1) apply_signed_pauli(ximg[q], col, n_);
    }
    for (int r = 0; r < d; ++r) unitary_(r, x) = col[r];
  }
}

SignedPauli CliffordElement::image_x(int qubit) const {
  const auto& row = rows_[2 * qubit];
  SignedPauli p;
  p.sign = phases_[2 * qubit] ? -1 : 1;
  p.paulis.resize(n_);
  for (int q = 0; q < n_; ++q) {
    int x = row[2 * q], z = row[2 * q + 1];
    p.paulis[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return p;
}

SignedPauli CliffordElement::image_z(int qubit) const {
  const auto& row = rows_[2 * qubit + 1];
  SignedPauli p;
  p.sign = phases_[2 * qubit + 1] ? -1 : 1;
  p.paulis.resize(n_);
  for (int q = 0; q < n_; ++q) {
    int x = row[2 * q], z = row[2 * q + 1];
    p.paulis[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return p;
}

const Matrix& CliffordElement::unitary() const { return unitary_; }

std::string CliffordElement::canonical_key() const {
  std::string key;
  key.reserve(rows_.size() * rows_.size() + phases_.size() + 1);
  for (const auto& row : rows_) {
    for (uint8_t b : row) key.push_back(b ? '1' : '0');
  }
  key.push_back('|');
  for (uint8_t b : phases_) key.push_back(b ? '1' : '0');
  return key;
}

}  // namespace qpdite
