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

#include "qpdite/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qpdite/linalg.hpp"

namespace qpdite {

Matrix pauli_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

Matrix pauli_y() {
  return Matrix::from_rows({{0.0, cdouble(0.0, -1.0)}, {cdouble(0.0, 1.0), 0.0}});
}

Matrix pauli_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Matrix hadamard() {
  double r = 1.0 / std::sqrt(2.0);
  return Matrix::from_rows({{r, r}, {r, -r}});
}

Matrix phase_s() { return Matrix::from_rows({{1.0, 0.0}, {0.0, cdouble(0.0, 1.0)}}); }

Matrix cnot() {
  return Matrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                            {0.0, 1.0, 0.0, 0.0},
                            {0.0, 0.0, 0.0, 1.0},
                            {0.0, 0.0, 1.0, 0.0}});
}

Matrix pauli_string_matrix(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("pauli_string_matrix: empty string");
  Matrix out = Matrix::identity(1);
  for (char ch : s) {
    Matrix p;
    switch (ch) {
      case 'I': p = Matrix::identity(2); break;
      case 'X': p = pauli_x(); break;
      case 'Y': p = pauli_y(); break;
      case 'Z': p = pauli_z(); break;
      default: throw std::invalid_argument(std::string("pauli_string_matrix: bad symbol ") + ch);
    }
    out = kron(out, p);
  }
  return out;
}

namespace {

BasisElement make_element(int index, std::string label, Matrix k, std::string recipe) {
  BasisElement e;
  e.index = index;
  e.label = std::move(label);
  e.op = QuantumOperation::single_kraus(std::move(k));
  e.recipe = std::move(recipe);
  return e;
}

}  // namespace

BasisSet ebl_single_qubit() {
  const Matrix i2 = Matrix::identity(2);
  const Matrix x = pauli_x();
  const Matrix y = pauli_y();
  const Matrix z = pauli_z();
  const double r2 = 1.0 / std::sqrt(2.0);
  const cdouble im(0.0, 1.0);

  BasisSet s;
  s.name = "ebl";
  s.qubit_count = 1;
  s.completeness_class = CompletenessClass::all_linear;

  auto add = [&](std::string label, Matrix k, std::string recipe) {
    s.elements.push_back(
        make_element(static_cast<int>(s.elements.size()), std::move(label), std::move(k),
                     std::move(recipe)));
  };

  add("[1]", i2, "");
  add("[sX]", x, "[H][S]^2[H]");
  add("[sY]", y, "[H][S]^2[H][S]^2");
  add("[sZ]", z, "[S]^2");
  add("[R_X]", r2 * (i2 + im * x), "[H][S]^3[H]");
  add("[R_Y]", r2 * (i2 + im * y), "[S][H][S]^3[H][S]^3");
  add("[R_Z]", r2 * (i2 + im * z), "[S]^3");
  add("[R_YZ]", r2 * (y + z), "[H][S]^3[H][S]^2");
  add("[R_ZX]", r2 * (z + x), "[S]^3[H][S]^3[H][S]^3");
  add("[R_XY]", r2 * (x + y), "[H][S]^2[H][S]^3");
  add("[pi_X]", 0.5 * (i2 + x), "[S][H][S][H][P0][H][S]^3[H][S]^3");
  add("[pi_Y]", 0.5 * (i2 + y), "[H][S]^3[H][P0][H][S][H]");
  add("[pi_Z]", 0.5 * (i2 + z), "[P0]");
  add("[pi_YZ]", 0.5 * (y + im * z), "[S][H][S][H][P0][H][S][H][S]^3");
  add("[pi_ZX]", 0.5 * (z + im * x), "[H][S]^3[H][P0][H][S][H][S]^2");
  add("[pi_XY]", 0.5 * (x + im * y), "[P0][H][S]^2[H]");
  return s;
}

BasisSet product_basis(const BasisSet& a, const BasisSet& b) {
  BasisSet s;
  s.name = a.name + "(x)" + b.name;
  s.qubit_count = a.qubit_count + b.qubit_count;
  s.completeness_class = (a.completeness_class == CompletenessClass::all_linear &&
                          b.completeness_class == CompletenessClass::all_linear)
                             ? CompletenessClass::all_linear
                             : CompletenessClass::unverified;
  for (const BasisElement& ea : a.elements) {
    for (const BasisElement& eb : b.elements) {
      BasisElement e;
      e.index = static_cast<int>(s.elements.size());
      e.label = ea.label + "(x)" + eb.label;
      e.recipe = ea.recipe.empty() && eb.recipe.empty() ? "" : ea.recipe + " (x) " + eb.recipe;
      std::vector<Matrix> ks;
      for (const Matrix& ka : ea.op.kraus)
        for (const Matrix& kb : eb.op.kraus) ks.push_back(kron(ka, kb));
      e.op = QuantumOperation::from_kraus(std::move(ks));
      e.op.trace_preserving = ea.op.trace_preserving && eb.op.trace_preserving;
      s.elements.push_back(std::move(e));
    }
  }
  return s;
}

namespace {

// The nine conjugators of Table II: I, K1, K2, K1^dag, K2^dag and the four
// two-qubit combinations, with K = S H.
std::vector<std::pair<std::string, Matrix>> conjugators_nine() {
  Matrix k = phase_s() * hadamard();
  Matrix kd = k.adjoint();
  Matrix i2 = Matrix::identity(2);
  return {
      {"", Matrix::identity(4)},
      {"K1", kron(k, i2)},
      {"K2", kron(i2, k)},
      {"K1d", kron(kd, i2)},
      {"K2d", kron(i2, kd)},
      {"K1.K2", kron(k, k)},
      {"K1.K2d", kron(k, kd)},
      {"K1d.K2", kron(kd, k)},
      {"K1d.K2d", kron(kd, kd)},
  };
}

}  // namespace

BasisSet takagi_two_qubit() {
  BasisSet ebl = ebl_single_qubit();
  Matrix i2 = Matrix::identity(2);
  Matrix k = phase_s() * hadamard();
  Matrix kd = k.adjoint();

  BasisSet s;
  s.name = "takagi";
  s.qubit_count = 2;
  s.completeness_class = CompletenessClass::cptp_only;

  // B_1..B_169: products of the first 13 single-qubit elements.
  for (int i = 0; i < 13; ++i) {
    for (int j = 0; j < 13; ++j) {
      BasisElement e;
      e.index = static_cast<int>(s.elements.size());
      e.label = "B_" + std::to_string(e.index + 1);
      e.recipe = ebl.elements[i].label + "(x)" + ebl.elements[j].label;
      e.op = QuantumOperation::single_kraus(
          kron(ebl.elements[i].op.kraus[0], ebl.elements[j].op.kraus[0]));
      s.elements.push_back(std::move(e));
    }
  }

  auto add_conjugated = [&](const Matrix& u, const std::string& base_name,
                            const std::vector<std::pair<std::string, Matrix>>& conj) {
    for (const auto& [cname, v] : conj) {
      BasisElement e;
      e.index = static_cast<int>(s.elements.size());
      e.label = "B_" + std::to_string(e.index + 1);
      e.recipe = cname.empty() ? base_name : cname + "^d o " + base_name + " o " + cname;
      e.op = QuantumOperation::single_kraus(v.adjoint() * u * v);
      s.elements.push_back(std::move(e));
    }
  };

  Matrix cx = cnot();
  Matrix x1 = kron(pauli_x(), i2);
  Matrix cs = Matrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                 {0.0, 1.0, 0.0, 0.0},
                                 {0.0, 0.0, 1.0, 0.0},
                                 {0.0, 0.0, 0.0, cdouble(0.0, 1.0)}});
  Matrix ch = Matrix::identity(4);
  {
    Matrix h = hadamard();
    ch(2, 2) = h(0, 0);
    ch(2, 3) = h(0, 1);
    ch(3, 2) = h(1, 0);
    ch(3, 3) = h(1, 1);
  }
  // NOT controlled on the Hadamard eigenbasis of the first qubit; R rotates
  // |0>,|1> onto the +1,-1 eigenstates of H.
  double c8 = std::cos(M_PI / 8.0), s8 = std::sin(M_PI / 8.0);
  Matrix rot = Matrix::from_rows({{c8, -s8}, {s8, c8}});
  Matrix chx = kron(rot, i2) * cx * kron(rot, i2).adjoint();
  Matrix swap = Matrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                   {0.0, 0.0, 1.0, 0.0},
                                   {0.0, 1.0, 0.0, 0.0},
                                   {0.0, 0.0, 0.0, 1.0}});
  Matrix iswap = Matrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                    {0.0, 0.0, cdouble(0.0, 1.0), 0.0},
                                    {0.0, cdouble(0.0, 1.0), 0.0, 0.0},
                                    {0.0, 0.0, 0.0, 1.0}});
  Matrix h1 = kron(hadamard(), i2);

  auto nine = conjugators_nine();
  add_conjugated(cx, "CX", nine);                     // B_170..178
  add_conjugated(x1 * cx * x1, "X1.CX.X1", nine);     // B_179..187
  add_conjugated(cs, "CS", nine);                     // B_188..196
  add_conjugated(ch, "CH", nine);                     // B_197..205
  add_conjugated(chx, "CHX", nine);                   // B_206..214
  add_conjugated(cx * h1, "CX.H1", nine);             // B_215..223
  add_conjugated(swap, "SWAP",
                 {{"", Matrix::identity(4)}, {"K2", kron(i2, k)}, {"K2d", kron(i2, kd)}});
  // iSWAP row: the table lists six conjugations; we enumerate the six
  // distinct conjugators I, K1, K2, K1.K2, K2^dag, K1.K2^dag.
  add_conjugated(iswap, "iSWAP",
                 {{"", Matrix::identity(4)},
                  {"K1", kron(k, i2)},
                  {"K2", kron(i2, k)},
                  {"K1.K2", kron(k, k)},
                  {"K2d", kron(i2, kd)},
                  {"K1.K2d", kron(k, kd)}});
  add_conjugated(swap * h1, "SWAP.H1", nine);         // B_233..241
  return s;
}

BasisSet apply_noise(const BasisSet& s, const QuantumOperation& noise) {
  if (noise.qubit_count != s.qubit_count) {
    throw std::invalid_argument("apply_noise: noise arity does not match basis");
  }
  Classification cls = classify(noise);
  if (!cls.cp || !cls.tp) {
    throw std::invalid_argument("apply_noise: noise channel must be CPTP");
  }
  BasisSet out;
  out.name = "noisy(" + s.name + ")";
  out.qubit_count = s.qubit_count;
  out.completeness_class = CompletenessClass::unverified;
  for (const BasisElement& e : s.elements) {
    BasisElement ne;
    ne.index = e.index;
    ne.label = e.label;
    ne.recipe = e.recipe;
    std::vector<Matrix> ks;
    for (const Matrix& nk : noise.kraus)
      for (const Matrix& ek : e.op.kraus) ks.push_back(nk * ek);
    ne.op.qubit_count = s.qubit_count;
    ne.op.kraus = std::move(ks);
    ne.op.trace_preserving = e.op.trace_preserving;
    ne.op.kind = e.op.kind == OpKind::unitary ? OpKind::general : e.op.kind;
    if (e.op.kind == OpKind::projective) {
      // The measured POVM is unchanged: sum K~^dag K~ = K^dag K.
      ne.op.projector = e.op.kind == OpKind::projective && e.op.projector.rows() > 0
                            ? e.op.projector
                            : Matrix();
    }
    out.elements.push_back(std::move(ne));
  }
  return out;
}

QuantumOperation depolarizing_channel(int k, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p outside [0,1]");
  int d = 1 << k;
  std::vector<Matrix> ks;
  ks.push_back(std::sqrt(1.0 - p + p / (double(d) * d)) * Matrix::identity(d));
  double w = std::sqrt(p) / d;
  // All non-identity Pauli strings.
  std::string symbols = "IXYZ";
  for (int code = 1; code < d * d; ++code) {
    std::string label;
    int c = code;
    for (int q = 0; q < k; ++q) {
      label.push_back(symbols[c % 4]);
      c /= 4;
    }
    ks.push_back(w * pauli_string_matrix(label));
  }
  QuantumOperation op = QuantumOperation::from_kraus(std::move(ks));
  op.trace_preserving = true;
  op.kind = OpKind::general;
  return op;
}

QuantumOperation pauli_noise_channel(double px, double py, double pz) {
  double pi = 1.0 - px - py - pz;
  if (px < 0 || py < 0 || pz < 0 || pi < 0) {
    throw std::invalid_argument("pauli_noise_channel: probabilities must be in the simplex");
  }
  std::vector<Matrix> ks;
  if (pi > 0) ks.push_back(std::sqrt(pi) * Matrix::identity(2));
  if (px > 0) ks.push_back(std::sqrt(px) * pauli_x());
  if (py > 0) ks.push_back(std::sqrt(py) * pauli_y());
  if (pz > 0) ks.push_back(std::sqrt(pz) * pauli_z());
  QuantumOperation op = QuantumOperation::from_kraus(std::move(ks));
  op.trace_preserving = true;
  op.kind = OpKind::general;
  return op;
}

nlohmann::json basis_to_json(const BasisSet& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["qubit_count"] = s.qubit_count;
  switch (s.completeness_class) {
    case CompletenessClass::all_linear: j["completeness_class"] = "all-linear"; break;
    case CompletenessClass::cptp_only: j["completeness_class"] = "cptp-only"; break;
    case CompletenessClass::unverified: j["completeness_class"] = "unverified"; break;
  }
  j["elements"] = nlohmann::json::array();
  for (const BasisElement& e : s.elements) {
    nlohmann::json je;
    je["index"] = e.index;
    je["label"] = e.label;
    je["trace_preserving"] = e.op.trace_preserving;
    if (!e.recipe.empty()) je["recipe"] = e.recipe;
    je["kraus"] = nlohmann::json::array();
    for (const Matrix& k : e.op.kraus) {
      nlohmann::json re = nlohmann::json::array();
      nlohmann::json im = nlohmann::json::array();
      for (int r = 0; r < k.rows(); ++r) {
        nlohmann::json rrow = nlohmann::json::array();
        nlohmann::json irow = nlohmann::json::array();
        for (int c = 0; c < k.cols(); ++c) {
          rrow.push_back(k(r, c).real());
          irow.push_back(k(r, c).imag());
        }
        re.push_back(rrow);
        im.push_back(irow);
      }
      je["kraus"].push_back({{"re", re}, {"im", im}});
    }
    j["elements"].push_back(std::move(je));
  }
  return j;
}

}  // namespace qpdite
