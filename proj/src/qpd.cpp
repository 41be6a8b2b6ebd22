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

#include "qpdite/qpd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpdite/linalg.hpp"

namespace qpdite {

namespace {

std::vector<double> make_probabilities(const std::vector<double>& q, double gamma) {
  std::vector<double> p(q.size(), 0.0);
  if (gamma <= 0.0) return p;
  for (size_t i = 0; i < q.size(); ++i) p[i] = std::abs(q[i]) / gamma;
  return p;
}

std::vector<int> make_signs(const std::vector<double>& q) {
  std::vector<int> s(q.size(), 1);
  for (size_t i = 0; i < q.size(); ++i) s[i] = q[i] < 0.0 ? -1 : 1;
  return s;
}

QPDecomposition finish(const BasisSet& basis, const QuantumOperation& target,
                       std::vector<double> q) {
  QPDecomposition d;
  d.basis_label = basis.name;
  d.coefficients = std::move(q);
  d.gamma = 0.0;
  for (double qi : d.coefficients) d.gamma += std::abs(qi);
  d.probabilities = make_probabilities(d.coefficients, d.gamma);
  d.signs = make_signs(d.coefficients);
  d.residual = reconstruct_residual(d, basis, target);
  return d;
}

/// Two-phase dense simplex for min c.x s.t. A x = b, x >= 0, using Bland's
/// rule throughout. A must have full row rank and b >= 0 on entry.
struct SimplexOutcome {
  bool optimal = false;
  double objective = 0.0;
  std::vector<double> x;
};

SimplexOutcome simplex_min(std::vector<std::vector<double>> a, std::vector<double> b,
                           const std::vector<double>& c) {
  int m = static_cast<int>(a.size());
  int n = m > 0 ? static_cast<int>(a[0].size()) : 0;
  // Tableau columns: n structural + m artificial + rhs.
  int total = n + m;
  std::vector<std::vector<double>> t(m, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m);
  double rhs_scale = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1.0;
    t[i][total] = b[i];
    rhs_scale = std::max(rhs_scale, std::abs(b[i]));
    basis[i] = n + i;
  }
  // Degenerate problems accumulate tiny negative rhs entries that would let
  // the ratio test pick negative ratios and destroy feasibility; clamping
  // them keeps every ratio nonnegative, which Bland's rule relies on.
  const double rhs_zero = 1e-11 * rhs_scale;
  auto clamp_rhs = [&]() {
    for (int i = 0; i < m; ++i) {
      if (std::abs(t[i][total]) < rhs_zero) t[i][total] = 0.0;
    }
  };
  clamp_rhs();

  std::vector<double> reduced(total + 1, 0.0);  // maintained objective row
  auto rebuild_reduced = [&](const std::vector<double>& cost) {
    for (int j = 0; j <= total; ++j) {
      double rc = j < total ? cost[j] : 0.0;
      for (int i = 0; i < m; ++i) {
        double cb = cost[basis[i]];
        if (cb != 0.0) rc -= cb * t[i][j];
      }
      reduced[j] = rc;
    }
  };

  auto pivot = [&](int row, int col) {
    double inv = 1.0 / t[row][col];
    for (int j = 0; j <= total; ++j) t[row][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = t[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) t[i][j] -= f * t[row][j];
    }
    double frc = reduced[col];
    if (frc != 0.0) {
      for (int j = 0; j <= total; ++j) reduced[j] -= frc * t[row][j];
    }
    basis[row] = col;
    clamp_rhs();
  };

  auto run_phase = [&](const std::vector<double>& cost, int active_cols) -> bool {
    rebuild_reduced(cost);
    for (long iter = 0;; ++iter) {
      if (iter > 500000) throw std::runtime_error("simplex: iteration limit exceeded");
      if (iter % 512 == 0 && iter > 0) rebuild_reduced(cost);  // drift control
      int enter = -1;
      for (int j = 0; j < active_cols; ++j) {
        if (reduced[j] < -1e-9) {
          enter = j;  // Bland: lowest eligible index
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] > 1e-9) {
          double ratio = t[i][total] / t[i][enter];
          if (leave < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the sum of artificials.
  std::vector<double> phase1_cost(total, 0.0);
  for (int j = n; j < total; ++j) phase1_cost[j] = 1.0;
  if (!run_phase(phase1_cost, total)) {
    throw std::runtime_error("simplex: phase-1 unbounded (should be impossible)");
  }
  double phase1_obj = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) phase1_obj += t[i][total];
  SimplexOutcome out;
  if (phase1_obj > 1e-7) {
    out.optimal = false;
    return out;
  }
  // Drive any lingering artificial variables out of the basis.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t[i][j]) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) pivot(i, col);
    // else: redundant row, harmless to keep with its artificial at zero.
  }

  // Phase 2 over structural columns only.
  std::vector<double> phase2_cost(total, 0.0);
  for (int j = 0; j < n; ++j) phase2_cost[j] = c[j];
  if (!run_phase(phase2_cost, n)) {
    throw std::runtime_error("simplex: phase-2 unbounded");
  }
  out.optimal = true;
  out.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = t[i][total];
  }
  out.objective = 0.0;
  for (int j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

std::vector<std::vector<double>> basis_choi_columns(const BasisSet& basis) {
  std::vector<std::vector<double>> cols;
  cols.reserve(basis.size());
  for (const BasisElement& e : basis.elements) {
    cols.push_back(vec_real_hermitian(choi_of(e.op)));
  }
  return cols;
}

}  // namespace

std::vector<double> vec_real_hermitian(const Matrix& m) {
  int d = m.rows();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) out.push_back(m(i, i).real());
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      out.push_back(r2 * m(i, j).real());
      out.push_back(r2 * m(i, j).imag());
    }
  }
  return out;
}

std::vector<double> QPDecomposition::cumulative() const {
  std::vector<double> c(probabilities.size());
  double acc = 0.0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    c[i] = acc;
  }
  if (!c.empty()) c.back() = std::max(c.back(), 1.0);
  return c;
}

QPDecomposition solve_exact(const QuantumOperation& target, const BasisSet& basis) {
  if (target.qubit_count != basis.qubit_count) {
    throw std::invalid_argument("solve_exact: arity mismatch between target and basis");
  }
  size_t want = size_t(1) << (4 * basis.qubit_count);  // 16^k
  if (basis.size() != want) {
    throw std::invalid_argument("solve_exact: basis has " + std::to_string(basis.size()) +
                                " elements, need exactly " + std::to_string(want));
  }
  std::vector<std::vector<double>> cols = basis_choi_columns(basis);
  int dim = static_cast<int>(cols[0].size());
  std::vector<std::vector<double>> rows_for_rank = cols;
  int rank = matrix_rank_real(std::move(rows_for_rank), 1e-9);
  if (rank != dim) {
    throw std::runtime_error("solve_exact: basis Choi stack is rank-deficient (rank " +
                             std::to_string(rank) + " of " + std::to_string(dim) + ")");
  }
  // Column-major system: A q = b with A[r][i] = cols[i][r].
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim));
  for (int r = 0; r < dim; ++r)
    for (int i = 0; i < dim; ++i) a[r][i] = cols[i][r];
  std::vector<double> b = vec_real_hermitian(choi_of(target));
  std::vector<double> q = solve_linear_real(a, b);
  QPDecomposition d = finish(basis, target, std::move(q));
  if (d.residual > 1e-8) {
    throw std::runtime_error("solve_exact: reconstruction residual " +
                             std::to_string(d.residual) + " exceeds 1e-8");
  }
  return d;
}

QPDecomposition solve_min_gamma(const QuantumOperation& target, const BasisSet& basis) {
  if (target.qubit_count != basis.qubit_count) {
    throw std::invalid_argument("solve_min_gamma: arity mismatch between target and basis");
  }
  std::vector<std::vector<double>> cols = basis_choi_columns(basis);
  std::vector<double> b = vec_real_hermitian(choi_of(target));
  int nb = static_cast<int>(cols.size());
  int m_full = static_cast<int>(b.size());

  // Span membership pre-check.
  double ls_residual = 0.0;
  least_squares_real(cols, b, &ls_residual);
  if (ls_residual > 1e-7) {
    throw std::runtime_error(
        "solve_min_gamma: target Choi lies outside the basis span (least-squares residual " +
        std::to_string(ls_residual) + ")");
  }

  // Row-reduce [A | b] to a full-row-rank equality system before the LP.
  std::vector<std::vector<double>> aug(m_full, std::vector<double>(nb + 1));
  for (int r = 0; r < m_full; ++r) {
    for (int i = 0; i < nb; ++i) aug[r][i] = cols[i][r];
    aug[r][nb] = b[r];
  }
  int rank = 0;
  for (int col = 0; col < nb && rank < m_full; ++col) {
    int piv = -1;
    double best = 1e-9;
    for (int r = rank; r < m_full; ++r) {
      if (std::abs(aug[r][col]) > best) {
        best = std::abs(aug[r][col]);
        piv = r;
      }
    }
    if (piv < 0) continue;
    std::swap(aug[rank], aug[piv]);
    double inv = 1.0 / aug[rank][col];
    for (int c2 = 0; c2 <= nb; ++c2) aug[rank][c2] *= inv;
    for (int r = 0; r < m_full; ++r) {
      if (r == rank) continue;
      double f = aug[r][col];
      if (f == 0.0) continue;
      for (int c2 = 0; c2 <= nb; ++c2) aug[r][c2] -= f * aug[rank][c2];
    }
    ++rank;
  }
  for (int r = rank; r < m_full; ++r) {
    if (std::abs(aug[r][nb]) > 1e-7) {
      throw std::runtime_error("solve_min_gamma: inconsistent constraint system (residual row " +
                               std::to_string(aug[r][nb]) + ")");
    }
  }

  // LP over split variables q = q+ - q-.
  int m = rank;
  std::vector<std::vector<double>> a_lp(m, std::vector<double>(2 * nb));
  std::vector<double> b_lp(m);
  for (int r = 0; r < m; ++r) {
    double sign = aug[r][nb] < 0.0 ? -1.0 : 1.0;  // keep rhs nonnegative
    for (int i = 0; i < nb; ++i) {
      a_lp[r][i] = sign * aug[r][i];
      a_lp[r][nb + i] = -sign * aug[r][i];
    }
    b_lp[r] = sign * aug[r][nb];
  }
  std::vector<double> cost(2 * nb, 1.0);
  SimplexOutcome lp = simplex_min(std::move(a_lp), std::move(b_lp), cost);
  if (!lp.optimal) {
    throw std::runtime_error("solve_min_gamma: linear program infeasible for this target");
  }
  std::vector<double> q(nb);
  for (int i = 0; i < nb; ++i) q[i] = lp.x[i] - lp.x[nb + i];
  QPDecomposition d = finish(basis, target, std::move(q));
  if (d.residual > 1e-6) {
    throw std::runtime_error("solve_min_gamma: LP solution fails reconstruction (residual " +
                             std::to_string(d.residual) + ")");
  }
  return d;
}

double diamond_lower_bound_ite(const Matrix& h, double beta) {
  EigenSystem es = eigh(h);
  return std::exp(-2.0 * beta * es.eigenvalues.front());
}

double reconstruct_residual(const QPDecomposition& d, const BasisSet& basis,
                            const QuantumOperation& target) {
  if (d.coefficients.size() != basis.size()) {
    throw std::invalid_argument("reconstruct_residual: coefficient/basis size mismatch");
  }
  Matrix acc = choi_of(target);
  for (size_t i = 0; i < basis.size(); ++i) {
    double qi = d.coefficients[i];
    if (qi == 0.0) continue;
    acc -= cdouble(qi, 0.0) * choi_of(basis.elements[i].op);
  }
  return acc.frobenius_norm();
}

nlohmann::json qpd_to_json(const QPDecomposition& d) {
  nlohmann::json j;
  j["basis_label"] = d.basis_label;
  j["coefficients"] = d.coefficients;
  j["gamma"] = d.gamma;
  j["residual"] = d.residual;
  return j;
}

}  // namespace qpdite
