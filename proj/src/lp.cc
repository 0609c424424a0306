// Copyright 2026 The Confset Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "confset/lp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "confset/error.h"

namespace confset {

void LinearProgram::AddRow(std::vector<double> coeffs, Sense sense,
                           double rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars) {
    throw InputError("LinearProgram::AddRow: coefficient count mismatch");
  }
  rows.push_back(Row{std::move(coeffs), sense, rhs});
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxIterations = 200000;

class Tableau {
 public:
  Tableau(int rows, int cols)
      : m_(rows), n_(cols), a_(rows, std::vector<double>(cols + 1, 0.0)),
        basis_(rows, -1), reduced_(cols + 1, 0.0) {}

  double& at(int i, int j) { return a_[i][j]; }
  double& rhs(int i) { return a_[i][n_]; }
  int& basis(int i) { return basis_[i]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  // Loads reduced costs for maximizing `cost` under the current basis.
  void PriceOut(const std::vector<double>& cost) {
    for (int j = 0; j <= n_; ++j) {
      double z = 0.0;
      for (int i = 0; i < m_; ++i) z += cost[basis_[i]] * a_[i][j];
      reduced_[j] = (j < n_ ? cost[j] : 0.0) - z;
    }
  }

  double ObjectiveValue() const { return -reduced_[n_]; }

  void Pivot(int r, int c) {
    const double inv = 1.0 / a_[r][c];
    for (double& v : a_[r]) v *= inv;
    a_[r][c] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = a_[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_; ++j) a_[i][j] -= f * a_[r][j];
      a_[i][c] = 0.0;
    }
    const double f = reduced_[c];
    if (f != 0.0) {
      for (int j = 0; j <= n_; ++j) reduced_[j] -= f * a_[r][j];
      reduced_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Runs Bland-rule iterations over columns with allowed[j] set. Returns
  // false when the problem is unbounded along an entering column.
  bool Optimize(const std::vector<bool>& allowed, double tol) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      for (int j = 0; j < n_; ++j) {
        if (allowed[j] && reduced_[j] > tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (a_[i][enter] <= kPivotEps) continue;
        const double ratio = a_[i][n_] / a_[i][enter];
        if (leave < 0 || ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 &&
             basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
    throw std::runtime_error("SolveLp: iteration limit exceeded");
  }

 private:
  int m_;
  int n_;
  std::vector<std::vector<double>> a_;
  std::vector<int> basis_;
  std::vector<double> reduced_;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, double tolerance) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = lp.num_vars;

  // Column layout: [structural | slack/surplus | artificial].
  int num_slack = 0;
  int num_artificial = 0;
  std::vector<int> slack_col(m, -1), artificial_col(m, -1);
  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    LinearProgram::Sense sense = row.sense;
    if (row.rhs < 0.0) {
      sign[i] = -1.0;
      if (sense == LinearProgram::Sense::kLessEqual) {
        sense = LinearProgram::Sense::kGreaterEqual;
      } else if (sense == LinearProgram::Sense::kGreaterEqual) {
        sense = LinearProgram::Sense::kLessEqual;
      }
    }
    if (sense != LinearProgram::Sense::kEqual) slack_col[i] = num_slack++;
    if (sense != LinearProgram::Sense::kLessEqual) {
      artificial_col[i] = num_artificial++;
    }
  }
  const int total = n + num_slack + num_artificial;
  Tableau t(m, total);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (int j = 0; j < n; ++j) t.at(i, j) = sign[i] * row.coeffs[j];
    t.rhs(i) = sign[i] * row.rhs;
    const bool has_artificial = artificial_col[i] >= 0;
    if (slack_col[i] >= 0) {
      // A slack on a row that also needs an artificial is a surplus.
      t.at(i, n + slack_col[i]) = has_artificial ? -1.0 : 1.0;
    }
    if (has_artificial) {
      const int c = n + num_slack + artificial_col[i];
      t.at(i, c) = 1.0;
      t.basis(i) = c;
    } else {
      t.basis(i) = n + slack_col[i];
    }
  }

  std::vector<bool> allowed(total, true);
  if (num_artificial > 0) {
    std::vector<double> phase1(total, 0.0);
    for (int c = n + num_slack; c < total; ++c) phase1[c] = -1.0;
    t.PriceOut(phase1);
    t.Optimize(allowed, tolerance);
    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(lp.rows[i].rhs));
    if (t.ObjectiveValue() < -tolerance * scale) {
      return LpSolution{LpStatus::kInfeasible, 0.0, {}};
    }
    // Drive remaining zero-level artificials out of the basis where a
    // structural or slack column can replace them; otherwise the row is
    // redundant and the artificial stays pinned at zero.
    for (int i = 0; i < m; ++i) {
      if (t.basis(i) < n + num_slack) continue;
      for (int j = 0; j < n + num_slack; ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          t.Pivot(i, j);
          break;
        }
      }
    }
    for (int c = n + num_slack; c < total; ++c) allowed[c] = false;
  }

  std::vector<double> phase2(total, 0.0);
  for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.PriceOut(phase2);
  if (!t.Optimize(allowed, tolerance)) {
    return LpSolution{LpStatus::kUnbounded, 0.0, {}};
  }

  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (t.basis(i) < n) sol.x[t.basis(i)] = std::max(0.0, t.rhs(i));
  }
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace confset
