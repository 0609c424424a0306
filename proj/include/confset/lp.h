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

#ifndef CONFSET_LP_H_
#define CONFSET_LP_H_

#include <vector>

namespace confset {

// Dense linear program over nonnegative variables:
//
//   maximize  objective . x   subject to  rows,  x >= 0.
//
// Sized for the small problems this library produces (best-reply
// certificates, transportation problems over a few dozen atoms).
struct LinearProgram {
  enum class Sense { kLessEqual, kGreaterEqual, kEqual };
  struct Row {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };

  explicit LinearProgram(int num_vars)
      : num_vars(num_vars), objective(num_vars, 0.0) {}

  void AddRow(std::vector<double> coeffs, Sense sense, double rhs);

  int num_vars;
  std::vector<double> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Two-phase primal simplex with Bland's rule, so it terminates on degenerate
// problems. `tolerance` is the feasibility / optimality threshold.
LpSolution SolveLp(const LinearProgram& lp, double tolerance = 1e-9);

}  // namespace confset

#endif  // CONFSET_LP_H_
