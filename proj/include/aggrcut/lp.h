// Copyright 2026 The aggrcut Authors
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

// Small-scale bounded-variable primal simplex.
//
// Problems have the form
//
//   min  c^T x
//   s.t. A_i x  = b_i   (rows with LpRowSense::kEqual)
//        A_i x <= b_i   (rows with LpRowSense::kLessEqual)
//        l <= x <= u
//
// Each row receives a logical (slack) column internally. The basis matrix is
// refactorized with a dense LU at every iteration, which keeps the engine
// simple and numerically steady for the few-hundred-row problems it targets.

#ifndef AGGRCUT_LP_H_
#define AGGRCUT_LP_H_

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "aggrcut/instance.h"

namespace aggrcut {

enum class LpRowSense { kEqual, kLessEqual };

struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::VectorXd col_lower;
  Eigen::VectorXd col_upper;
  Eigen::SparseMatrix<double> matrix;  // rows x cols, column-major
  Eigen::VectorXd rhs;
  std::vector<LpRowSense> sense;

  int num_cols() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  // Throws ContractViolation on inconsistent dimensions or bounds.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* LpStatusName(LpStatus status);

enum class BasisStatus : unsigned char { kBasic, kAtLower, kAtUpper, kFree };

// Structural columns first, then one logical column per row.
struct WarmStart {
  std::vector<BasisStatus> status;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd primal;
  // Row duals y with reduced costs c - A^T y; y_i <= 0 on active <= rows.
  Eigen::VectorXd duals;
  double objective = 0.0;
  WarmStart basis;
  int iterations = 0;
  bool warm_started = false;
};

class LpNumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpOptions {
  // 0 selects 50 * (rows + cols).
  int iteration_limit = 0;
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-7;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after_degenerate = 1000;
};

// Solves `problem`. A warm start that does not describe a nonsingular,
// primal feasible basis is silently replaced by a cold start.
// Throws LpNumericalFailure when the final point cannot be certified
// feasible.
LpSolution solve_lp(const LpProblem& problem,
                    const std::optional<WarmStart>& warm = std::nullopt,
                    const LpOptions& options = {});

// sum_k weight_k |expr_k(lambda)| + cost^T lambda, as an LP over
// [lambda, mu+_0, mu-_0, mu+_1, mu-_1, ...] with one equality row
// expr_k(lambda) - mu+_k + mu-_k = 0 per term.
struct AbsTerm {
  double weight = 0.0;
  SparseRow linear;       // over lambda indices
  double constant = 0.0;  // expr = linear * lambda + constant
};

LpProblem build_abs_value_lp(const std::vector<AbsTerm>& terms,
                             const Eigen::VectorXd& linear_cost,
                             const Eigen::VectorXd& lambda_lower,
                             const Eigen::VectorXd& lambda_upper);

// Primal feasible starting basis for a build_abs_value_lp problem: lambda
// columns sit at a finite bound and one split variable per term is basic.
// Skips phase 1 and leaves lambda at its bounds when nothing is gained by
// moving it.
WarmStart abs_value_crash_basis(const LpProblem& problem, int num_lambda);

// Column indices of the split variables of term k in a build_abs_value_lp
// problem with `num_lambda` leading columns.
inline int mu_plus_column(int num_lambda, int k) { return num_lambda + 2 * k; }
inline int mu_minus_column(int num_lambda, int k) {
  return num_lambda + 2 * k + 1;
}

}  // namespace aggrcut

#endif  // AGGRCUT_LP_H_
