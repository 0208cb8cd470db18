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

#ifndef AGGRCUT_PREPROCESS_H_
#define AGGRCUT_PREPROCESS_H_

#include <vector>

#include <Eigen/Core>

#include "aggrcut/instance.h"

namespace aggrcut {

enum class RowMode {
  // Bound rows are excluded from the useful rows.
  kNormalRowsOnly,
  // Bound rows may be aggregated like any other row.
  kUnified,
};

struct PreprocessConfig {
  int max_bad_vars = 50;
  int max_useful_rows = 5000;
  RowMode mode = RowMode::kNormalRowsOnly;
  // Weight given to bad variables whose bound distance is infinite; raised
  // to twice the largest finite distance when that is bigger.
  double unbounded_distance_weight = 1e3;
};

// Frozen output of preprocessing for one point. Immutable after
// construction; holds a non-owning pointer to the instance.
struct SeparationContext {
  const MilpInstance* instance = nullptr;
  VariableBoundTable bounds;
  // Point clipped into the variable bounds.
  PointAssignment point;
  Eigen::VectorXd duals;
  RowMode mode = RowMode::kNormalRowsOnly;

  // Indexed by variable; 0 for integer variables, may be +inf.
  Eigen::VectorXd bound_distance;
  // Indexed by row: max(0, rhs - a*x).
  Eigen::VectorXd slack;

  // Bad variables by decreasing bound distance, with their LP weights.
  std::vector<int> bad_vars;
  std::vector<double> weights;
  // Position in bad_vars per variable, -1 if not bad.
  std::vector<int> bad_position;

  // Useful rows by decreasing score.
  std::vector<int> useful_rows;
  std::vector<double> scores;
  // Position in useful_rows per row, -1 if not useful.
  std::vector<int> useful_position;

  bool nothing_to_do() const { return bad_vars.empty(); }
  bool is_bad(int var) const { return bad_position[var] >= 0; }
  bool is_useful(int row) const { return useful_position[row] >= 0; }
  const MilpInstance& model() const { return *instance; }
};

// min({u_j} U {u_jj' + d_jj' x_j'}) - x_j, clamped at 0; +inf when no
// finite candidate exists.
double bound_distance(int var, const PointAssignment& point,
                      const VariableBoundTable& bounds);

struct RowScoreInputs {
  double max_abs_dual = 0.0;
  int num_variables = 1;
};

// Sum of five [0,1] addends: normalized |dual|, sparsity, exp(-slack),
// mean integer fractionality and mean bd/(1+bd) over continuous variables.
double row_score(const Row& row, double dual, const PointAssignment& point,
                 const MilpInstance& instance,
                 const Eigen::VectorXd& distances,
                 const RowScoreInputs& inputs);

// `duals` may be empty, in which case all duals are taken as zero.
SeparationContext preprocess(const MilpInstance& instance,
                             const PointAssignment& point,
                             const Eigen::VectorXd& duals,
                             const PreprocessConfig& config = {});

}  // namespace aggrcut

#endif  // AGGRCUT_PREPROCESS_H_
