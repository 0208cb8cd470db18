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

// Sparsity-driven aggregation through weighted l1 minimization.
//
// The first LP trades the weighted l1 norm of the aggregated bad-variable
// coefficients against the slack of the aggregated row:
//
//   min  sum_{j in J} w_j |sum_{i in I} A_ij lambda_i|
//          + sum_{i in I} slack_i lambda_i
//   s.t. lambda >= 0, lambda_{i0} >= 1.
//
// While too many bad variables survive, the weights are rescaled by the
// current aggregated coefficients and the slack-free LP is re-solved on the
// support found by the first solve.

#ifndef AGGRCUT_LASSO_AGGREGATOR_H_
#define AGGRCUT_LASSO_AGGREGATOR_H_

#include <span>
#include <vector>

#include "aggrcut/aggregation.h"
#include "aggrcut/lp.h"
#include "aggrcut/preprocess.h"

namespace aggrcut {

struct LassoConfig {
  int maxaggr = 6;
  // Reweighting continues while the bad-column density exceeds this.
  double density_threshold = 0.0;
  double reweight_epsilon = 1e-6;
  double lambda_cap = 1e6;
  double zero_tolerance = kZeroTolerance;
};

// The LP together with the row index behind each lambda column. Lambda
// columns come first, followed by one split pair per bad variable in
// SeparationContext::bad_vars order.
struct LassoLp {
  LpProblem lp;
  std::vector<int> rows;

  int num_lambda() const { return static_cast<int>(rows.size()); }
};

// Lambda columns cover every useful row of `ctx`.
LassoLp build_lasso_lp(const SeparationContext& ctx, int start_row,
                       const LassoConfig& config = {});

// Same column layout as build_lasso_lp, so bases carry over between the two.
// Rows outside `active` are fixed to zero and there is no slack cost.
LassoLp build_reweighted_lp(const SeparationContext& ctx,
                            const std::vector<int>& active, int start_row,
                            std::span<const double> weights,
                            const LassoConfig& config = {});

// w_j / (eps + |a_j|) where |a_j| > tolerance, else 0.
std::vector<double> reweight(std::span<const double> weights,
                             std::span<const double> aggregated, double eps,
                             double tolerance = kZeroTolerance);

// Throws AggregationFailure if an LP does not solve to optimality;
// aggregations already handed to the callback stay valid.
std::vector<AggregationResult> lasso_aggregate(
    const SeparationContext& ctx, int start_row, const LassoConfig& config = {},
    const AggregationCallback& on_aggregation = {});

// Objective of the first LP evaluated at arbitrary factors (row index ->
// lambda), for comparing aggregations produced by different methods.
double lasso_objective(const SeparationContext& ctx,
                       const std::vector<SparseEntry>& factors);

}  // namespace aggrcut

#endif  // AGGRCUT_LASSO_AGGREGATOR_H_
