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

#ifndef AGGRCUT_AGGREGATION_H_
#define AGGRCUT_AGGREGATION_H_

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "aggrcut/cut_record.h"
#include "aggrcut/instance.h"
#include "aggrcut/preprocess.h"

namespace aggrcut {

// A nonnegative row combination lambda^T (A x - b) <= 0 used as a base
// inequality.
struct AggregationResult {
  Algorithm algorithm = Algorithm::kMw;
  int starting_row = -1;
  // Row index -> factor, ascending row index, all factors > 0.
  std::vector<SparseEntry> factors;
  // Rows in the order they entered the aggregation.
  std::vector<int> used_rows;
  SparseRow coefficients;
  double rhs = 0.0;
  // Bad variables eliminated by accepted MW steps (empty for lasso).
  std::vector<int> eliminated;
  // Bad variables with a nonzero aggregated coefficient.
  std::vector<int> residual_bad;
  // MW step count or lasso reweighting round.
  int round = 0;
};

using AggregationCallback = std::function<void(const AggregationResult&)>;

// Raised when an aggregation run for one starting row cannot proceed.
class AggregationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recomputes (sum lambda_i A_i, sum lambda_i b_i) from the factors.
std::pair<Eigen::VectorXd, double> reconstruct_aggregation(
    const MilpInstance& instance, const std::vector<SparseEntry>& factors);

// Builds a result from factors: coefficients and rhs are recomputed and
// residual bad columns are read off with `tolerance`.
AggregationResult make_aggregation(const SeparationContext& ctx,
                                   Algorithm algorithm, int starting_row,
                                   std::vector<SparseEntry> factors,
                                   double tolerance = kZeroTolerance);

// Bad variables touched by any of the rows, i.e. the residual count an
// aggregation would have without any cancellation.
int distinct_bad_columns(const SeparationContext& ctx,
                         const std::vector<int>& rows);

std::vector<int> residual_bad_columns(const SeparationContext& ctx,
                                      const Eigen::VectorXd& coefficients,
                                      double tolerance = kZeroTolerance);

}  // namespace aggrcut

#endif  // AGGRCUT_AGGREGATION_H_
