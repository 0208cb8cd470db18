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

// Marchand-Wolsey stepwise aggregation.
//
// Starting from one useful row, bad variables are visited by decreasing
// bound distance. For each, the first useful row (by score) that cancels it
// with a positive factor, without bringing back an already eliminated bad
// variable, is added. Factors are never revisited once chosen.

#ifndef AGGRCUT_MW_AGGREGATOR_H_
#define AGGRCUT_MW_AGGREGATOR_H_

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "aggrcut/aggregation.h"
#include "aggrcut/preprocess.h"

namespace aggrcut {

// The factor lambda > 0 with alpha_target + lambda * A_{row,target} = 0, or
// nothing when that factor is not strictly positive or the row does not
// touch `target`.
std::optional<double> elimination_factor(const Eigen::VectorXd& alpha,
                                         const Row& row, int target);

// Emits the bare starting row, then one aggregation per accepted step, and
// returns everything emitted. Throws ContractViolation if `start_row` is not
// a useful row of `ctx`.
std::vector<AggregationResult> mw_aggregate(
    const SeparationContext& ctx, int start_row, int maxaggr = 6,
    const AggregationCallback& on_aggregation = {});

}  // namespace aggrcut

#endif  // AGGRCUT_MW_AGGREGATOR_H_
