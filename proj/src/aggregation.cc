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

#include "aggrcut/aggregation.h"

#include <algorithm>
#include <cmath>

namespace aggrcut {

std::pair<Eigen::VectorXd, double> reconstruct_aggregation(
    const MilpInstance& instance, const std::vector<SparseEntry>& factors) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(instance.num_variables());
  double beta = 0.0;
  for (const SparseEntry& f : factors) {
    const Row& row = instance.rows[f.index];
    for (const SparseEntry& e : row.coefficients.entries()) {
      alpha(e.index) += f.value * e.value;
    }
    beta += f.value * row.rhs;
  }
  return {alpha, beta};
}

std::vector<int> residual_bad_columns(const SeparationContext& ctx,
                                      const Eigen::VectorXd& coefficients,
                                      double tolerance) {
  std::vector<int> residual;
  for (int j : ctx.bad_vars) {
    if (std::abs(coefficients(j)) > tolerance) residual.push_back(j);
  }
  return residual;
}

AggregationResult make_aggregation(const SeparationContext& ctx,
                                   Algorithm algorithm, int starting_row,
                                   std::vector<SparseEntry> factors,
                                   double tolerance) {
  std::sort(factors.begin(), factors.end(),
            [](const SparseEntry& a, const SparseEntry& b) {
              return a.index < b.index;
            });
  AggregationResult result;
  result.algorithm = algorithm;
  result.starting_row = starting_row;
  result.used_rows.push_back(starting_row);
  for (const SparseEntry& f : factors) {
    if (f.index != starting_row) result.used_rows.push_back(f.index);
  }
  auto [alpha, beta] = reconstruct_aggregation(ctx.model(), factors);
  result.factors = std::move(factors);
  result.residual_bad = residual_bad_columns(ctx, alpha, tolerance);
  result.coefficients = SparseRow::from_dense(alpha, tolerance);
  result.rhs = beta;
  return result;
}

int distinct_bad_columns(const SeparationContext& ctx,
                         const std::vector<int>& rows) {
  std::vector<bool> seen(ctx.bad_vars.size(), false);
  int count = 0;
  for (int i : rows) {
    for (const SparseEntry& e : ctx.model().rows[i].coefficients.entries()) {
      const int pos = ctx.bad_position[e.index];
      if (pos >= 0 && !seen[pos]) {
        seen[pos] = true;
        ++count;
      }
    }
  }
  return count;
}

}  // namespace aggrcut
