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

#include "aggrcut/mw_aggregator.h"

#include <algorithm>
#include <cmath>

namespace aggrcut {

std::optional<double> elimination_factor(const Eigen::VectorXd& alpha,
                                         const Row& row, int target) {
  const double a = row.coefficients.coefficient(target);
  if (a == 0.0) return std::nullopt;
  const double factor = -alpha(target) / a;
  if (!(factor > 0.0)) return std::nullopt;
  return factor;
}

std::vector<AggregationResult> mw_aggregate(
    const SeparationContext& ctx, int start_row, int maxaggr,
    const AggregationCallback& on_aggregation) {
  if (start_row < 0 || start_row >= ctx.model().num_rows() ||
      !ctx.is_useful(start_row)) {
    throw ContractViolation("starting row is not a useful row");
  }
  const MilpInstance& instance = ctx.model();
  std::vector<AggregationResult> emitted;

  Eigen::VectorXd alpha =
      instance.rows[start_row].coefficients.to_dense(instance.num_variables());
  std::vector<SparseEntry> factors = {{start_row, 1.0}};
  std::vector<int> used = {start_row};
  std::vector<int> eliminated;
  int steps = 0;

  auto emit = [&] {
    AggregationResult result =
        make_aggregation(ctx, Algorithm::kMw, start_row, factors);
    result.used_rows = used;
    result.eliminated = eliminated;
    result.round = steps;
    if (on_aggregation) on_aggregation(result);
    emitted.push_back(std::move(result));
  };
  emit();

  for (int target : ctx.bad_vars) {
    if (std::find(eliminated.begin(), eliminated.end(), target) !=
        eliminated.end()) {
      continue;
    }
    if (std::abs(alpha(target)) <= kZeroTolerance) continue;
    for (int i : ctx.useful_rows) {
      if (std::find(used.begin(), used.end(), i) != used.end()) continue;
      const Row& row = instance.rows[i];
      std::optional<double> factor = elimination_factor(alpha, row, target);
      if (!factor.has_value()) continue;

      Eigen::VectorXd candidate = alpha;
      for (const SparseEntry& e : row.coefficients.entries()) {
        candidate(e.index) += *factor * e.value;
      }
      candidate(target) = 0.0;
      const bool reintroduces =
          std::any_of(eliminated.begin(), eliminated.end(), [&](int j) {
            return std::abs(candidate(j)) > kZeroTolerance;
          });
      if (reintroduces) continue;

      alpha = std::move(candidate);
      factors.push_back({i, *factor});
      used.push_back(i);
      eliminated.push_back(target);
      ++steps;
      emit();
      if (steps >= maxaggr) return emitted;
      break;
    }
  }
  return emitted;
}

}  // namespace aggrcut
