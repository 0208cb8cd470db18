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

#include "aggrcut/lasso_aggregator.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace aggrcut {

namespace {

LassoLp BuildLp(const SeparationContext& ctx, int start_row,
                std::span<const double> weights, bool with_slack_cost,
                const std::vector<bool>* active, const LassoConfig& config) {
  if (start_row < 0 || start_row >= ctx.model().num_rows() ||
      !ctx.is_useful(start_row)) {
    throw ContractViolation("starting row is not a useful row");
  }
  if (weights.size() != ctx.bad_vars.size()) {
    throw ContractViolation("one weight per bad variable is required");
  }
  const MilpInstance& instance = ctx.model();
  LassoLp result;
  result.rows = ctx.useful_rows;
  const int k = result.num_lambda();

  std::vector<std::vector<SparseEntry>> term_entries(ctx.bad_vars.size());
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd upper = Eigen::VectorXd::Constant(k, config.lambda_cap);
  for (int col = 0; col < k; ++col) {
    const int i = result.rows[col];
    for (const SparseEntry& e : instance.rows[i].coefficients.entries()) {
      const int pos = ctx.bad_position[e.index];
      if (pos >= 0) term_entries[pos].push_back({col, e.value});
    }
    if (with_slack_cost) cost(col) = ctx.slack(i);
    if (active != nullptr && !(*active)[col]) upper(col) = 0.0;
    if (i == start_row) lower(col) = 1.0;
  }

  std::vector<AbsTerm> terms(ctx.bad_vars.size());
  for (size_t t = 0; t < terms.size(); ++t) {
    terms[t].weight = weights[t];
    terms[t].linear = SparseRow(std::move(term_entries[t]));
  }
  result.lp = build_abs_value_lp(terms, cost, lower, upper);
  return result;
}

std::vector<SparseEntry> Support(const LassoLp& lp,
                                 const Eigen::VectorXd& primal,
                                 double tolerance) {
  std::vector<SparseEntry> factors;
  for (int col = 0; col < lp.num_lambda(); ++col) {
    if (primal(col) > tolerance) factors.push_back({lp.rows[col], primal(col)});
  }
  return factors;
}

LpSolution SolveOrFail(const LassoLp& lp, const std::optional<WarmStart>& warm,
                       int start_row) {
  LpSolution solution;
  try {
    solution = solve_lp(lp.lp, warm);
  } catch (const LpNumericalFailure& e) {
    throw AggregationFailure("aggregation LP for starting row " +
                             std::to_string(start_row) + " failed: " +
                             e.what());
  }
  if (solution.status != LpStatus::kOptimal) {
    throw AggregationFailure("aggregation LP for starting row " +
                             std::to_string(start_row) + " ended " +
                             LpStatusName(solution.status));
  }
  return solution;
}

}  // namespace

LassoLp build_lasso_lp(const SeparationContext& ctx, int start_row,
                       const LassoConfig& config) {
  return BuildLp(ctx, start_row, ctx.weights, /*with_slack_cost=*/true,
                 nullptr, config);
}

LassoLp build_reweighted_lp(const SeparationContext& ctx,
                            const std::vector<int>& active, int start_row,
                            std::span<const double> weights,
                            const LassoConfig& config) {
  if (std::find(active.begin(), active.end(), start_row) == active.end()) {
    throw ContractViolation("the starting row must be active");
  }
  std::vector<bool> mask(ctx.useful_rows.size(), false);
  for (int i : active) {
    if (i < 0 || i >= ctx.model().num_rows() || !ctx.is_useful(i)) {
      throw ContractViolation("active rows must be useful rows");
    }
    mask[ctx.useful_position[i]] = true;
  }
  return BuildLp(ctx, start_row, weights, /*with_slack_cost=*/false, &mask,
                 config);
}

std::vector<double> reweight(std::span<const double> weights,
                             std::span<const double> aggregated, double eps,
                             double tolerance) {
  if (!(eps > 0.0)) throw ContractViolation("reweighting epsilon must be > 0");
  if (weights.size() != aggregated.size()) {
    throw ContractViolation("weights and aggregated values differ in length");
  }
  std::vector<double> updated(weights.size());
  for (size_t j = 0; j < weights.size(); ++j) {
    const double magnitude = std::abs(aggregated[j]);
    updated[j] = magnitude > tolerance ? weights[j] / (eps + magnitude) : 0.0;
  }
  return updated;
}

std::vector<AggregationResult> lasso_aggregate(
    const SeparationContext& ctx, int start_row, const LassoConfig& config,
    const AggregationCallback& on_aggregation) {
  const LassoLp lasso = build_lasso_lp(ctx, start_row, config);
  LpSolution solution = SolveOrFail(
      lasso, abs_value_crash_basis(lasso.lp, lasso.num_lambda()), start_row);

  std::vector<SparseEntry> factors =
      Support(lasso, solution.primal, config.zero_tolerance);
  std::vector<int> active;
  for (const SparseEntry& f : factors) active.push_back(f.index);
  std::vector<double> weights = ctx.weights;
  const MilpInstance& instance = ctx.model();

  std::vector<AggregationResult> emitted;
  int round = 0;
  while (true) {
    AggregationResult result =
        make_aggregation(ctx, Algorithm::kLasso, start_row, factors,
                         config.zero_tolerance);
    result.round = round;
    if (on_aggregation) on_aggregation(result);
    const double density =
        ctx.bad_vars.empty()
            ? 0.0
            : static_cast<double>(result.residual_bad.size()) /
                  ctx.bad_vars.size();
    emitted.push_back(std::move(result));
    if (!(density > config.density_threshold) || round >= config.maxaggr) {
      break;
    }

    ++round;
    auto [alpha, beta] = reconstruct_aggregation(instance, factors);
    std::vector<double> aggregated(ctx.bad_vars.size());
    for (size_t t = 0; t < ctx.bad_vars.size(); ++t) {
      aggregated[t] = alpha(ctx.bad_vars[t]);
    }
    weights = reweight(weights, aggregated, config.reweight_epsilon,
                       config.zero_tolerance);
    const LassoLp reweighted =
        build_reweighted_lp(ctx, active, start_row, weights, config);
    solution = SolveOrFail(reweighted, solution.basis, start_row);
    factors = Support(reweighted, solution.primal, config.zero_tolerance);
    active.clear();
    for (const SparseEntry& f : factors) active.push_back(f.index);
  }
  return emitted;
}

double lasso_objective(const SeparationContext& ctx,
                       const std::vector<SparseEntry>& factors) {
  auto [alpha, beta] = reconstruct_aggregation(ctx.model(), factors);
  double value = 0.0;
  for (size_t t = 0; t < ctx.bad_vars.size(); ++t) {
    value += ctx.weights[t] * std::abs(alpha(ctx.bad_vars[t]));
  }
  for (const SparseEntry& f : factors) value += f.value * ctx.slack(f.index);
  return value;
}

}  // namespace aggrcut
