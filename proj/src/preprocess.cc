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

#include "aggrcut/preprocess.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aggrcut {

double bound_distance(int var, const PointAssignment& point,
                      const VariableBoundTable& bounds) {
  double tightest = bounds.simple_upper[var];
  for (const ImpliedBound& ib : bounds.implied[var]) {
    tightest = std::min(tightest, ib.upper + ib.factor * point(ib.integer_var));
  }
  if (!std::isfinite(tightest)) return kInfinity;
  return std::max(0.0, tightest - point(var));
}

namespace {

double Fractionality(double value) {
  return std::abs(value - std::round(value));
}

}  // namespace

double row_score(const Row& row, double dual, const PointAssignment& point,
                 const MilpInstance& instance,
                 const Eigen::VectorXd& distances,
                 const RowScoreInputs& inputs) {
  const double dual_part = std::abs(dual) / (1.0 + inputs.max_abs_dual);
  const double sparsity_part =
      1.0 - static_cast<double>(row.coefficients.size()) /
                std::max(1, inputs.num_variables);
  const double slack_part = std::exp(-std::max(0.0, row_slack(row, point)));

  double integer_sum = 0.0;
  int integer_count = 0;
  double continuous_sum = 0.0;
  int continuous_count = 0;
  for (const SparseEntry& e : row.coefficients.entries()) {
    if (instance.variables[e.index].is_integer()) {
      integer_sum += Fractionality(point(e.index));
      ++integer_count;
    } else {
      const double bd = distances(e.index);
      continuous_sum += std::isfinite(bd) ? bd / (1.0 + bd) : 1.0;
      ++continuous_count;
    }
  }
  const double integer_part =
      integer_count > 0 ? integer_sum / integer_count : 0.0;
  const double continuous_part =
      continuous_count > 0 ? continuous_sum / continuous_count : 0.0;
  return dual_part + sparsity_part + slack_part + integer_part +
         continuous_part;
}

SeparationContext preprocess(const MilpInstance& instance,
                             const PointAssignment& point,
                             const Eigen::VectorXd& duals,
                             const PreprocessConfig& config) {
  const int n = instance.num_variables();
  const int m = instance.num_rows();
  if (point.size() != n) {
    throw ContractViolation("point dimension does not match the instance");
  }
  if (duals.size() != 0 && duals.size() != m) {
    throw ContractViolation("dual vector dimension does not match the rows");
  }

  SeparationContext ctx;
  ctx.instance = &instance;
  ctx.mode = config.mode;
  ctx.bounds = detect_variable_bounds(instance);
  ctx.duals = duals.size() == m ? duals : Eigen::VectorXd::Zero(m);
  ctx.point = point;
  for (int j = 0; j < n; ++j) {
    const Variable& v = instance.variables[j];
    ctx.point(j) = std::clamp(point(j), v.lower, v.upper);
  }

  ctx.bound_distance = Eigen::VectorXd::Zero(n);
  std::vector<int> candidates;
  double max_finite = 0.0;
  for (int j = 0; j < n; ++j) {
    if (instance.variables[j].is_integer()) continue;
    const double bd = bound_distance(j, ctx.point, ctx.bounds);
    ctx.bound_distance(j) = bd;
    if (bd > 0.0) {
      candidates.push_back(j);
      if (std::isfinite(bd)) max_finite = std::max(max_finite, bd);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return ctx.bound_distance(a) > ctx.bound_distance(b);
  });
  if (static_cast<int>(candidates.size()) > config.max_bad_vars) {
    candidates.resize(std::max(0, config.max_bad_vars));
  }
  const double unbounded_weight =
      std::max(config.unbounded_distance_weight, 2.0 * max_finite);
  ctx.bad_vars = candidates;
  ctx.bad_position.assign(n, -1);
  for (size_t k = 0; k < ctx.bad_vars.size(); ++k) {
    const int j = ctx.bad_vars[k];
    ctx.bad_position[j] = static_cast<int>(k);
    const double bd = ctx.bound_distance(j);
    ctx.weights.push_back(std::isfinite(bd) ? bd : unbounded_weight);
  }

  ctx.slack.resize(m);
  for (int i = 0; i < m; ++i) {
    ctx.slack(i) = std::max(0.0, row_slack(instance.rows[i], ctx.point));
  }

  ctx.useful_position.assign(m, -1);
  if (ctx.bad_vars.empty()) return ctx;

  RowScoreInputs inputs;
  inputs.num_variables = n;
  inputs.max_abs_dual = ctx.duals.size() > 0
                            ? ctx.duals.lpNorm<Eigen::Infinity>()
                            : 0.0;
  std::vector<int> rows;
  std::vector<double> all_scores(m, 0.0);
  for (int i = 0; i < m; ++i) {
    if (config.mode == RowMode::kNormalRowsOnly && ctx.bounds.is_bound_row[i]) {
      continue;
    }
    const Row& row = instance.rows[i];
    const bool touches_bad = std::any_of(
        row.coefficients.entries().begin(), row.coefficients.entries().end(),
        [&](const SparseEntry& e) { return ctx.bad_position[e.index] >= 0; });
    if (!touches_bad) continue;
    rows.push_back(i);
    all_scores[i] = row_score(row, ctx.duals(i), ctx.point, instance,
                              ctx.bound_distance, inputs);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](int a, int b) {
    return all_scores[a] > all_scores[b];
  });
  if (static_cast<int>(rows.size()) > config.max_useful_rows) {
    rows.resize(std::max(0, config.max_useful_rows));
  }
  ctx.useful_rows = rows;
  for (size_t k = 0; k < rows.size(); ++k) {
    ctx.useful_position[rows[k]] = static_cast<int>(k);
    ctx.scores.push_back(all_scores[rows[k]]);
  }
  return ctx;
}

}  // namespace aggrcut
