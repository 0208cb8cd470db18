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

#include "aggrcut/harness.h"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <unordered_set>

#include "aggrcut/cmir.h"
#include "aggrcut/lasso_aggregator.h"
#include "aggrcut/mps_io.h"
#include "aggrcut/mw_aggregator.h"

namespace aggrcut {

SparsityMetrics metrics_from_counts(const std::vector<int>& bad_cols,
                                    const std::vector<int>& total_bad_cols,
                                    const std::vector<int>& used_rows) {
  SparsityMetrics metrics;
  metrics.aggregations = static_cast<int>(bad_cols.size());
  if (bad_cols.empty()) return metrics;
  metrics.empty = false;
  const double count = static_cast<double>(bad_cols.size());
  metrics.bad_cols =
      std::accumulate(bad_cols.begin(), bad_cols.end(), 0.0) / count;
  metrics.total_bad_cols =
      std::accumulate(total_bad_cols.begin(), total_bad_cols.end(), 0.0) /
      count;
  metrics.used_rows =
      std::accumulate(used_rows.begin(), used_rows.end(), 0.0) / count;
  metrics.ratio_defined = metrics.total_bad_cols > 0.0;
  metrics.ratio =
      metrics.ratio_defined ? metrics.bad_cols / metrics.total_bad_cols : 0.0;
  return metrics;
}

SparsityMetrics sparsity_metrics(const std::vector<AggregationResult>& aggs,
                                 const SeparationContext& ctx) {
  std::vector<int> bad;
  std::vector<int> total;
  std::vector<int> used;
  for (const AggregationResult& a : aggs) {
    bad.push_back(static_cast<int>(a.residual_bad.size()));
    total.push_back(distinct_bad_columns(ctx, a.used_rows));
    used.push_back(static_cast<int>(a.used_rows.size()));
  }
  return metrics_from_counts(bad, total, used);
}

namespace {

// Bound rows may be aggregated but never start an aggregation: substituting
// a row's own bound leaves nothing to separate, and both algorithms then
// draw from the same candidates.
std::vector<int> StartingRows(const SeparationContext& ctx,
                              const StartRowPolicy& policy,
                              std::vector<std::string>& diagnostics) {
  std::vector<int> rows;
  if (policy.kind != StartRowPolicy::Kind::kNamed) {
    for (int i : ctx.useful_rows) {
      if (!ctx.bounds.is_bound_row[i]) rows.push_back(i);
    }
    return rows;
  }
  for (const std::string& name : policy.names) {
    const int i = ctx.model().row_index(name);
    if (i < 0) {
      diagnostics.push_back("unknown starting row '" + name + "'");
    } else if (ctx.bounds.is_bound_row[i]) {
      diagnostics.push_back("starting row '" + name + "' is a bound row");
    } else if (!ctx.is_useful(i)) {
      diagnostics.push_back("starting row '" + name + "' is not useful");
    } else {
      rows.push_back(i);
    }
  }
  return rows;
}

AlgorithmRun RunOne(const MilpInstance& instance, const PointAssignment& point,
                    const Eigen::VectorXd& duals, const RunConfig& config,
                    Algorithm algorithm) {
  PreprocessConfig pre;
  pre.max_bad_vars = config.max_bad_vars;
  pre.max_useful_rows = config.max_useful_rows;
  pre.mode = algorithm == Algorithm::kMw ? RowMode::kNormalRowsOnly
                                         : RowMode::kUnified;
  const SeparationContext ctx = preprocess(instance, point, duals, pre);

  AlgorithmRun run;
  run.algorithm = algorithm;
  run.nothing_to_do = ctx.nothing_to_do();
  if (run.nothing_to_do) return run;

  LassoConfig lasso;
  lasso.maxaggr = config.maxaggr;
  lasso.density_threshold = config.density_threshold;

  std::unordered_set<int> used_rows;
  const std::vector<int> candidates =
      StartingRows(ctx, config.start_rows, run.diagnostics);
  const int limit = config.start_rows.kind == StartRowPolicy::Kind::kTopK
                        ? config.start_rows.k
                        : static_cast<int>(candidates.size());
  for (int start : candidates) {
    if (static_cast<int>(run.starting_rows.size()) >= limit) break;
    if (used_rows.contains(start)) continue;
    run.starting_rows.push_back(start);

    auto on_aggregation = [&](const AggregationResult& agg) {
      run.aggregations.push_back(agg);
      run.total_bad_cols.push_back(distinct_bad_columns(ctx, agg.used_rows));
      for (int i : agg.used_rows) used_rows.insert(i);
      std::optional<CutRecord> cut =
          separate_on_aggregation(agg, ctx, config.violation_threshold);
      if (cut.has_value()) {
        cut->name = std::string(AlgorithmName(algorithm)) + "_" +
                    instance.rows[start].name + "_" +
                    std::to_string(agg.round);
        run.cuts.push_back(std::move(*cut));
      }
    };
    try {
      if (algorithm == Algorithm::kMw) {
        mw_aggregate(ctx, start, config.maxaggr, on_aggregation);
      } else {
        lasso_aggregate(ctx, start, lasso, on_aggregation);
      }
    } catch (const AggregationFailure& e) {
      run.diagnostics.push_back(e.what());
    }
  }

  std::vector<int> bad;
  std::vector<int> used;
  for (const AggregationResult& a : run.aggregations) {
    bad.push_back(static_cast<int>(a.residual_bad.size()));
    used.push_back(static_cast<int>(a.used_rows.size()));
  }
  run.metrics = metrics_from_counts(bad, run.total_bad_cols, used);
  return run;
}

}  // namespace

SeparationRun run_separation(const MilpInstance& instance,
                             const PointAssignment& point,
                             const Eigen::VectorXd& duals,
                             const RunConfig& config) {
  SeparationRun result;
  result.instance_name = instance.name;
  std::vector<Algorithm> algorithms;
  if (config.algorithm != AlgorithmChoice::kLasso) {
    algorithms.push_back(Algorithm::kMw);
  }
  if (config.algorithm != AlgorithmChoice::kMw) {
    algorithms.push_back(Algorithm::kLasso);
  }
  for (Algorithm algorithm : algorithms) {
    AlgorithmRun run = RunOne(instance, point, duals, config, algorithm);
    result.cuts.insert(result.cuts.end(), run.cuts.begin(), run.cuts.end());
    result.runs.push_back(std::move(run));
  }
  return result;
}

RelaxationResult solve_relaxation(const MilpInstance& instance) {
  const int n = instance.num_variables();
  const int m = instance.num_rows();
  LpProblem lp;
  lp.objective.resize(n);
  lp.col_lower.resize(n);
  lp.col_upper.resize(n);
  for (int j = 0; j < n; ++j) {
    lp.objective(j) = instance.variables[j].objective;
    lp.col_lower(j) = instance.variables[j].lower;
    lp.col_upper(j) = instance.variables[j].upper;
  }
  lp.rhs.resize(m);
  lp.sense.assign(m, LpRowSense::kLessEqual);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < m; ++i) {
    lp.rhs(i) = instance.rows[i].rhs;
    for (const SparseEntry& e : instance.rows[i].coefficients.entries()) {
      triplets.emplace_back(i, e.index, e.value);
    }
  }
  lp.matrix.resize(m, n);
  lp.matrix.setFromTriplets(triplets.begin(), triplets.end());

  const LpSolution solution = solve_lp(lp);
  RelaxationResult result;
  result.status = solution.status;
  if (solution.status == LpStatus::kOptimal) {
    result.point = solution.primal;
    result.duals = solution.duals;
    result.objective = solution.objective;
  }
  return result;
}

namespace {

std::string MetricValue(double value) { return FormatDouble(value); }

std::string RatioValue(const SparsityMetrics& m) {
  return m.ratio_defined ? FormatDouble(m.ratio) : "undefined";
}

}  // namespace

void write_report(const SeparationRun& run, const RunConfig& config,
                  std::ostream& out) {
  out << "instance " << (run.instance_name.empty() ? "-" : run.instance_name)
      << '\n';
  out << "seed " << config.seed << '\n';
  out << "maxaggr " << config.maxaggr << '\n';
  out << "density_threshold " << FormatDouble(config.density_threshold)
      << '\n';
  for (const AlgorithmRun& r : run.runs) {
    const SparsityMetrics& m = r.metrics;
    out << '\n' << "[" << AlgorithmName(r.algorithm) << "]\n";
    out << "status " << (r.nothing_to_do ? "nothing-to-do" : "ok") << '\n';
    out << "starting_rows " << r.starting_rows.size() << '\n';
    out << "aggregations " << m.aggregations << '\n';
    out << "cuts " << r.cuts.size() << '\n';
    out << "bad_cols " << MetricValue(m.bad_cols) << '\n';
    out << "total_bad_cols " << MetricValue(m.total_bad_cols) << '\n';
    out << "ratio " << RatioValue(m) << '\n';
    out << "used_rows " << MetricValue(m.used_rows) << '\n';
    out << "diagnostics " << r.diagnostics.size() << '\n';
    for (const std::string& d : r.diagnostics) out << "diagnostic " << d << '\n';
  }
}

void write_comparison(const SeparationRun& run, std::ostream& out) {
  out << std::left << std::setw(16) << "metric";
  for (const AlgorithmRun& r : run.runs) {
    out << std::setw(24) << AlgorithmName(r.algorithm);
  }
  out << '\n';
  auto line = [&](const char* name, auto value) {
    out << std::setw(16) << name;
    for (const AlgorithmRun& r : run.runs) out << std::setw(24) << value(r);
    out << '\n';
  };
  line("aggregations", [](const AlgorithmRun& r) {
    return std::to_string(r.metrics.aggregations);
  });
  line("cuts", [](const AlgorithmRun& r) { return std::to_string(r.cuts.size()); });
  line("bad-cols",
       [](const AlgorithmRun& r) { return MetricValue(r.metrics.bad_cols); });
  line("total-bad-cols", [](const AlgorithmRun& r) {
    return MetricValue(r.metrics.total_bad_cols);
  });
  line("ratio", [](const AlgorithmRun& r) { return RatioValue(r.metrics); });
  line("used-rows",
       [](const AlgorithmRun& r) { return MetricValue(r.metrics.used_rows); });
}

}  // namespace aggrcut
