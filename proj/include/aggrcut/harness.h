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

#ifndef AGGRCUT_HARNESS_H_
#define AGGRCUT_HARNESS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "aggrcut/aggregation.h"
#include "aggrcut/cut_record.h"
#include "aggrcut/instance.h"
#include "aggrcut/lp.h"
#include "aggrcut/preprocess.h"

namespace aggrcut {

enum class AlgorithmChoice { kMw, kLasso, kBoth };

struct StartRowPolicy {
  enum class Kind { kAllUseful, kTopK, kNamed };
  Kind kind = Kind::kTopK;
  int k = 20;
  std::vector<std::string> names;
};

struct RunConfig {
  AlgorithmChoice algorithm = AlgorithmChoice::kBoth;
  int maxaggr = 6;
  double density_threshold = 0.0;
  int max_bad_vars = 50;
  int max_useful_rows = 5000;
  StartRowPolicy start_rows;
  // Recorded in reports; no decision currently depends on it.
  std::uint64_t seed = 0;
  double violation_threshold = 1e-4;
};

struct SparsityMetrics {
  int aggregations = 0;
  double bad_cols = 0.0;
  double total_bad_cols = 0.0;
  double ratio = 0.0;
  double used_rows = 0.0;
  bool empty = true;
  // False when total_bad_cols is zero.
  bool ratio_defined = false;
};

SparsityMetrics sparsity_metrics(const std::vector<AggregationResult>& aggs,
                                 const SeparationContext& ctx);

// Means over per-aggregation counts; ratio = mean(bad) / mean(total).
SparsityMetrics metrics_from_counts(const std::vector<int>& bad_cols,
                                    const std::vector<int>& total_bad_cols,
                                    const std::vector<int>& used_rows);

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::kMw;
  bool nothing_to_do = false;
  std::vector<int> starting_rows;
  std::vector<AggregationResult> aggregations;
  std::vector<int> total_bad_cols;  // per aggregation
  std::vector<CutRecord> cuts;
  std::vector<std::string> diagnostics;
  SparsityMetrics metrics;
};

struct SeparationRun {
  std::string instance_name;
  std::vector<AlgorithmRun> runs;
  // All cuts, mw before lasso, each in starting-row order.
  std::vector<CutRecord> cuts;
};

// `duals` may be empty. MW uses normal rows only; lasso runs in unified
// mode so bound rows can be aggregated too.
SeparationRun run_separation(const MilpInstance& instance,
                             const PointAssignment& point,
                             const Eigen::VectorXd& duals,
                             const RunConfig& config);

struct RelaxationResult {
  LpStatus status = LpStatus::kInfeasible;
  PointAssignment point;
  Eigen::VectorXd duals;
  double objective = 0.0;
};

// LP relaxation of the instance (integrality dropped).
RelaxationResult solve_relaxation(const MilpInstance& instance);

// Per-algorithm blocks of "key value" lines in fixed order.
void write_report(const SeparationRun& run, const RunConfig& config,
                  std::ostream& out);

// Metrics of both algorithms side by side.
void write_comparison(const SeparationRun& run, std::ostream& out);

}  // namespace aggrcut

#endif  // AGGRCUT_HARNESS_H_
