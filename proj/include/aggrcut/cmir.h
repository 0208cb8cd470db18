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

// Complemented mixed-integer rounding on a single aggregated row.
//
// An aggregated row is first turned into a mixed knapsack row
//
//   sum_j a_j z_j <= b + s,   0 <= z_j <= u_j integer,  s >= 0,
//
// by substituting every continuous variable by a bound plus a nonnegative
// slack y_j and shifting integer variables to a zero lower bound. For a
// partition (T, U) of the integer terms and a divisor delta > 0, with
// beta = (b - sum_{j in U} a_j u_j) / delta and f = beta - floor(beta),
//
//   sum_{j in T} G(a_j / delta) z_j + sum_{j in U} G(-a_j / delta)(u_j - z_j)
//       <= floor(beta) + s / (delta (1 - f))
//
// is valid, where G(d) = floor(d) + max(f_d - f, 0) / (1 - f).

#ifndef AGGRCUT_CMIR_H_
#define AGGRCUT_CMIR_H_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "aggrcut/aggregation.h"
#include "aggrcut/cut_record.h"
#include "aggrcut/instance.h"
#include "aggrcut/preprocess.h"

namespace aggrcut {

template <typename Scalar>
Scalar g_function(Scalar d, Scalar f) {
  using std::floor;
  if (!(f < Scalar(1))) {
    throw ContractViolation("rounding function requires f < 1");
  }
  const Scalar floor_d = floor(d);
  const Scalar fd = d - floor_d;
  const Scalar excess = fd > f ? fd - f : Scalar(0);
  return floor_d + excess / (Scalar(1) - f);
}

// Integer term z = x_var - shift with 0 <= z <= upper.
struct KnapsackTerm {
  int var = -1;
  double coefficient = 0.0;
  double upper = 0.0;
  double shift = 0.0;
  double value = 0.0;  // z at the separated point
};

enum class SubstitutionKind {
  kSimpleUpper,   // y = u - x
  kImpliedUpper,  // y = u + d x_z - x
  kLower,         // y = x - l
};

// One continuous slack y folded into s with a nonnegative multiplier.
struct SlackTerm {
  int var = -1;
  double multiplier = 0.0;
  SubstitutionKind kind = SubstitutionKind::kSimpleUpper;
  double bound = 0.0;
  int integer_var = -1;  // implied bounds only
  double factor = 0.0;   // implied bounds only
  double value = 0.0;    // y at the separated point
};

struct MixedKnapsackRow {
  std::vector<KnapsackTerm> terms;
  double rhs = 0.0;
  std::vector<SlackTerm> slack;
  double slack_value = 0.0;
};

class DegenerateCut : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Knapsack-space form: coefficients^T z - slack_coefficient * s <= rhs;
// original-space form: original_coefficients^T x <= original_rhs.
struct CmirCut {
  std::vector<bool> complemented;  // per knapsack term, true when in U
  double delta = 1.0;
  double beta = 0.0;
  double f = 0.0;

  Eigen::VectorXd coefficients;
  double slack_coefficient = 0.0;
  double rhs = 0.0;

  SparseRow original_coefficients;
  double original_rhs = 0.0;

  // Measured at the knapsack image of the separated point.
  double violation = 0.0;
  double efficacy = 0.0;
};

// Returns nothing when a needed bound is infinite.
std::optional<MixedKnapsackRow> bound_substitute(
    const AggregationResult& aggregation, const SeparationContext& ctx);

// Throws DegenerateCut when f is within 1e-9 of 0 or 1, ContractViolation
// for delta <= 0 or a mismatched partition.
CmirCut cmir_inequality(const MixedKnapsackRow& row,
                        const std::vector<bool>& complemented, double delta);

// Terms whose point value is strictly closer to the upper bound than to 0.
std::vector<bool> proximity_partition(const MixedKnapsackRow& row);

// {1} and |a_j| for fractional z_j, each also halved and quartered, in
// first-seen order without duplicates.
std::vector<double> delta_candidates(const MixedKnapsackRow& row);

inline constexpr double kDefaultViolationThreshold = 1e-4;

// Tries every delta candidate with the proximity partition and keeps the
// cut of largest efficacy; returns it only if its violation exceeds
// `violation_threshold`.
std::optional<CmirCut> select_partition_and_delta(
    const MixedKnapsackRow& row,
    double violation_threshold = kDefaultViolationThreshold);

// bound_substitute followed by select_partition_and_delta. The record's
// name is left empty.
std::optional<CutRecord> separate_on_aggregation(
    const AggregationResult& aggregation, const SeparationContext& ctx,
    double violation_threshold = kDefaultViolationThreshold);

// Enumerates every integer z in the box with the smallest feasible s and
// checks the knapsack-space cut. Throws OracleRefused if the box has more
// than 10^6 points.
bool validate_cut_bruteforce(const CmirCut& cut, const MixedKnapsackRow& row);

}  // namespace aggrcut

#endif  // AGGRCUT_CMIR_H_
