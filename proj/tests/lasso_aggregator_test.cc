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

#include <random>
#include <vector>

#include "aggrcut/mw_aggregator.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace aggrcut {
namespace {

using ::aggrcut::testing::Example1;
using ::aggrcut::testing::Example1TightPoint;
using ::aggrcut::testing::MakeRawRow;
using ::aggrcut::testing::MakeVariable;

Eigen::VectorXd LambdaByRow(const LassoLp& lasso, const LpSolution& s,
                            int num_rows) {
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(num_rows);
  for (int col = 0; col < lasso.num_lambda(); ++col) {
    lambda(lasso.rows[col]) = s.primal(col);
  }
  return lambda;
}

void ExpectProportionalTo112(const Eigen::VectorXd& lambda) {
  ASSERT_GT(lambda(0), 0.0);
  const Eigen::VectorXd scaled = lambda / lambda(0);
  EXPECT_NEAR(scaled(1), 1.0, 1e-6);
  EXPECT_NEAR(scaled(2), 2.0, 1e-6);
}

TEST(BuildLassoLpTest, Example1TightPointHasZeroOptimum) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx = preprocess(instance, Example1TightPoint(), {});
  ASSERT_LE(ctx.slack.cwiseAbs().maxCoeff(), 1e-12);
  for (int start = 0; start < 3; ++start) {
    const LassoLp lasso = build_lasso_lp(ctx, start);
    EXPECT_EQ(lasso.num_lambda(), 3);
    EXPECT_EQ(lasso.lp.num_cols(), 7);
    EXPECT_EQ(lasso.lp.num_rows(), 2);
    const LpSolution s = solve_lp(lasso.lp);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_NEAR(s.objective, 0.0, 1e-7);
    ExpectProportionalTo112(LambdaByRow(lasso, s, 3));
  }
}

SeparationContext WithoutBadVariables(SeparationContext ctx) {
  ctx.bad_vars.clear();
  ctx.weights.clear();
  std::fill(ctx.bad_position.begin(), ctx.bad_position.end(), -1);
  return ctx;
}

TEST(BuildLassoLpTest, NoBadColumnsLeavesOnlySlackCost) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx = WithoutBadVariables(
      preprocess(instance, Eigen::VectorXd::Zero(4), {}));
  const LassoLp lasso = build_lasso_lp(ctx, 1);
  EXPECT_EQ(lasso.lp.num_rows(), 0);
  const LpSolution s = solve_lp(lasso.lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, ctx.slack(1), 1e-12);
  const Eigen::VectorXd lambda = LambdaByRow(lasso, s, 3);
  EXPECT_EQ(lambda, Eigen::Vector3d(0.0, 1.0, 0.0));
}

TEST(BuildLassoLpTest, SingleUsefulRow) {
  const MilpInstance instance = Example1();
  PreprocessConfig config;
  config.max_useful_rows = 1;
  const SeparationContext ctx =
      preprocess(instance, Eigen::VectorXd::Zero(4), {}, config);
  ASSERT_EQ(ctx.useful_rows.size(), 1);
  const int start = ctx.useful_rows[0];
  const LpSolution s = solve_lp(build_lasso_lp(ctx, start).lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  double expected = ctx.slack(start);
  for (size_t t = 0; t < ctx.bad_vars.size(); ++t) {
    expected += ctx.weights[t] *
                std::abs(instance.rows[start].coefficients.coefficient(
                    ctx.bad_vars[t]));
  }
  EXPECT_NEAR(s.objective, expected, 1e-7);
}

TEST(ReweightTest, Examples) {
  const std::vector<double> w = {2.0, 3.0, 0.0};
  const std::vector<double> a = {0.5, 0.0, 7.0};
  const std::vector<double> updated = reweight(w, a, 1e-6);
  EXPECT_NEAR(updated[0], 2.0 / 0.500001, 1e-12);
  EXPECT_NEAR(updated[0], 3.999992, 1e-6);
  EXPECT_EQ(updated[1], 0.0);
  EXPECT_EQ(updated[2], 0.0);
  EXPECT_THROW(reweight(w, a, 0.0), ContractViolation);
}

TEST(BuildReweightedLpTest, SupportOfExample1StaysOptimal) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx = preprocess(instance, Example1TightPoint(), {});
  const LassoLp first = build_lasso_lp(ctx, 0);
  const LpSolution s = solve_lp(first.lp);
  std::vector<int> active;
  for (int col = 0; col < first.num_lambda(); ++col) {
    if (s.primal(col) > 1e-9) active.push_back(first.rows[col]);
  }
  const LassoLp again = build_reweighted_lp(ctx, active, 0, ctx.weights);
  const LpSolution r = solve_lp(again.lp, s.basis);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.0, 1e-7);
}

TEST(BuildReweightedLpTest, ZeroWeightsCostNothing) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx =
      preprocess(instance, Eigen::VectorXd::Zero(4), {});
  const std::vector<double> zero(ctx.bad_vars.size(), 0.0);
  const LassoLp lasso = build_reweighted_lp(ctx, {0, 1, 2}, 2, zero);
  // Without a slack term every lambda >= e_2 is optimal; from the crash
  // basis nothing moves.
  const LpSolution s =
      solve_lp(lasso.lp, abs_value_crash_basis(lasso.lp, lasso.num_lambda()));
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_TRUE(s.warm_started);
  EXPECT_EQ(s.objective, 0.0);
  EXPECT_EQ(LambdaByRow(lasso, s, 3), Eigen::Vector3d(0.0, 0.0, 1.0));
}

TEST(BuildReweightedLpTest, UncoveredColumnCannotBeEliminated) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx =
      preprocess(instance, Eigen::VectorXd::Zero(4), {});
  // Only the starting row is active.
  const std::vector<double> weights(ctx.bad_vars.size(), 2.0);
  const LassoLp lasso = build_reweighted_lp(ctx, {0}, 0, weights);
  const LpSolution s = solve_lp(lasso.lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 2.0 * (1.0 + 2.0 / 3), 1e-9);
  EXPECT_THROW(build_reweighted_lp(ctx, {1}, 0, weights), ContractViolation);
}

TEST(LassoAggregateTest, Example1EliminatesEverythingFromEveryRow) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx =
      preprocess(instance, Eigen::VectorXd::Zero(4), {}, {.mode = RowMode::kUnified});
  for (int start = 0; start < 3; ++start) {
    const std::vector<AggregationResult> aggs = lasso_aggregate(ctx, start);
    ASSERT_EQ(aggs.size(), 1) << "start " << start;
    const AggregationResult& a = aggs[0];
    EXPECT_TRUE(a.residual_bad.empty());
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(3);
    for (const SparseEntry& f : a.factors) lambda(f.index) = f.value;
    ExpectProportionalTo112(lambda);
    // lambda_1 (x1 + x4 <= 4)
    const double scale = lambda(0);
    EXPECT_NEAR(a.coefficients.coefficient(0), scale, 1e-9);
    EXPECT_NEAR(a.coefficients.coefficient(3), scale, 1e-9);
    EXPECT_NEAR(a.rhs, 4.0 * scale, 1e-9);
  }
}

TEST(LassoAggregateTest, NoBadColumnsSingleAggregation) {
  const MilpInstance instance = Example1();
  const SeparationContext ctx = WithoutBadVariables(
      preprocess(instance, Eigen::VectorXd::Zero(4), {}));
  EXPECT_EQ(lasso_aggregate(ctx, 0).size(), 1);
}

// z + x <= 3 with x unbounded above: x can never be removed.
TEST(LassoAggregateTest, UneliminableColumnRunsAllRounds) {
  MilpInstance instance;
  instance.variables = {MakeVariable("z", VarKind::kInteger, 0.0, 5.0),
                        MakeVariable("x", VarKind::kContinuous, 0.0, kInfinity)};
  const std::vector<RawRow> raw = {
      MakeRawRow("r", {{0, 1.0}, {1, 1.0}}, RowSense::kLessEqual, 3.0)};
  instance.rows = normalize_rows(raw);
  // The only row is a variable upper bound, so it needs unified mode.
  const SeparationContext ctx = preprocess(
      instance, Eigen::Vector2d(1.5, 1.0), {}, {.mode = RowMode::kUnified});
  for (int maxaggr : {0, 1, 3, 6}) {
    LassoConfig config;
    config.maxaggr = maxaggr;
    const std::vector<AggregationResult> aggs =
        lasso_aggregate(ctx, 0, config);
    EXPECT_EQ(static_cast<int>(aggs.size()), maxaggr + 1);
    EXPECT_EQ(aggs.back().round, maxaggr);
    EXPECT_EQ(aggs.back().residual_bad, (std::vector<int>{1}));
  }
}

TEST(LassoAggregateTest, RandomWeightsGiveZeroResidualMass) {
  const MilpInstance instance = Example1();
  SeparationContext ctx = preprocess(instance, Example1TightPoint(), {});
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> weight(1e-3, 10.0);
  for (int trial = 0; trial < 25; ++trial) {
    ctx.weights = {weight(rng), weight(rng)};
    const std::vector<AggregationResult> aggs = lasso_aggregate(ctx, trial % 3);
    const auto [alpha, beta] = reconstruct_aggregation(instance, aggs[0].factors);
    const double mass = ctx.weights[0] * std::abs(alpha(ctx.bad_vars[0])) +
                        ctx.weights[1] * std::abs(alpha(ctx.bad_vars[1]));
    EXPECT_LE(mass, 1e-7);
  }
}

TEST(LassoAggregateTest, RandomInstanceInvariants) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    MilpInstance instance;
    const int n = 9;
    for (int j = 0; j < n; ++j) {
      instance.variables.push_back(MakeVariable(
          "v" + std::to_string(j),
          j < 4 ? VarKind::kInteger : VarKind::kContinuous, 0.0,
          j < 4 ? 5.0 : 6.0 + j));
    }
    std::vector<RawRow> raw;
    for (int i = 0; i < 10; ++i) {
      std::vector<SparseEntry> c;
      for (int j = 0; j < n; ++j) {
        if (unit(rng) < 0.35) c.push_back({j, static_cast<double>(coef(rng))});
      }
      raw.push_back(
          MakeRawRow("r" + std::to_string(i), c, RowSense::kLessEqual, 5.0));
    }
    instance.rows = normalize_rows(raw);
    Eigen::VectorXd point(n);
    for (int j = 0; j < n; ++j) point(j) = 3.0 * unit(rng);
    PreprocessConfig pre;
    pre.mode = RowMode::kUnified;
    const SeparationContext ctx = preprocess(instance, point, {}, pre);
    LassoConfig config;
    config.maxaggr = 3;
    for (int start : ctx.useful_rows) {
      const std::vector<AggregationResult> aggs =
          lasso_aggregate(ctx, start, config);
      EXPECT_LE(static_cast<int>(aggs.size()), config.maxaggr + 1);
      for (size_t k = 0; k < aggs.size(); ++k) {
        bool has_start = false;
        for (const SparseEntry& f : aggs[k].factors) {
          EXPECT_GT(f.value, 0.0);
          EXPECT_TRUE(ctx.is_useful(f.index));
          if (f.index == start) {
            has_start = true;
            EXPECT_GE(f.value, 1.0 - 1e-9);
          }
          if (k > 0) {
            const auto& prev = aggs[k - 1].factors;
            EXPECT_TRUE(std::any_of(prev.begin(), prev.end(),
                                    [&](const SparseEntry& p) {
                                      return p.index == f.index;
                                    }))
                << "support grew";
          }
        }
        EXPECT_TRUE(has_start);
      }
      // The first LP is optimal, so it beats e_start and any MW factors.
      const double lasso = lasso_objective(ctx, aggs[0].factors);
      EXPECT_LE(lasso, lasso_objective(ctx, {{start, 1.0}}) + 1e-7);
      PreprocessConfig normal;
      const SeparationContext mw_ctx = preprocess(instance, point, {}, normal);
      if (mw_ctx.is_useful(start)) {
        for (const AggregationResult& mw : mw_aggregate(mw_ctx, start, 6)) {
          EXPECT_LE(lasso, lasso_objective(ctx, mw.factors) + 1e-6);
        }
      }
    }
  }
}

}  // namespace
}  // namespace aggrcut
