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

#include "aggrcut/instance.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace aggrcut {
namespace {

using ::aggrcut::testing::Example1;
using ::aggrcut::testing::MakeRawRow;
using ::aggrcut::testing::MakeVariable;

TEST(NormalizeRowsTest, NegatesGreaterEqual) {
  const std::vector<RawRow> raw = {
      MakeRawRow("c", {{0, 1.0}, {1, 1.0}}, RowSense::kGreaterEqual, 3.0)};
  const std::vector<Row> rows = normalize_rows(raw);
  ASSERT_EQ(rows.size(), 1);
  EXPECT_EQ(rows[0].coefficients, SparseRow({{0, -1.0}, {1, -1.0}}));
  EXPECT_EQ(rows[0].rhs, -3.0);
  EXPECT_EQ(rows[0].origin, RowOrigin::kNegatedGe);
}

TEST(NormalizeRowsTest, SplitsEquality) {
  const std::vector<RawRow> raw = {
      MakeRawRow("e", {{0, 1.0}}, RowSense::kEqual, 2.0)};
  const std::vector<Row> rows = normalize_rows(raw);
  ASSERT_EQ(rows.size(), 2);
  EXPECT_EQ(rows[0].coefficients, SparseRow({{0, 1.0}}));
  EXPECT_EQ(rows[0].rhs, 2.0);
  EXPECT_EQ(rows[0].origin, RowOrigin::kEqualityHalfPos);
  EXPECT_EQ(rows[1].coefficients, SparseRow({{0, -1.0}}));
  EXPECT_EQ(rows[1].rhs, -2.0);
  EXPECT_EQ(rows[1].origin, RowOrigin::kEqualityHalfNeg);
}

TEST(NormalizeRowsTest, LessEqualUnchanged) {
  const std::vector<RawRow> raw = {MakeRawRow(
      "r1", {{0, 1.0 / 3}, {1, 1.0}, {2, -2.0 / 3}}, RowSense::kLessEqual, 1.0)};
  const std::vector<Row> rows = normalize_rows(raw);
  ASSERT_EQ(rows.size(), 1);
  EXPECT_EQ(rows[0].coefficients,
            SparseRow({{0, 1.0 / 3}, {1, 1.0}, {2, -2.0 / 3}}));
  EXPECT_EQ(rows[0].rhs, 1.0);
  EXPECT_EQ(rows[0].origin, RowOrigin::kOriginalLe);
}

TEST(NormalizeRowsTest, DropsTinyCoefficients) {
  const std::vector<RawRow> raw = {
      MakeRawRow("c", {{0, 1e-12}, {1, 2.0}}, RowSense::kLessEqual, 1.0)};
  const std::vector<Row> rows = normalize_rows(raw);
  EXPECT_EQ(rows[0].coefficients, SparseRow({{1, 2.0}}));
}

TEST(NormalizeRowsTest, RejectsNonFinite) {
  const std::vector<RawRow> bad_rhs = {
      MakeRawRow("c", {{0, 1.0}}, RowSense::kLessEqual, kInfinity)};
  EXPECT_THROW(normalize_rows(bad_rhs), MalformedInstance);
  const std::vector<RawRow> bad_coef = {
      MakeRawRow("c", {{0, std::nan("")}}, RowSense::kLessEqual, 1.0)};
  EXPECT_THROW(normalize_rows(bad_coef), MalformedInstance);
}

TEST(NormalizeRowsTest, EqualityHalvesAreNegations) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SparseEntry> coefficients;
    for (int j = 0; j < 5; ++j) coefficients.push_back({j, value(rng)});
    const std::vector<RawRow> raw = {
        MakeRawRow("e", coefficients, RowSense::kEqual, value(rng))};
    const std::vector<Row> rows = normalize_rows(raw);
    ASSERT_EQ(rows.size(), 2);
    EXPECT_EQ(rows[1].coefficients, rows[0].coefficients.negated());
    EXPECT_EQ(rows[1].rhs, -rows[0].rhs);
    Eigen::VectorXd x(5);
    for (int j = 0; j < 5; ++j) x(j) = value(rng);
    EXPECT_NEAR(row_slack(rows[0], x), -row_slack(rows[1], x), 1e-12);
  }
}

TEST(NormalizeVariableBoundsTest, RoundsIntegerBoundsInward) {
  std::vector<Variable> vars = {
      MakeVariable("z", VarKind::kInteger, -0.5, 2.7),
      MakeVariable("x", VarKind::kContinuous, -0.5, 2.7)};
  normalize_variable_bounds(vars);
  EXPECT_EQ(vars[0].lower, 0.0);
  EXPECT_EQ(vars[0].upper, 2.0);
  EXPECT_EQ(vars[1].lower, -0.5);
  EXPECT_EQ(vars[1].upper, 2.7);
}

MilpInstance BoundPatternInstance() {
  MilpInstance instance;
  instance.variables = {
      MakeVariable("x5", VarKind::kContinuous, 0.0, kInfinity),
      MakeVariable("z2", VarKind::kInteger, 0.0, 1.0),
      MakeVariable("x6", VarKind::kContinuous, 0.0, kInfinity),
      MakeVariable("z3", VarKind::kInteger, 0.0, 1.0),
  };
  const std::vector<RawRow> raw = {
      MakeRawRow("vub", {{0, 1.0}, {1, -3.0}}, RowSense::kLessEqual, 0.0),
      MakeRawRow("cc", {{0, 1.0}, {2, -3.0}}, RowSense::kLessEqual, 0.0),
      MakeRawRow("three", {{0, 1.0}, {1, 1.0}, {3, -1.0}},
                 RowSense::kLessEqual, 1.0),
  };
  instance.rows = normalize_rows(raw);
  return instance;
}

TEST(DetectVariableBoundsTest, RegistersImpliedBound) {
  const MilpInstance instance = BoundPatternInstance();
  const VariableBoundTable table = detect_variable_bounds(instance);
  ASSERT_EQ(table.implied[0].size(), 1);
  const ImpliedBound& ib = table.implied[0][0];
  EXPECT_EQ(ib.integer_var, 1);
  EXPECT_EQ(ib.upper, 0.0);
  EXPECT_EQ(ib.factor, 3.0);
  EXPECT_EQ(ib.source_row, 0);
  EXPECT_TRUE(table.is_bound_row[0]);
}

TEST(DetectVariableBoundsTest, ContinuousPartnerIsNotABound) {
  const VariableBoundTable table =
      detect_variable_bounds(BoundPatternInstance());
  EXPECT_FALSE(table.is_bound_row[1]);
  EXPECT_TRUE(table.implied[2].empty());
}

TEST(DetectVariableBoundsTest, ThreeNonzerosIsNotABound) {
  const VariableBoundTable table =
      detect_variable_bounds(BoundPatternInstance());
  EXPECT_FALSE(table.is_bound_row[2]);
}

TEST(DetectVariableBoundsTest, Idempotent) {
  MilpInstance instance = BoundPatternInstance();
  const VariableBoundTable first = detect_variable_bounds(instance);
  mark_bound_rows(instance, first);
  EXPECT_EQ(instance.rows[0].origin, RowOrigin::kBoundRow);
  EXPECT_EQ(detect_variable_bounds(instance), first);
}

TEST(RowSlackTest, Examples) {
  Row tight{"t", SparseRow({{0, 1.0}}), 4.0, RowOrigin::kOriginalLe};
  EXPECT_EQ(row_slack(tight, Eigen::Vector2d(4.0, 0.0)), 0.0);
  Row sum{"s", SparseRow({{0, 1.0}, {1, 1.0}}), 5.0, RowOrigin::kOriginalLe};
  EXPECT_EQ(row_slack(sum, Eigen::Vector2d(1.0, 1.0)), 3.0);
  const MilpInstance instance = Example1();
  EXPECT_EQ(row_slack(instance.rows[0], Eigen::VectorXd::Zero(4)), 1.0);
}

TEST(MilpInstanceTest, ValidateRejectsDuplicateNames) {
  MilpInstance instance;
  instance.variables = {MakeVariable("x", VarKind::kContinuous, 0, 1),
                        MakeVariable("x", VarKind::kContinuous, 0, 1)};
  EXPECT_THROW(instance.validate(), MalformedInstance);
}

TEST(MilpInstanceTest, ValidateRejectsUnknownColumn) {
  MilpInstance instance;
  instance.variables = {MakeVariable("x", VarKind::kContinuous, 0, 1)};
  instance.rows = {Row{"r", SparseRow({{3, 1.0}}), 1.0, RowOrigin::kOriginalLe}};
  EXPECT_THROW(instance.validate(), MalformedInstance);
}

}  // namespace
}  // namespace aggrcut
