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

#ifndef AGGRCUT_INSTANCE_H_
#define AGGRCUT_INSTANCE_H_

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace aggrcut {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Coefficients below this magnitude are treated as structural zeros.
inline constexpr double kZeroTolerance = 1e-9;

class MalformedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VarKind { kContinuous, kInteger };

struct Variable {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;

  bool is_integer() const { return kind == VarKind::kInteger; }
};

struct SparseEntry {
  int index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// A sparse vector stored as entries sorted by ascending index.
class SparseRow {
 public:
  SparseRow() = default;
  // Sorts, merges duplicate indices and drops entries with
  // |value| < kZeroTolerance.
  explicit SparseRow(std::vector<SparseEntry> entries);

  std::span<const SparseEntry> entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  // Returns 0 for indices that are not stored.
  double coefficient(int index) const;

  template <typename Derived>
  double dot(const Eigen::MatrixBase<Derived>& dense) const {
    double sum = 0.0;
    for (const SparseEntry& e : entries_) sum += e.value * dense(e.index);
    return sum;
  }

  // Scatters into a dense vector of the given length.
  Eigen::VectorXd to_dense(int length) const;
  // Gathers the entries whose magnitude exceeds `tolerance`.
  static SparseRow from_dense(const Eigen::VectorXd& dense,
                              double tolerance = 0.0);

  SparseRow negated() const;

  friend bool operator==(const SparseRow&, const SparseRow&) = default;

 private:
  std::vector<SparseEntry> entries_;
};

enum class RowOrigin {
  kOriginalLe,
  kNegatedGe,
  kEqualityHalfPos,
  kEqualityHalfNeg,
  kBoundRow,
};

const char* RowOriginName(RowOrigin origin);

// A constraint in canonical form coefficients * x <= rhs.
struct Row {
  std::string name;
  SparseRow coefficients;
  double rhs = 0.0;
  RowOrigin origin = RowOrigin::kOriginalLe;
};

enum class RowSense { kLessEqual, kGreaterEqual, kEqual, kRanged };

// A constraint as read from a file, before normalization. For kRanged rows
// `lower <= coefficients * x <= rhs`.
struct RawRow {
  std::string name;
  std::vector<SparseEntry> coefficients;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  double lower = -kInfinity;
};

struct MilpInstance {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Row> rows;

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_integer() const;

  // Index lookups; return -1 when the name is unknown.
  int variable_index(const std::string& name) const;
  int row_index(const std::string& name) const;

  // Checks the structural invariants: references in range, unique names,
  // lower <= upper, integral bounds on integer variables. Throws
  // MalformedInstance.
  void validate() const;
};

// Dense point indexed like MilpInstance::variables.
using PointAssignment = Eigen::VectorXd;

// Brings raw rows into <= form. Equalities and ranged rows become two rows.
std::vector<Row> normalize_rows(std::span<const RawRow> raw_rows);

// Rounds integer-variable bounds inwards to integral values.
void normalize_variable_bounds(std::vector<Variable>& variables);

// rhs - coefficients * point.
double row_slack(const Row& row, const PointAssignment& point);

// x_j <= upper + factor * x_{integer_var}, read off a two-nonzero row.
struct ImpliedBound {
  int integer_var;
  double upper;
  double factor;
  int source_row;

  friend bool operator==(const ImpliedBound&, const ImpliedBound&) = default;
};

struct VariableBoundTable {
  // Indexed by variable; only continuous variables have entries.
  std::vector<std::vector<ImpliedBound>> implied;
  std::vector<double> simple_upper;
  std::vector<double> simple_lower;
  // Indexed by row.
  std::vector<bool> is_bound_row;

  friend bool operator==(const VariableBoundTable&,
                         const VariableBoundTable&) = default;
};

// Registers rows of the shape a*x_j + b*z <= c (a > 0, x_j continuous,
// z integer) as implied bounds x_j <= c/a - (b/a) z. All other rows are
// normal constraints.
VariableBoundTable detect_variable_bounds(const MilpInstance& instance);

// Sets origin = kBoundRow on every row flagged in `table`.
void mark_bound_rows(MilpInstance& instance, const VariableBoundTable& table);

}  // namespace aggrcut

#endif  // AGGRCUT_INSTANCE_H_
