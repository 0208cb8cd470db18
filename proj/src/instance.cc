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

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace aggrcut {

SparseRow::SparseRow(std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) {
              return a.index < b.index;
            });
  entries_.reserve(entries.size());
  for (const SparseEntry& e : entries) {
    if (!entries_.empty() && entries_.back().index == e.index) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  std::erase_if(entries_, [](const SparseEntry& e) {
    return std::abs(e.value) < kZeroTolerance;
  });
}

double SparseRow::coefficient(int index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, int i) { return e.index < i; });
  if (it == entries_.end() || it->index != index) return 0.0;
  return it->value;
}

Eigen::VectorXd SparseRow::to_dense(int length) const {
  Eigen::VectorXd dense = Eigen::VectorXd::Zero(length);
  for (const SparseEntry& e : entries_) dense(e.index) = e.value;
  return dense;
}

SparseRow SparseRow::from_dense(const Eigen::VectorXd& dense,
                                double tolerance) {
  SparseRow row;
  for (Eigen::Index i = 0; i < dense.size(); ++i) {
    if (dense(i) != 0.0 && std::abs(dense(i)) > tolerance) {
      row.entries_.push_back({static_cast<int>(i), dense(i)});
    }
  }
  return row;
}

SparseRow SparseRow::negated() const {
  SparseRow row = *this;
  for (SparseEntry& e : row.entries_) e.value = -e.value;
  return row;
}

const char* RowOriginName(RowOrigin origin) {
  switch (origin) {
    case RowOrigin::kOriginalLe:
      return "original-le";
    case RowOrigin::kNegatedGe:
      return "negated-ge";
    case RowOrigin::kEqualityHalfPos:
      return "equality-half-pos";
    case RowOrigin::kEqualityHalfNeg:
      return "equality-half-neg";
    case RowOrigin::kBoundRow:
      return "bound-row";
  }
  return "unknown";
}

int MilpInstance::num_integer() const {
  return static_cast<int>(std::count_if(
      variables.begin(), variables.end(),
      [](const Variable& v) { return v.is_integer(); }));
}

int MilpInstance::variable_index(const std::string& name) const {
  for (int j = 0; j < num_variables(); ++j) {
    if (variables[j].name == name) return j;
  }
  return -1;
}

int MilpInstance::row_index(const std::string& name) const {
  for (int i = 0; i < num_rows(); ++i) {
    if (rows[i].name == name) return i;
  }
  return -1;
}

void MilpInstance::validate() const {
  std::unordered_set<std::string> names;
  for (const Variable& v : variables) {
    if (!names.insert(v.name).second) {
      throw MalformedInstance("duplicate variable name '" + v.name + "'");
    }
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw MalformedInstance("inconsistent bounds on variable '" + v.name +
                              "'");
    }
    if (v.is_integer() && ((std::isfinite(v.lower) &&
                            v.lower != std::floor(v.lower)) ||
                           (std::isfinite(v.upper) &&
                            v.upper != std::floor(v.upper)))) {
      throw MalformedInstance("non-integral bound on integer variable '" +
                              v.name + "'");
    }
  }
  names.clear();
  for (const Row& r : rows) {
    if (!names.insert(r.name).second) {
      throw MalformedInstance("duplicate row name '" + r.name + "'");
    }
    if (!std::isfinite(r.rhs)) {
      throw MalformedInstance("non-finite rhs in row '" + r.name + "'");
    }
    for (const SparseEntry& e : r.coefficients.entries()) {
      if (e.index < 0 || e.index >= num_variables()) {
        throw MalformedInstance("row '" + r.name +
                                "' references an unknown variable");
      }
      if (!std::isfinite(e.value)) {
        throw MalformedInstance("non-finite coefficient in row '" + r.name +
                                "'");
      }
    }
  }
}

namespace {

SparseRow CheckedRow(const RawRow& raw) {
  for (const SparseEntry& e : raw.coefficients) {
    if (!std::isfinite(e.value)) {
      throw MalformedInstance("non-finite coefficient in row '" + raw.name +
                              "'");
    }
  }
  return SparseRow(raw.coefficients);
}

}  // namespace

std::vector<Row> normalize_rows(std::span<const RawRow> raw_rows) {
  std::vector<Row> rows;
  rows.reserve(raw_rows.size());
  for (const RawRow& raw : raw_rows) {
    SparseRow coefficients = CheckedRow(raw);
    const bool ranged = raw.sense == RowSense::kRanged;
    if (!std::isfinite(raw.rhs) || (ranged && !std::isfinite(raw.lower))) {
      throw MalformedInstance("non-finite rhs in row '" + raw.name + "'");
    }
    switch (raw.sense) {
      case RowSense::kLessEqual:
        rows.push_back({raw.name, std::move(coefficients), raw.rhs,
                        RowOrigin::kOriginalLe});
        break;
      case RowSense::kGreaterEqual:
        rows.push_back({raw.name, coefficients.negated(), -raw.rhs,
                        RowOrigin::kNegatedGe});
        break;
      case RowSense::kEqual:
        rows.push_back({raw.name + ":+", coefficients, raw.rhs,
                        RowOrigin::kEqualityHalfPos});
        rows.push_back({raw.name + ":-", coefficients.negated(), -raw.rhs,
                        RowOrigin::kEqualityHalfNeg});
        break;
      case RowSense::kRanged:
        if (raw.lower == raw.rhs) {
          rows.push_back({raw.name + ":+", coefficients, raw.rhs,
                          RowOrigin::kEqualityHalfPos});
          rows.push_back({raw.name + ":-", coefficients.negated(), -raw.rhs,
                          RowOrigin::kEqualityHalfNeg});
        } else {
          rows.push_back({raw.name + ":ub", coefficients, raw.rhs,
                          RowOrigin::kOriginalLe});
          rows.push_back({raw.name + ":lb", coefficients.negated(),
                          -raw.lower, RowOrigin::kNegatedGe});
        }
        break;
    }
  }
  return rows;
}

void normalize_variable_bounds(std::vector<Variable>& variables) {
  for (Variable& v : variables) {
    if (!v.is_integer()) continue;
    if (std::isfinite(v.lower)) v.lower = std::ceil(v.lower - kZeroTolerance);
    if (std::isfinite(v.upper)) v.upper = std::floor(v.upper + kZeroTolerance);
  }
}

double row_slack(const Row& row, const PointAssignment& point) {
  return row.rhs - row.coefficients.dot(point);
}

VariableBoundTable detect_variable_bounds(const MilpInstance& instance) {
  const int n = instance.num_variables();
  VariableBoundTable table;
  table.implied.resize(n);
  table.simple_upper.resize(n);
  table.simple_lower.resize(n);
  table.is_bound_row.assign(instance.num_rows(), false);
  for (int j = 0; j < n; ++j) {
    table.simple_upper[j] = instance.variables[j].upper;
    table.simple_lower[j] = instance.variables[j].lower;
  }
  for (int i = 0; i < instance.num_rows(); ++i) {
    const Row& row = instance.rows[i];
    if (row.coefficients.size() != 2) continue;
    const SparseEntry first = row.coefficients.entries()[0];
    const SparseEntry second = row.coefficients.entries()[1];
    for (const auto& [cont, other] : {std::pair{first, second},
                                      std::pair{second, first}}) {
      const Variable& cv = instance.variables[cont.index];
      const Variable& iv = instance.variables[other.index];
      if (cv.is_integer() || !iv.is_integer() || cont.value <= 0.0) continue;
      table.implied[cont.index].push_back(
          {other.index, row.rhs / cont.value, -other.value / cont.value, i});
      table.is_bound_row[i] = true;
      break;
    }
  }
  return table;
}

void mark_bound_rows(MilpInstance& instance, const VariableBoundTable& table) {
  for (int i = 0; i < instance.num_rows(); ++i) {
    if (table.is_bound_row[i]) instance.rows[i].origin = RowOrigin::kBoundRow;
  }
}

}  // namespace aggrcut
