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

#include "aggrcut/cmir.h"

#include <algorithm>
#include <map>

namespace aggrcut {

namespace {

constexpr double kFractionalTolerance = 1e-6;
constexpr double kDegenerateF = 1e-9;

struct UpperChoice {
  double value = kInfinity;
  const ImpliedBound* implied = nullptr;
};

UpperChoice TightestUpper(int var, const SeparationContext& ctx) {
  UpperChoice choice;
  choice.value = ctx.bounds.simple_upper[var];
  for (const ImpliedBound& ib : ctx.bounds.implied[var]) {
    const double value = ib.upper + ib.factor * ctx.point(ib.integer_var);
    if (value < choice.value) {
      choice.value = value;
      choice.implied = &ib;
    }
  }
  return choice;
}

}  // namespace

std::optional<MixedKnapsackRow> bound_substitute(
    const AggregationResult& aggregation, const SeparationContext& ctx) {
  const MilpInstance& instance = ctx.model();
  const PointAssignment& x = ctx.point;
  MixedKnapsackRow row;
  double rhs = aggregation.rhs;
  std::map<int, double> integer_coefficients;

  for (const SparseEntry& e : aggregation.coefficients.entries()) {
    if (std::abs(e.value) <= kZeroTolerance) continue;
    const Variable& v = instance.variables[e.index];
    if (v.is_integer()) {
      integer_coefficients[e.index] += e.value;
      continue;
    }
    const UpperChoice upper = TightestUpper(e.index, ctx);
    const bool has_upper = std::isfinite(upper.value);
    const bool has_lower = std::isfinite(v.lower);
    if (!has_upper && !has_lower) return std::nullopt;
    const bool use_lower =
        has_lower && (!has_upper || x(e.index) - v.lower < upper.value - x(e.index));

    SlackTerm slack;
    slack.var = e.index;
    double y_coefficient;
    if (use_lower) {
      slack.kind = SubstitutionKind::kLower;
      slack.bound = v.lower;
      slack.value = x(e.index) - v.lower;
      rhs -= e.value * v.lower;
      y_coefficient = e.value;
    } else if (upper.implied == nullptr) {
      slack.kind = SubstitutionKind::kSimpleUpper;
      slack.bound = upper.value;
      slack.value = upper.value - x(e.index);
      rhs -= e.value * upper.value;
      y_coefficient = -e.value;
    } else {
      const ImpliedBound& ib = *upper.implied;
      slack.kind = SubstitutionKind::kImpliedUpper;
      slack.bound = ib.upper;
      slack.integer_var = ib.integer_var;
      slack.factor = ib.factor;
      slack.value = upper.value - x(e.index);
      rhs -= e.value * ib.upper;
      integer_coefficients[ib.integer_var] += e.value * ib.factor;
      y_coefficient = -e.value;
    }
    // A slack with a positive coefficient on the left can be dropped; only
    // the negative ones form s.
    if (y_coefficient < 0.0) {
      slack.multiplier = -y_coefficient;
      row.slack_value += slack.multiplier * slack.value;
      row.slack.push_back(slack);
    }
  }

  for (const auto& [var, coefficient] : integer_coefficients) {
    if (std::abs(coefficient) <= kZeroTolerance) continue;
    const Variable& v = instance.variables[var];
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      return std::nullopt;
    }
    KnapsackTerm term;
    term.var = var;
    term.coefficient = coefficient;
    term.shift = v.lower;
    term.upper = v.upper - v.lower;
    term.value = x(var) - v.lower;
    rhs -= coefficient * v.lower;
    row.terms.push_back(term);
  }
  row.rhs = rhs;
  return row;
}

CmirCut cmir_inequality(const MixedKnapsackRow& row,
                        const std::vector<bool>& complemented, double delta) {
  if (!(delta > 0.0)) throw ContractViolation("delta must be positive");
  if (complemented.size() != row.terms.size()) {
    throw ContractViolation("partition does not match the knapsack terms");
  }
  const int q = static_cast<int>(row.terms.size());

  double shifted_rhs = row.rhs;
  for (int j = 0; j < q; ++j) {
    if (complemented[j]) {
      shifted_rhs -= row.terms[j].coefficient * row.terms[j].upper;
    }
  }
  CmirCut cut;
  cut.complemented = complemented;
  cut.delta = delta;
  cut.beta = shifted_rhs / delta;
  cut.f = cut.beta - std::floor(cut.beta);
  if (cut.f < kDegenerateF || cut.f > 1.0 - kDegenerateF) {
    throw DegenerateCut("right-hand side is integral after scaling");
  }

  cut.coefficients.resize(q);
  cut.rhs = std::floor(cut.beta);
  for (int j = 0; j < q; ++j) {
    const KnapsackTerm& t = row.terms[j];
    if (complemented[j]) {
      const double g = g_function(-t.coefficient / delta, cut.f);
      cut.coefficients(j) = -g;
      cut.rhs -= g * t.upper;
    } else {
      cut.coefficients(j) = g_function(t.coefficient / delta, cut.f);
    }
  }
  cut.slack_coefficient = 1.0 / (delta * (1.0 - cut.f));

  double activity = -cut.slack_coefficient * row.slack_value;
  for (int j = 0; j < q; ++j) {
    activity += cut.coefficients(j) * row.terms[j].value;
  }
  cut.violation = activity - cut.rhs;
  const double norm = std::sqrt(cut.coefficients.squaredNorm() +
                                cut.slack_coefficient * cut.slack_coefficient);
  cut.efficacy = norm > 0.0 ? cut.violation / norm : 0.0;

  // z_j = x_var - shift; s = sum m_k y_k(x).
  std::vector<SparseEntry> entries;
  double rhs = cut.rhs;
  for (int j = 0; j < q; ++j) {
    const KnapsackTerm& t = row.terms[j];
    entries.push_back({t.var, cut.coefficients(j)});
    rhs += cut.coefficients(j) * t.shift;
  }
  for (const SlackTerm& s : row.slack) {
    const double weight = cut.slack_coefficient * s.multiplier;
    switch (s.kind) {
      case SubstitutionKind::kSimpleUpper:
        entries.push_back({s.var, weight});
        rhs += weight * s.bound;
        break;
      case SubstitutionKind::kImpliedUpper:
        entries.push_back({s.var, weight});
        entries.push_back({s.integer_var, -weight * s.factor});
        rhs += weight * s.bound;
        break;
      case SubstitutionKind::kLower:
        entries.push_back({s.var, -weight});
        rhs -= weight * s.bound;
        break;
    }
  }
  cut.original_coefficients = SparseRow(std::move(entries));
  cut.original_rhs = rhs;
  return cut;
}

std::vector<bool> proximity_partition(const MixedKnapsackRow& row) {
  std::vector<bool> complemented(row.terms.size(), false);
  for (size_t j = 0; j < row.terms.size(); ++j) {
    const KnapsackTerm& t = row.terms[j];
    complemented[j] = t.upper - t.value < t.value;
  }
  return complemented;
}

std::vector<double> delta_candidates(const MixedKnapsackRow& row) {
  std::vector<double> bases = {1.0};
  for (const KnapsackTerm& t : row.terms) {
    const double frac = std::abs(t.value - std::round(t.value));
    if (frac > kFractionalTolerance) bases.push_back(std::abs(t.coefficient));
  }
  std::vector<double> candidates;
  auto add = [&candidates](double delta) {
    const bool seen = std::any_of(
        candidates.begin(), candidates.end(),
        [delta](double c) { return std::abs(c - delta) <= 1e-12 * delta; });
    if (!seen) candidates.push_back(delta);
  };
  for (double base : bases) {
    add(base);
    add(base / 2.0);
    add(base / 4.0);
  }
  return candidates;
}

std::optional<CmirCut> select_partition_and_delta(
    const MixedKnapsackRow& row, double violation_threshold) {
  if (row.terms.empty()) return std::nullopt;
  const std::vector<bool> complemented = proximity_partition(row);
  std::optional<CmirCut> best;
  for (double delta : delta_candidates(row)) {
    CmirCut cut;
    try {
      cut = cmir_inequality(row, complemented, delta);
    } catch (const DegenerateCut&) {
      continue;
    }
    if (!best.has_value() || cut.efficacy > best->efficacy) {
      best = std::move(cut);
    }
  }
  if (!best.has_value() || !(best->violation > violation_threshold)) {
    return std::nullopt;
  }
  return best;
}

std::optional<CutRecord> separate_on_aggregation(
    const AggregationResult& aggregation, const SeparationContext& ctx,
    double violation_threshold) {
  std::optional<MixedKnapsackRow> row = bound_substitute(aggregation, ctx);
  if (!row.has_value()) return std::nullopt;
  std::optional<CmirCut> cut =
      select_partition_and_delta(*row, violation_threshold);
  if (!cut.has_value()) return std::nullopt;

  const MilpInstance& instance = ctx.model();
  CutRecord record;
  for (const SparseEntry& e : cut->original_coefficients.entries()) {
    record.coefficients.emplace_back(instance.variables[e.index].name,
                                     e.value);
  }
  record.rhs = cut->original_rhs;
  record.violation =
      cut->original_coefficients.dot(ctx.point) - cut->original_rhs;
  record.algorithm = aggregation.algorithm;
  record.starting_row = instance.rows[aggregation.starting_row].name;
  for (const SparseEntry& f : aggregation.factors) {
    record.used_rows.emplace_back(instance.rows[f.index].name, f.value);
  }
  for (size_t j = 0; j < row->terms.size(); ++j) {
    const std::string& name = instance.variables[row->terms[j].var].name;
    if (cut->complemented[j]) {
      record.complemented.push_back(name);
    } else {
      record.uncomplemented.push_back(name);
    }
  }
  record.delta = cut->delta;
  return record;
}

bool validate_cut_bruteforce(const CmirCut& cut, const MixedKnapsackRow& row) {
  const int q = static_cast<int>(row.terms.size());
  double box = 1.0;
  for (const KnapsackTerm& t : row.terms) {
    box *= t.upper + 1.0;
    if (box > 1e6) throw OracleRefused("enumeration box exceeds 10^6 points");
  }
  std::vector<int> z(q, 0);
  while (true) {
    double activity = 0.0;
    double lhs = 0.0;
    for (int j = 0; j < q; ++j) {
      activity += row.terms[j].coefficient * z[j];
      lhs += cut.coefficients(j) * z[j];
    }
    const double s = std::max(0.0, activity - row.rhs);
    if (lhs - cut.slack_coefficient * s > cut.rhs + 1e-7) return false;
    int j = 0;
    while (j < q && z[j] >= static_cast<int>(row.terms[j].upper)) {
      z[j] = 0;
      ++j;
    }
    if (j == q) break;
    ++z[j];
  }
  return true;
}

}  // namespace aggrcut
