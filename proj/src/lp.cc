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

#include "aggrcut/lp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

namespace aggrcut {

void LpProblem::validate() const {
  const Eigen::Index n = objective.size();
  const Eigen::Index m = rhs.size();
  if (col_lower.size() != n || col_upper.size() != n) {
    throw ContractViolation("LP bound vectors do not match column count");
  }
  if (matrix.rows() != m || matrix.cols() != n) {
    throw ContractViolation("LP matrix dimensions do not match");
  }
  if (static_cast<Eigen::Index>(sense.size()) != m) {
    throw ContractViolation("LP row sense vector does not match row count");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::isnan(col_lower(j)) || std::isnan(col_upper(j)) ||
        col_lower(j) > col_upper(j) || col_lower(j) == kInfinity ||
        col_upper(j) == -kInfinity) {
      throw ContractViolation("LP column " + std::to_string(j) +
                              " has inconsistent bounds");
    }
  }
  if (!rhs.allFinite() || !objective.allFinite()) {
    throw ContractViolation("LP data must be finite");
  }
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTolerance = 1e-9;

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

// Column layout: [structural 0..n) [logical n..n+m) [artificial n+m..n+2m).
class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& problem, const LpOptions& options)
      : problem_(problem),
        options_(options),
        n_(problem.num_cols()),
        m_(problem.num_rows()),
        total_(n_ + 2 * m_),
        lower_(total_),
        upper_(total_),
        x_(Eigen::VectorXd::Zero(total_)),
        cost_(Eigen::VectorXd::Zero(total_)),
        artificial_sign_(Eigen::VectorXd::Ones(m_)),
        status_(total_, BasisStatus::kAtLower) {
    lower_.head(n_) = problem.col_lower;
    upper_.head(n_) = problem.col_upper;
    for (int i = 0; i < m_; ++i) {
      lower_(n_ + i) = 0.0;
      upper_(n_ + i) =
          problem.sense[i] == LpRowSense::kEqual ? 0.0 : kInfinity;
      lower_(n_ + m_ + i) = 0.0;
      upper_(n_ + m_ + i) = 0.0;
    }
    iteration_limit_ = options.iteration_limit > 0
                           ? options.iteration_limit
                           : 50 * std::max(1, m_ + n_);
  }

  LpSolution Solve(const std::optional<WarmStart>& warm) {
    LpSolution solution;
    bool feasible_start = false;
    if (warm.has_value() && TryWarmStart(*warm)) {
      feasible_start = true;
      solution.warm_started = true;
    }
    if (!feasible_start) {
      ColdStart();
      cost_.setZero();
      for (int i = 0; i < m_; ++i) {
        if (upper_(n_ + m_ + i) > 0.0) cost_(n_ + m_ + i) = 1.0;
      }
      const PhaseResult phase1 = RunPhase();
      if (phase1 == PhaseResult::kIterationLimit) {
        return Finish(LpStatus::kIterationLimit);
      }
      double infeasibility = x_.tail(m_).sum();
      const double scale = 1.0 + problem_.rhs.lpNorm<Eigen::Infinity>();
      if (infeasibility > options_.primal_tolerance * scale) {
        return Finish(LpStatus::kInfeasible);
      }
      RetireArtificials();
    }
    cost_.setZero();
    cost_.head(n_) = problem_.objective;
    const PhaseResult phase2 = RunPhase();
    if (phase2 == PhaseResult::kIterationLimit) {
      return Finish(LpStatus::kIterationLimit);
    }
    if (phase2 == PhaseResult::kUnbounded) {
      return Finish(LpStatus::kUnbounded);
    }
    CertifyFeasible();
    solution = Finish(LpStatus::kOptimal);
    solution.warm_started = feasible_start;
    return solution;
  }

 private:
  void AddColumnTo(int j, double scale, Eigen::VectorXd& dense) const {
    if (j < n_) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(problem_.matrix, j);
           it; ++it) {
        dense(it.row()) += scale * it.value();
      }
    } else if (j < n_ + m_) {
      dense(j - n_) += scale;
    } else {
      dense(j - n_ - m_) += scale * artificial_sign_(j - n_ - m_);
    }
  }

  double ColumnDot(int j, const Eigen::VectorXd& y) const {
    if (j < n_) return problem_.matrix.col(j).dot(y);
    if (j < n_ + m_) return y(j - n_);
    return artificial_sign_(j - n_ - m_) * y(j - n_ - m_);
  }

  void PlaceNonbasic(int j) {
    if (std::isfinite(lower_(j))) {
      status_[j] = BasisStatus::kAtLower;
      x_(j) = lower_(j);
    } else if (std::isfinite(upper_(j))) {
      status_[j] = BasisStatus::kAtUpper;
      x_(j) = upper_(j);
    } else {
      status_[j] = BasisStatus::kFree;
      x_(j) = 0.0;
    }
  }

  void ColdStart() {
    basis_.clear();
    for (int j = 0; j < total_; ++j) PlaceNonbasic(j);
    Eigen::VectorXd residual = problem_.rhs;
    for (int j = 0; j < n_; ++j) {
      if (x_(j) != 0.0) AddColumnTo(j, -x_(j), residual);
    }
    const double tol = options_.primal_tolerance;
    for (int i = 0; i < m_; ++i) {
      const int logical = n_ + i;
      const int artificial = n_ + m_ + i;
      const bool fits = residual(i) >= -tol &&
                        (problem_.sense[i] == LpRowSense::kLessEqual ||
                         residual(i) <= tol);
      if (fits) {
        status_[logical] = BasisStatus::kBasic;
        basis_.push_back(logical);
      } else {
        artificial_sign_(i) = residual(i) >= 0.0 ? 1.0 : -1.0;
        upper_(artificial) = kInfinity;
        status_[artificial] = BasisStatus::kBasic;
        basis_.push_back(artificial);
      }
    }
  }

  bool TryWarmStart(const WarmStart& warm) {
    if (static_cast<int>(warm.status.size()) != n_ + m_) return false;
    basis_.clear();
    for (int j = 0; j < n_ + m_; ++j) {
      const BasisStatus s = warm.status[j];
      if (s == BasisStatus::kBasic) {
        status_[j] = s;
        basis_.push_back(j);
        continue;
      }
      if (s == BasisStatus::kAtUpper && std::isfinite(upper_(j))) {
        status_[j] = s;
        x_(j) = upper_(j);
      } else if (s == BasisStatus::kAtLower && std::isfinite(lower_(j))) {
        status_[j] = s;
        x_(j) = lower_(j);
      } else {
        PlaceNonbasic(j);
      }
    }
    for (int i = 0; i < m_; ++i) PlaceNonbasic(n_ + m_ + i);
    if (static_cast<int>(basis_.size()) != m_) return false;
    if (!Factorize()) return false;
    ComputeBasicValues();
    for (int b : basis_) {
      const double tol = options_.primal_tolerance;
      if (x_(b) < lower_(b) - tol || x_(b) > upper_(b) + tol) return false;
    }
    return true;
  }

  bool Factorize() {
    if (m_ == 0) return true;
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      Eigen::VectorXd col = Eigen::VectorXd::Zero(m_);
      AddColumnTo(basis_[r], 1.0, col);
      basis_matrix.col(r) = col;
    }
    lu_.compute(basis_matrix);
    return lu_.rcond() > 1e-13;
  }

  void ComputeBasicValues() {
    if (m_ == 0) return;
    Eigen::VectorXd residual = problem_.rhs;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] != BasisStatus::kBasic && x_(j) != 0.0) {
        AddColumnTo(j, -x_(j), residual);
      }
    }
    const Eigen::VectorXd xb = lu_.solve(residual);
    for (int r = 0; r < m_; ++r) x_(basis_[r]) = xb(r);
  }

  Eigen::VectorXd Duals() const {
    if (m_ == 0) return Eigen::VectorXd();
    Eigen::VectorXd cb(m_);
    for (int r = 0; r < m_; ++r) cb(r) = cost_(basis_[r]);
    return lu_.transpose().solve(cb);
  }

  bool Eligible(int j, double d) const {
    if (status_[j] == BasisStatus::kBasic || lower_(j) == upper_(j)) {
      return false;
    }
    const double tol = options_.dual_tolerance;
    switch (status_[j]) {
      case BasisStatus::kAtLower:
        return d < -tol;
      case BasisStatus::kAtUpper:
        return d > tol;
      case BasisStatus::kFree:
        return std::abs(d) > tol;
      case BasisStatus::kBasic:
        break;
    }
    return false;
  }

  PhaseResult RunPhase() {
    int degenerate_run = 0;
    while (true) {
      if (iterations_ >= iteration_limit_) return PhaseResult::kIterationLimit;
      if (!Factorize()) {
        throw LpNumericalFailure("singular basis encountered");
      }
      ComputeBasicValues();
      const Eigen::VectorXd y = Duals();
      const bool bland = degenerate_run >= options_.bland_after_degenerate;

      int entering = -1;
      double entering_d = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == BasisStatus::kBasic) continue;
        const double d = cost_(j) - (m_ > 0 ? ColumnDot(j, y) : 0.0);
        if (!Eligible(j, d)) continue;
        if (bland) {
          entering = j;
          entering_d = d;
          break;
        }
        if (entering < 0 || std::abs(d) > std::abs(entering_d)) {
          entering = j;
          entering_d = d;
        }
      }
      if (entering < 0) return PhaseResult::kOptimal;
      ++iterations_;

      const double dir = entering_d < 0.0 ? 1.0 : -1.0;
      Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
      if (m_ > 0) {
        Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
        AddColumnTo(entering, 1.0, a);
        w = lu_.solve(a);
      }

      // Harris two-pass ratio test.
      const double tol = options_.primal_tolerance;
      double relaxed = upper_(entering) - lower_(entering);
      for (int r = 0; r < m_; ++r) {
        const double alpha = dir * w(r);
        const int b = basis_[r];
        if (alpha > kPivotTolerance && std::isfinite(lower_(b))) {
          relaxed = std::min(relaxed, (x_(b) - lower_(b) + tol) / alpha);
        } else if (alpha < -kPivotTolerance && std::isfinite(upper_(b))) {
          relaxed = std::min(relaxed, (upper_(b) - x_(b) + tol) / -alpha);
        }
      }
      if (!std::isfinite(relaxed)) return PhaseResult::kUnbounded;

      int leave_row = -1;
      double best_alpha = 0.0;
      double theta = upper_(entering) - lower_(entering);
      for (int r = 0; r < m_; ++r) {
        const double alpha = dir * w(r);
        const int b = basis_[r];
        double t;
        if (alpha > kPivotTolerance && std::isfinite(lower_(b))) {
          t = (x_(b) - lower_(b)) / alpha;
        } else if (alpha < -kPivotTolerance && std::isfinite(upper_(b))) {
          t = (upper_(b) - x_(b)) / -alpha;
        } else {
          continue;
        }
        if (t > relaxed) continue;
        t = std::max(t, 0.0);
        bool take;
        if (leave_row < 0) {
          take = true;
        } else if (bland) {
          take = t < theta - 1e-12 ||
                 (t <= theta + 1e-12 && b < basis_[leave_row]);
        } else {
          take = std::abs(alpha) > best_alpha;
        }
        if (take) {
          leave_row = r;
          best_alpha = std::abs(alpha);
          theta = t;
        }
      }

      const bool bound_flip =
          leave_row < 0 ||
          (std::isfinite(upper_(entering) - lower_(entering)) &&
           upper_(entering) - lower_(entering) <= theta);
      if (bound_flip) {
        theta = upper_(entering) - lower_(entering);
        if (!std::isfinite(theta)) return PhaseResult::kUnbounded;
        if (status_[entering] == BasisStatus::kAtLower) {
          status_[entering] = BasisStatus::kAtUpper;
          x_(entering) = upper_(entering);
        } else {
          status_[entering] = BasisStatus::kAtLower;
          x_(entering) = lower_(entering);
        }
      } else {
        const int leaving = basis_[leave_row];
        const double alpha = dir * w(leave_row);
        if (alpha > 0.0) {
          status_[leaving] = BasisStatus::kAtLower;
          x_(leaving) = lower_(leaving);
        } else {
          status_[leaving] = BasisStatus::kAtUpper;
          x_(leaving) = upper_(leaving);
        }
        status_[entering] = BasisStatus::kBasic;
        basis_[leave_row] = entering;
      }
      degenerate_run = theta < 1e-12 ? degenerate_run + 1 : 0;
    }
  }

  // A basic artificial shares its column (up to sign) with the logical of
  // the same row, so exchanging them keeps the basis nonsingular.
  void RetireArtificials() {
    for (int r = 0; r < m_; ++r) {
      const int b = basis_[r];
      if (b < n_ + m_) continue;
      const int row = b - n_ - m_;
      const int logical = n_ + row;
      status_[b] = BasisStatus::kAtLower;
      x_(b) = 0.0;
      status_[logical] = BasisStatus::kBasic;
      basis_[r] = logical;
    }
    for (int i = 0; i < m_; ++i) {
      upper_(n_ + m_ + i) = 0.0;
      x_(n_ + m_ + i) = 0.0;
    }
  }

  void CertifyFeasible() {
    if (!Factorize()) throw LpNumericalFailure("singular final basis");
    ComputeBasicValues();
    const double tol = options_.primal_tolerance;
    for (int j = 0; j < n_ + m_; ++j) {
      const double slack_tol = tol * (1.0 + std::abs(x_(j)));
      if (x_(j) < lower_(j) - slack_tol || x_(j) > upper_(j) + slack_tol) {
        throw LpNumericalFailure("final point violates a bound on column " +
                                 std::to_string(j));
      }
    }
    Eigen::VectorXd residual = problem_.matrix * x_.head(n_) +
                               x_.segment(n_, m_) - problem_.rhs;
    for (int i = 0; i < m_; ++i) {
      if (std::abs(residual(i)) > tol * (1.0 + std::abs(problem_.rhs(i)))) {
        throw LpNumericalFailure("final point violates row " +
                                 std::to_string(i));
      }
    }
  }

  LpSolution Finish(LpStatus status) {
    LpSolution solution;
    solution.status = status;
    solution.iterations = iterations_;
    // Clamp tiny bound excursions of basic variables from rounding.
    Eigen::VectorXd primal = x_.head(n_);
    for (int j = 0; j < n_; ++j) {
      primal(j) = std::clamp(primal(j), lower_(j), upper_(j));
    }
    solution.primal = primal;
    solution.objective = problem_.objective.dot(primal);
    solution.duals = m_ > 0 ? Duals() : Eigen::VectorXd();
    solution.basis.status.assign(status_.begin(), status_.begin() + n_ + m_);
    return solution;
  }

  const LpProblem& problem_;
  const LpOptions& options_;
  const int n_;
  const int m_;
  const int total_;
  Eigen::VectorXd lower_;
  Eigen::VectorXd upper_;
  Eigen::VectorXd x_;
  Eigen::VectorXd cost_;
  Eigen::VectorXd artificial_sign_;
  std::vector<BasisStatus> status_;
  std::vector<int> basis_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  int iterations_ = 0;
  int iteration_limit_ = 0;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem,
                    const std::optional<WarmStart>& warm,
                    const LpOptions& options) {
  problem.validate();
  BoundedSimplex simplex(problem, options);
  return simplex.Solve(warm);
}

LpProblem build_abs_value_lp(const std::vector<AbsTerm>& terms,
                             const Eigen::VectorXd& linear_cost,
                             const Eigen::VectorXd& lambda_lower,
                             const Eigen::VectorXd& lambda_upper) {
  const int k = static_cast<int>(linear_cost.size());
  if (lambda_lower.size() != k || lambda_upper.size() != k) {
    throw ContractViolation("lambda bound vectors do not match cost length");
  }
  const int num_terms = static_cast<int>(terms.size());
  const int n = k + 2 * num_terms;

  LpProblem lp;
  lp.objective = Eigen::VectorXd::Zero(n);
  lp.objective.head(k) = linear_cost;
  lp.col_lower = Eigen::VectorXd::Zero(n);
  lp.col_upper = Eigen::VectorXd::Constant(n, kInfinity);
  lp.col_lower.head(k) = lambda_lower;
  lp.col_upper.head(k) = lambda_upper;
  lp.rhs = Eigen::VectorXd::Zero(num_terms);
  lp.sense.assign(num_terms, LpRowSense::kEqual);

  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < num_terms; ++t) {
    const AbsTerm& term = terms[t];
    if (!(term.weight >= 0.0)) {
      throw ContractViolation("absolute-value term weights must be >= 0");
    }
    for (const SparseEntry& e : term.linear.entries()) {
      if (e.index < 0 || e.index >= k) {
        throw ContractViolation("term references an unknown lambda column");
      }
      triplets.emplace_back(t, e.index, e.value);
    }
    triplets.emplace_back(t, mu_plus_column(k, t), -1.0);
    triplets.emplace_back(t, mu_minus_column(k, t), 1.0);
    lp.rhs(t) = -term.constant;
    lp.objective(mu_plus_column(k, t)) = term.weight;
    lp.objective(mu_minus_column(k, t)) = term.weight;
  }
  lp.matrix.resize(num_terms, n);
  lp.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return lp;
}

WarmStart abs_value_crash_basis(const LpProblem& problem, int num_lambda) {
  const int n = problem.num_cols();
  const int m = problem.num_rows();
  if (n != num_lambda + 2 * m) {
    throw ContractViolation("problem is not an absolute-value LP");
  }
  WarmStart warm;
  warm.status.assign(n + m, BasisStatus::kAtLower);
  Eigen::VectorXd residual = problem.rhs;
  for (int j = 0; j < num_lambda; ++j) {
    double value = problem.col_lower(j);
    if (!std::isfinite(value)) {
      value = std::isfinite(problem.col_upper(j)) ? problem.col_upper(j) : 0.0;
      warm.status[j] = std::isfinite(problem.col_upper(j))
                           ? BasisStatus::kAtUpper
                           : BasisStatus::kFree;
    }
    if (value == 0.0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(problem.matrix, j); it;
         ++it) {
      residual(it.row()) -= value * it.value();
    }
  }
  // Row t reads expr - mu+ + mu- = -constant, so mu+ takes a negative
  // residual and mu- a nonnegative one.
  for (int t = 0; t < m; ++t) {
    const int basic = residual(t) < 0.0 ? mu_plus_column(num_lambda, t)
                                        : mu_minus_column(num_lambda, t);
    warm.status[basic] = BasisStatus::kBasic;
  }
  return warm;
}

}  // namespace aggrcut
