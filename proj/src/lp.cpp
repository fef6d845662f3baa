// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "nlbox/lp.hpp"

#include <limits>
#include <vector>

#include "nlbox/errors.hpp"

namespace nlbox::lp {
namespace {

// Tableau with m constraint rows plus a reduced-cost row; the last column is
// the right-hand side. Pivots follow Bland's rule, so the method terminates.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol)
      : m_(A.rows()), n_(A.cols()), tol_(tol), t_(A.rows() + 1, A.cols() + A.rows() + 1) {
    t_.setZero();
    sign_.resize(m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign_[i] * A.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign_[i] * b[i];
      basis_.push_back(n_ + i);
    }
    allowed_.assign(n_ + m_, true);
  }

  Eigen::Index rhs() const { return n_ + m_; }

  // Reduced costs for minimizing cost.x under the current basis.
  void set_cost(const Eigen::VectorXd& cost) {
    cost_ = cost;
    t_.row(m_).setZero();
    t_.row(m_).head(n_ + m_) = cost.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) t_.row(m_) -= cost[basis_[i]] * t_.row(i);
  }

  // Returns false when unbounded.
  bool run(std::size_t& pivots) {
    const std::size_t limit = 50000;
    for (std::size_t it = 0; it < limit; ++it) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n_ + m_; ++j) {
        if (allowed_[j] && t_(m_, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, enter) > tol_) {
          const double ratio = t_(i, rhs()) / t_(i, enter);
          const bool tie = leave >= 0 && ratio <= best + tol_ && basis_[i] < basis_[leave];
          if (leave < 0 || ratio < best - tol_ || tie) {
            best = std::min(best, ratio);
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++pivots;
    }
    throw Error("simplex iteration limit reached");
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i != row && t_(i, col) != 0.0) t_.row(i) -= t_(i, col) * t_.row(row);
    }
    basis_[row] = col;
  }

  // Pivot artificial variables out of the basis where possible; artificials
  // may then never re-enter.
  void drop_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
    for (Eigen::Index j = n_; j < n_ + m_; ++j) allowed_[j] = false;
  }

  double value() const { return -t_(m_, rhs()); }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = t_(i, rhs());
    }
    return x;
  }

  // Phase-one duals: the artificial column of row i has cost 1, so its
  // reduced cost is 1 - y_i.
  Eigen::VectorXd duals() const {
    Eigen::VectorXd y(m_);
    for (Eigen::Index i = 0; i < m_; ++i) y[i] = (cost_[n_ + i] - t_(m_, n_ + i)) * sign_[i];
    return y;
  }

 private:
  Eigen::Index m_, n_;
  double tol_;
  Eigen::MatrixXd t_;
  Eigen::VectorXd cost_;
  std::vector<double> sign_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> allowed_;
};

}  // namespace

Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                double tolerance) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw ArgumentError("inconsistent LP dimensions");
  Result result;
  const Eigen::Index m = A.rows(), n = A.cols();
  Tableau t(A, b, tolerance);
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  t.set_cost(phase1);
  t.run(result.pivots);
  if (t.value() > tolerance * std::max<double>(1.0, b.lpNorm<1>())) {
    result.status = Status::infeasible;
    result.farkas = t.duals();
    return result;
  }
  t.drop_artificials();
  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = -c;
  t.set_cost(phase2);
  if (!t.run(result.pivots)) {
    result.status = Status::unbounded;
    return result;
  }
  result.status = Status::optimal;
  result.x = t.solution();
  result.objective = c.dot(result.x);
  return result;
}

Result feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance) {
  return maximize(A, b, Eigen::VectorXd::Zero(A.cols()), tolerance);
}

FarkasCheck check_farkas(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& y,
                         double tolerance) {
  FarkasCheck check;
  if (y.size() != A.rows()) return check;
  const Eigen::VectorXd ya = A.transpose() * y;
  check.max_ya = ya.size() ? ya.maxCoeff() : 0.0;
  check.yb = y.dot(b);
  check.valid = check.max_ya <= tolerance && check.yb > tolerance;
  return check;
}

}  // namespace nlbox::lp
