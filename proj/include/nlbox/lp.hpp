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


#pragma once

// Dense two-phase simplex for the small linear programs that appear here:
// feasibility of ensemble weights and optimization over no-signalling tables.
// Problems are posed in standard form: maximize c.x subject to A x = b, x >= 0.

#include <Eigen/Dense>

#include <cstddef>

namespace nlbox::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  /// Set when infeasible: y with y.A <= 0 componentwise and y.b > 0.
  Eigen::VectorXd farkas;
  std::size_t pivots = 0;
};

Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                double tolerance = 1e-9);

/// Feasibility only (zero objective).
Result feasible(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tolerance = 1e-9);

struct FarkasCheck {
  double max_ya = 0.0;  ///< largest entry of y.A (must be <= tolerance)
  double yb = 0.0;      ///< must be > tolerance
  bool valid = false;
};

/// Independent verification of an infeasibility certificate.
FarkasCheck check_farkas(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& y,
                         double tolerance = 1e-9);

}  // namespace nlbox::lp
