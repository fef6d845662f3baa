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

#include <gtest/gtest.h>

#include <vector>

using namespace nlbox;

TEST(Simplex, SmallMaximization) {
  // max x + y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6.  Optimum at (8/5, 6/5).
  Eigen::MatrixXd A(2, 4);
  A << 1, 2, 1, 0, 3, 1, 0, 1;
  Eigen::VectorXd b(2), c(4);
  b << 4, 6;
  c << 1, 1, 0, 0;
  const auto r = lp::maximize(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  EXPECT_NEAR(r.objective, 2.8, 1e-12);
  EXPECT_NEAR(r.x(0), 1.6, 1e-12);
  EXPECT_NEAR(r.x(1), 1.2, 1e-12);
  EXPECT_LT((A * r.x - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Simplex, Unbounded) {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1), c(2);
  b << 1;
  c << 1, 0;
  EXPECT_EQ(lp::maximize(A, b, c).status, lp::Status::unbounded);
}

TEST(Simplex, InfeasibleWithVerifiedCertificate) {
  // x + y = 1 and x + y = 2 with x, y >= 0.
  Eigen::MatrixXd A(2, 2);
  A << 1, 1, 1, 1;
  Eigen::VectorXd b(2);
  b << 1, 2;
  const auto r = lp::feasible(A, b);
  ASSERT_EQ(r.status, lp::Status::infeasible);
  const auto chk = lp::check_farkas(A, b, r.farkas);
  EXPECT_TRUE(chk.valid);
  EXPECT_LE(chk.max_ya, 1e-9);
  EXPECT_GT(chk.yb, 1e-9);

  // Sign constraints alone: x - y = -1 forces y >= 1, then y = 0 contradicts.
  Eigen::MatrixXd B(2, 2);
  B << 1, -1, 0, 1;
  Eigen::VectorXd d(2);
  d << -1, -0.5;
  const auto s = lp::feasible(B, d);
  ASSERT_EQ(s.status, lp::Status::infeasible);
  EXPECT_TRUE(lp::check_farkas(B, d, s.farkas).valid);
}

TEST(Simplex, RedundantRowsAndNegativeRightHandSide) {
  Eigen::MatrixXd A(3, 3);
  A << 1, 1, 1, 2, 2, 2, -1, 0, 0;
  Eigen::VectorXd b(3), c(3);
  b << 1, 2, -0.25;
  c << 0, 1, 0;
  const auto r = lp::maximize(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  EXPECT_NEAR(r.objective, 0.75, 1e-12);
}

TEST(Farkas, RejectsBogusCertificates) {
  Eigen::MatrixXd A(1, 1);
  A << 1;
  Eigen::VectorXd b(1), y(1);
  b << 1;
  y << 1;
  EXPECT_FALSE(lp::check_farkas(A, b, y).valid);
  y << -1;
  EXPECT_FALSE(lp::check_farkas(A, b, y).valid);
}

TEST(Simplex, NoSignallingTripartiteChshSumIsFour) {
  // Variables p(o0 o1 o2 | x0 x1 x2), 64 of them. Equalities: normalization
  // per input row and no-signalling for each party.
  auto var = [](std::size_t x, std::size_t o) { return x * 8 + o; };
  auto bit = [](std::size_t v, int k) { return (v >> (2 - k)) & 1; };
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t x = 0; x < 8; ++x) {
    std::vector<double> r(64, 0.0);
    for (std::size_t o = 0; o < 8; ++o) r[var(x, o)] = 1.0;
    rows.push_back(r);
    rhs.push_back(1.0);
  }
  for (int k = 0; k < 3; ++k) {
    for (std::size_t x = 0; x < 8; ++x) {
      if (bit(x, k)) continue;
      const std::size_t x1 = x | (std::size_t{1} << (2 - k));
      for (std::size_t o = 0; o < 8; ++o) {
        if (bit(o, k)) continue;
        std::vector<double> r(64, 0.0);
        for (std::size_t ok = 0; ok < 2; ++ok) {
          const std::size_t oo = o | (ok << (2 - k));
          r[var(x, oo)] += 1.0;
          r[var(x1, oo)] -= 1.0;
        }
        rows.push_back(r);
        rhs.push_back(0.0);
      }
    }
  }
  Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), 64);
  Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < 64; ++j) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  // CHSH between parties (0, 2) and (1, 2) with the spectator at input 0.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(64);
  for (int pair = 0; pair < 2; ++pair) {
    const int p = pair == 0 ? 0 : 1;
    for (std::size_t xp = 0; xp < 2; ++xp) {
      for (std::size_t x2 = 0; x2 < 2; ++x2) {
        const double sign = (xp & x2) ? -1.0 : 1.0;
        const std::size_t x = (xp << (2 - p)) | x2;
        for (std::size_t o = 0; o < 8; ++o) {
          const double parity = (bit(o, p) ^ bit(o, 2)) ? -1.0 : 1.0;
          c(static_cast<Eigen::Index>(var(x, o))) += sign * parity;
        }
      }
    }
  }
  const auto r = lp::maximize(A, b, c);
  ASSERT_EQ(r.status, lp::Status::optimal);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
}
