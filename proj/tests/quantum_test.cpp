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


#include "nlbox/quantum.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "nlbox/errors.hpp"

using namespace nlbox;

namespace {

CMatrix ket(std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return v;
}

double dist(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(DensityMatrix, Validation) {
  CMatrix bad(2, 2);
  bad << 0.5, 0.3, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix{bad}, DomainError);
  CMatrix neg(2, 2);
  neg << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, DomainError);
  EXPECT_THROW(DensityMatrix{CMatrix::Identity(2, 2)}, DomainError);
  EXPECT_THROW(DensityMatrix{CMatrix::Identity(128, 128) / 128.0}, ArgumentError);
  EXPECT_NEAR(states::singlet().purity(), 1.0, 1e-14);
  EXPECT_NEAR(states::maximally_mixed(2).purity(), 0.25, 1e-14);
}

TEST(Tensor, KroneckerLayout) {
  CMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const CMatrix k = tensor(a, b);
  ASSERT_EQ(k.rows(), 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) EXPECT_EQ(k(2 * i + r, 2 * j + s), a(i, j) * b(r, s));
      }
    }
  }
}

TEST(PartialTrace, SingletAndGhzMarginals) {
  const std::array<std::size_t, 2> d2{2, 2};
  const std::array<std::size_t, 1> keep0{0};
  EXPECT_LT(dist(partial_trace(states::singlet(), keep0, d2).matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-14);

  const std::array<std::size_t, 3> d3{2, 2, 2};
  const std::array<std::size_t, 2> keep02{0, 2};
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  EXPECT_LT(dist(partial_trace(states::ghz3(), keep02, d3).matrix(), expected), 1e-14);

  const std::array<std::size_t, 2> bad{0, 0};
  EXPECT_THROW(partial_trace(states::ghz3(), bad, d3), ArgumentError);
}

TEST(PartialTrace, ProductStateFactorsBack) {
  StreamRng rng(7, 0);
  const auto a = states::random_pure(1, rng);
  const auto b = states::random_pure(2, rng);
  const auto ab = tensor(a, b);
  const std::array<std::size_t, 2> dims{2, 4};
  const std::array<std::size_t, 1> k0{0}, k1{1};
  EXPECT_LT(dist(partial_trace(ab, k0, dims).matrix(), a.matrix()), 1e-12);
  EXPECT_LT(dist(partial_trace(ab, k1, dims).matrix(), b.matrix()), 1e-12);
}

TEST(PermuteSubsystems, SwapsFactors) {
  const std::array<int, 2> bits{0, 1};
  const std::array<int, 2> swapped{1, 0};
  const std::array<std::size_t, 2> perm{1, 0};
  const std::array<std::size_t, 2> dims{2, 2};
  EXPECT_LT(dist(permute_subsystems(states::basis(bits), perm, dims).matrix(), states::basis(swapped).matrix()),
            1e-15);
  const std::array<std::size_t, 2> notperm{0, 0};
  EXPECT_THROW(permute_subsystems(states::basis(bits), notperm, dims), ArgumentError);
}

TEST(Born, SingletCorrelatorIsMinusCosine) {
  StreamRng rng(1, 0);
  for (int i = 0; i < 20; ++i) {
    const double ta = rng.angle(), tb = rng.angle();
    const auto ma = planar_measurement(ta), mb = planar_measurement(tb);
    double corr = 0.0;
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        const std::array<CMatrix, 2> eff{ma.effect(x), mb.effect(y)};
        corr += (x == y ? 1.0 : -1.0) * born(states::singlet(), eff);
      }
    }
    EXPECT_NEAR(corr, -std::cos(ta - tb), 1e-12);
  }
}

TEST(Born, SequentialMatchesJoint) {
  // Measuring A then B with Lüders updates reproduces the joint Born rule.
  StreamRng rng(2, 0);
  const std::array<std::size_t, 2> dims{2, 2};
  for (int i = 0; i < 10; ++i) {
    const auto rho = states::random_pure(2, rng);
    const auto ma = planar_measurement(rng.angle()), mb = planar_measurement(rng.angle());
    for (std::size_t x = 0; x < 2; ++x) {
      const std::array<CMatrix, 1> ea{embed(ma.effect(x), 0, dims)};
      const double px = born(rho, ea);
      if (px < 1e-9) continue;
      const auto post = post_measurement(rho, embed(ma.kraus(x), 0, dims));
      for (std::size_t y = 0; y < 2; ++y) {
        const std::array<CMatrix, 1> eb{embed(mb.effect(y), 1, dims)};
        const std::array<CMatrix, 2> joint{ma.effect(x), mb.effect(y)};
        EXPECT_NEAR(px * born(post, eb), born(rho, joint), 1e-12);
      }
    }
  }
}

TEST(PostMeasurement, CollapsesAndRejectsNullOutcome) {
  const std::array<int, 1> zero{0};
  const auto m = planar_measurement(0.0);
  EXPECT_LT(dist(post_measurement(states::basis(zero), m.kraus(0)).matrix(), states::basis(zero).matrix()), 1e-15);
  EXPECT_THROW(post_measurement(states::basis(zero), m.kraus(1)), UpdateError);
  const auto plus = DensityMatrix::from_pure(ket({1.0, 1.0}));
  const auto after = post_measurement(plus, m.kraus(1));
  EXPECT_NEAR(after.matrix()(1, 1).real(), 1.0, 1e-14);
}

TEST(Measurement, LudersKrausAndValidation) {
  CMatrix e0(2, 2);
  e0 << 0.7, 0.0, 0.0, 0.2;
  const auto m = Measurement::luders({e0, CMatrix::Identity(2, 2) - e0});
  EXPECT_LT(dist(m.kraus(0) * m.kraus(0), e0), 1e-14);
  EXPECT_NEAR(m.kraus(0)(0, 0).real(), std::sqrt(0.7), 1e-14);
  EXPECT_THROW(Measurement::luders({e0, e0}), DomainError);
}

TEST(States, GhzAndBasis) {
  const auto g = states::ghz3();
  EXPECT_EQ(g.dim(), 8u);
  EXPECT_NEAR(g.matrix()(0, 7).real(), 0.5, 1e-15);
  const std::array<int, 3> bits{1, 0, 1};
  EXPECT_NEAR(states::basis(bits).matrix()(5, 5).real(), 1.0, 1e-15);
}
