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


#include "nlbox/boxes.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "nlbox/errors.hpp"

using namespace nlbox;

TEST(Behavior, RejectsBadRows) {
  EXPECT_THROW(Behavior({{2, 2}}, {0.5, 0.5, 0.4, 0.4}), DomainError);
  EXPECT_THROW(Behavior({{2, 2}}, {1.5, -0.5, 0.5, 0.5}), DomainError);
  EXPECT_THROW(Behavior({{2, 2}}, {1.0, 0.0}), ArgumentError);
}

TEST(Behavior, PrBoxTable) {
  const auto pr = pr_box();
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t g = 0; g < 2; ++g) {
        for (std::size_t c = 0; c < 2; ++c) {
          const std::array<std::size_t, 2> in{m, a}, out{g, c};
          EXPECT_DOUBLE_EQ(pr.prob(out, in), ((g ^ c) == (m & a)) ? 0.5 : 0.0);
        }
      }
    }
  }
  EXPECT_TRUE(no_signalling_check(pr).pass);
}

TEST(Behavior, IsotropicInterpolatesPrAndUniform) {
  EXPECT_LT(max_row_distance(isotropic_box(1.0), pr_box()), 1e-15);
  const auto u = isotropic_box(0.0);
  for (double p : u.table()) EXPECT_DOUBLE_EQ(p, 0.25);
  const std::array<Behavior, 2> parts{pr_box(), isotropic_box(0.0)};
  const std::array<double, 2> w{0.3, 0.7};
  EXPECT_LT(max_row_distance(mix(parts, w), isotropic_box(0.3)), 1e-15);
  EXPECT_THROW(isotropic_box(1.2), DomainError);
  EXPECT_THROW(isotropic_box(-0.1), DomainError);
}

TEST(Behavior, FromQuantumIsNoSignallingAndMatchesBorn) {
  StreamRng rng(4, 0);
  const std::array<std::size_t, 2> dims{2, 2};
  for (int i = 0; i < 20; ++i) {
    const auto rho = states::random_pure(2, rng);
    const std::array<double, 2> aa{rng.angle(), rng.angle()}, bb{rng.angle(), rng.angle()};
    const std::array<MeasurementSet, 2> parties{planar_measurements(aa), planar_measurements(bb)};
    const auto b = from_quantum(rho, parties, dims);
    EXPECT_TRUE(no_signalling_check(b).pass);
    const std::array<CMatrix, 2> eff{parties[0][1].effect(0), parties[1][0].effect(1)};
    const std::array<std::size_t, 2> in{1, 0}, out{0, 1};
    EXPECT_NEAR(b.prob(out, in), born(rho, eff), 1e-12);
  }
}

TEST(NoSignalling, DetectsSignallingBox) {
  // Bob's output copies Alice's input.
  std::vector<double> t(16, 0.0);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t a = 0; a < 2; ++a) t[(m * 2 + a) * 4 + 0 * 2 + m] = 1.0;
  }
  const auto r = no_signalling_check(Behavior({{2, 2}, {2, 2}}, t));
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_discrepancy, 1.0, 1e-15);
  EXPECT_NEAR(r.per_box[1], 1.0, 1e-15);
}

TEST(NoSignalling, TripartiteDeterministicAndMixtures) {
  const std::array<LocalStrategy, 3> s{LocalStrategy{2, {0, 1}}, LocalStrategy{2, {1, 1}}, LocalStrategy{3, {2, 0}}};
  const auto d = local_deterministic(s);
  EXPECT_EQ(d.num_boxes(), 3u);
  EXPECT_TRUE(no_signalling_check(d).pass);
  const std::array<std::size_t, 3> in{1, 0, 0}, out{1, 1, 2};
  EXPECT_DOUBLE_EQ(d.prob(out, in), 1.0);
}

TEST(Marginal, ProductAndPermutation) {
  const auto pp = product(pr_box(), isotropic_box(0.5));
  EXPECT_EQ(pp.num_boxes(), 4u);
  const std::array<std::size_t, 2> keep23{2, 3}, keep01{0, 1};
  EXPECT_LT(max_row_distance(marginal(pp, keep23), isotropic_box(0.5)), 1e-14);
  EXPECT_LT(max_row_distance(marginal(pp, keep01), pr_box()), 1e-14);

  const std::array<std::size_t, 2> swap{1, 0};
  const auto sw = permute_boxes(pr_box(), swap);
  // PR is symmetric under exchanging the parties.
  EXPECT_LT(max_row_distance(sw, pr_box()), 1e-15);
  const auto xb = permute_boxes(xor_box(0.2, -0.6), swap);
  const std::array<std::size_t, 2> in{0, 1}, out{0, 0};
  // After the swap box 0 holds the old box 1, so input (0, 1) reads the old row m = 1.
  EXPECT_NEAR(xb.prob(out, in), (1 - 0.6) / 4, 1e-15);
  const std::array<std::size_t, 2> bad{0, 0};
  EXPECT_THROW(permute_boxes(pr_box(), bad), ArgumentError);
}

TEST(Wire, PrPyramidMatchesHandEnumeration) {
  // Box 1's output feeds the input of the first box of a second PR pair.
  const std::array<Connection, 1> conn{Connection{Stage::first, 1, Stage::second, 0}};
  const auto w = wire(pr_box(), pr_box(), conn);
  ASSERT_EQ(w.num_boxes(), 4u);
  EXPECT_EQ(w.boxes()[2].inputs, 1u);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t a2 = 0; a2 < 2; ++a2) {
        std::array<double, 16> oracle{};
        for (std::size_t r = 0; r < 2; ++r) {
          for (std::size_t s = 0; s < 2; ++s) {
            const std::size_t g = r, c = r ^ (m & a), g2 = s, c2 = s ^ (c & a2);
            oracle[((g * 2 + c) * 2 + g2) * 2 + c2] += 0.25;
          }
        }
        const std::array<std::size_t, 4> in{m, a, 0, a2};
        const auto row = w.row(w.encode_inputs(in));
        for (std::size_t k = 0; k < 16; ++k) EXPECT_DOUBLE_EQ(row[k], oracle[k]);
      }
    }
  }
  // Box 2 reads box 1's output: at m = a2 = 1 the parity g ^ g2 ^ c2 equals a,
  // so the outputs of {0, 2, 3} reveal box 1's input.
  const auto ns = no_signalling_check(w);
  EXPECT_FALSE(ns.pass);
  EXPECT_NEAR(ns.max_discrepancy, 1.0, 1e-15);
  EXPECT_NEAR(ns.per_box[3], 1.0, 1e-15);
  EXPECT_NEAR(ns.per_box[1], 0.0, 1e-15);
}

TEST(Wire, RejectsCycles) {
  const std::array<Connection, 1> back{Connection{Stage::second, 0, Stage::first, 1}};
  EXPECT_THROW(wire(pr_box(), pr_box(), back), ArgumentError);
  const std::array<Connection, 2> twice{Connection{Stage::first, 0, Stage::second, 0},
                                        Connection{Stage::first, 1, Stage::second, 0}};
  EXPECT_THROW(wire(pr_box(), pr_box(), twice), ArgumentError);
}

TEST(Digits, RoundTrip) {
  const std::array<std::size_t, 3> radices{2, 3, 4};
  for (std::size_t i = 0; i < 24; ++i) EXPECT_EQ(encode_digits(decode_digits(i, radices), radices), i);
}
