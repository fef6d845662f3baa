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


#include "nlbox/serialize.hpp"

#include <gtest/gtest.h>

#include <array>

#include "nlbox/bell.hpp"
#include "nlbox/errors.hpp"

using namespace nlbox;

TEST(Serialize, DistributionRoundTrip) {
  const JointDistribution d({{"x", 2}, {"y", 3}}, {0.1, 0.2, 0.05, 0.15, 0.3, 0.2});
  const auto back = distribution_from_json(Json::parse(to_json(d).dump()));
  EXPECT_EQ(back.variables(), d.variables());
  EXPECT_EQ(back.table(), d.table());
}

TEST(Serialize, MatrixRoundTrip) {
  StreamRng rng(1, 0);
  const auto rho = states::random_pure(2, rng);
  const CMatrix back = matrix_from_json(Json::parse(to_json(rho.matrix()).dump()));
  EXPECT_EQ((back - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Serialize, BehaviorRoundTripAndValidation) {
  const auto b = xor_box(0.3, -0.7);
  const auto back = behavior_from_json(Json::parse(to_json(b).dump()));
  EXPECT_EQ(back.boxes(), b.boxes());
  EXPECT_EQ(back.table(), b.table());
  Json broken = to_json(b);
  broken["table"][0] = 0.9;
  EXPECT_THROW(behavior_from_json(broken), DomainError);
}

TEST(Serialize, EnsembleRoundTrip) {
  const auto e = tsirelson_two_stage_ensemble();
  const auto back = ensemble_from_json(Json::parse(to_json(e).dump()));
  EXPECT_EQ(back.support(), e.support());
  EXPECT_EQ(back.weights(), e.weights());
  EXPECT_EQ(back.boxes(), e.boxes());
}
