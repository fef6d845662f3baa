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


#include "nlbox/counterfactual.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "nlbox/bell.hpp"
#include "nlbox/errors.hpp"

using namespace nlbox;

namespace {

constexpr std::array<std::size_t, 2> kQubits{2, 2};

MeasurementSet angles(double a, double b) {
  const std::array<double, 2> t{a, b};
  return planar_measurements(t);
}

}  // namespace

TEST(OnticEnsemble, Validation) {
  const std::vector<BoxSpec> box{{2, 2}};
  EXPECT_THROW(OnticEnsemble(box, {Assignment{{{0, 1}}}}, {0.9}), DomainError);
  EXPECT_THROW(OnticEnsemble(box, {Assignment{{{0, 2}}}}, {1.0}), ArgumentError);
  EXPECT_THROW(OnticEnsemble(box, {Assignment{{{0}}}}, {1.0}), ArgumentError);
  const OnticEnsemble ok(box, {Assignment{{{0, 1}}}, Assignment{{{1, 1}}}}, {0.25, 0.75});
  const auto b = ensemble_to_behavior(ok);
  const std::array<std::size_t, 1> in{0}, out{0};
  EXPECT_DOUBLE_EQ(b.prob(out, in), 0.25);
}

TEST(LocalAssignment, ExpandsToJointInputs) {
  const std::vector<BoxSpec> boxes{{2, 2}, {2, 2}};
  const auto a = local_assignment(boxes, {{0, 1}, {1, 1}});
  // Box 0 reads m (the high digit), box 1 reads a.
  EXPECT_EQ(a.maps[0], (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_EQ(a.maps[1], (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(TwoStageSampler, ExactReproducesBornStatistics) {
  StreamRng rng(31, 0);
  for (int i = 0; i < 10; ++i) {
    const auto rho = states::random_pure(2, rng);
    const auto m0 = angles(rng.angle(), rng.angle()), m1 = angles(rng.angle(), rng.angle());
    const auto e = theorem2_exact(rho, kQubits, m0, m1);
    EXPECT_LE(e.size(), 64u);
    const std::array<MeasurementSet, 2> parties{m0, m1};
    EXPECT_LT(max_row_distance(ensemble_to_behavior(e), from_quantum(rho, parties, kQubits)), 1e-12);
    // Box 0's outcome depends on m alone.
    for (const auto& s : e.support()) {
      EXPECT_EQ(s.maps[0][0], s.maps[0][1]);
      EXPECT_EQ(s.maps[0][2], s.maps[0][3]);
    }
    EXPECT_LT(cpi_statistic(e).value, 1e-10);
  }
}

TEST(TwoStageSampler, SingletSupportAndWeights) {
  const auto t = tsirelson_angles();
  const auto e = theorem2_exact(states::singlet(), kQubits, angles(t[0], t[1]), angles(t[2], t[3]));
  EXPECT_EQ(e.size(), 64u);
  double sum = 0.0;
  for (double w : e.weights()) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(chsh(ensemble_to_behavior(e)), kTsirelsonBound, 1e-12);
  const auto ref = tsirelson_two_stage_ensemble();
  EXPECT_EQ(ref.support(), e.support());
}

TEST(TwoStageSampler, SampledFrequenciesWithinFiveSigma) {
  const auto t = tsirelson_angles();
  const auto m0 = angles(t[0], t[1]), m1 = angles(t[2], t[3]);
  const auto exact = theorem2_exact(states::singlet(), kQubits, m0, m1);
  const std::uint64_t n = 200000;
  const auto sampled = theorem2_sampled(states::singlet(), kQubits, m0, m1, n, 77);
  std::map<Assignment, double> freq;
  for (std::size_t k = 0; k < sampled.size(); ++k) freq[sampled.support()[k]] += sampled.weights()[k];
  for (std::size_t k = 0; k < exact.size(); ++k) {
    const double p = exact.weights()[k];
    const double f = freq.count(exact.support()[k]) ? freq[exact.support()[k]] : 0.0;
    EXPECT_LE(std::abs(f - p), 5 * std::sqrt(p * (1 - p) / n) + 1e-12);
    freq.erase(exact.support()[k]);
  }
  EXPECT_TRUE(freq.empty());
}

TEST(TwoStageSampler, SampledIsIndependentOfThreading) {
  const auto t = tsirelson_angles();
  const auto m0 = angles(t[0], t[1]), m1 = angles(t[2], t[3]);
  const auto a = theorem2_sampled(states::singlet(), kQubits, m0, m1, 30000, 5, Execution::serial);
  const auto b = theorem2_sampled(states::singlet(), kQubits, m0, m1, 30000, 5, Execution::parallel);
  EXPECT_EQ(a.support(), b.support());
  EXPECT_EQ(a.weights(), b.weights());
  const auto c = theorem2_sampled(states::singlet(), kQubits, m0, m1, 30000, 6, Execution::serial);
  EXPECT_NE(a.weights(), c.weights());
}

TEST(TwoStageSampler, ConditioningMatchesFilteredFrequencies) {
  // p(g1 | g0 at m = 0) from the exact ensemble equals the Born conditional.
  const auto t = tsirelson_angles();
  const auto e = theorem2_exact(states::singlet(), kQubits, angles(t[0], t[1]), angles(t[2], t[3]));
  double joint = 0.0, marg = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto& s = e.support()[k];
    if (s.maps[0][0] != 0) continue;
    marg += e.weights()[k];
    if (s.maps[1][0] == 0) joint += e.weights()[k];
  }
  // Singlet: p(same | angle difference d) = sin^2(d / 2).
  EXPECT_NEAR(marg, 0.5, 1e-12);
  EXPECT_NEAR(joint / marg, std::pow(std::sin((t[0] - t[2]) / 2), 2), 1e-12);
}

TEST(Cpi, FeasibilityOfStandardBoxes) {
  const auto pr_r = cpi_feasibility(pr_box(), F2Family::restricted);
  EXPECT_FALSE(pr_r.feasible);
  EXPECT_TRUE(pr_r.certificate.valid);
  const auto pr_g = cpi_feasibility(pr_box(), F2Family::general);
  EXPECT_TRUE(pr_g.feasible);
  ASSERT_TRUE(pr_g.witness.has_value());
  EXPECT_LT(pr_g.witness_behavior_error, 1e-9);
  EXPECT_LT(pr_g.witness_cpi, 1e-9);
  const auto u = cpi_feasibility(isotropic_box(0.0), F2Family::restricted);
  EXPECT_TRUE(u.feasible);
  const auto l = cpi_feasibility(isotropic_box(0.5), F2Family::restricted);
  EXPECT_TRUE(l.feasible);
  EXPECT_EQ(to_string(F2Family::general), "general");
}

TEST(Cpi, PrInfeasibilityReport) {
  const auto r = pr_cpi_infeasible();
  EXPECT_EQ(r.compatible, 4u);
  EXPECT_EQ(r.contradicted, 4u);
  EXPECT_TRUE(r.logical);
  EXPECT_TRUE(r.infeasible);
  EXPECT_TRUE(r.control_uniform.feasible);
  EXPECT_TRUE(r.control_tsirelson.feasible);
  EXPECT_LT(r.tsirelson_two_stage_error, 1e-12);
  EXPECT_LT(r.tsirelson_two_stage_cpi, 1e-10);
}

TEST(Cpi, StatisticDetectsDependence) {
  // g copies a inside a single f2 class: one full bit of dependence.
  const std::vector<BoxSpec> boxes{{2, 2}, {2, 2}};
  const auto s = local_assignment(boxes, {{0, 0}, {0, 0}});
  Assignment leak = s;
  leak.maps[0] = {0, 1, 0, 1};
  const OnticEnsemble e(boxes, {leak}, {1.0});
  EXPECT_NEAR(cpi_statistic(e).value, 1.0, 1e-12);
  const OnticEnsemble ok(boxes, {s}, {1.0});
  EXPECT_NEAR(cpi_statistic(ok).value, 0.0, 1e-12);
}

TEST(Loop, IdentityNegationContradicts) {
  const auto r = loop_compose(response_ensemble(0, 1), response_ensemble(1, 0));
  EXPECT_DOUBLE_EQ(r.none, 1.0);
  EXPECT_DOUBLE_EQ(r.unique, 0.0);
  const auto same = loop_compose(response_ensemble(0, 1), response_ensemble(0, 1));
  EXPECT_DOUBLE_EQ(same.multiple, 1.0);
}

TEST(Loop, ParameterIndependentPairsAreConsistent) {
  // Every pair of deterministic maps that ignore the looped input has a unique fixed point.
  const std::vector<BoxSpec> boxes{{2, 2}, {2, 2}};
  for (std::size_t fx = 0; fx < 4; ++fx) {
    for (std::size_t fy = 0; fy < 4; ++fy) {
      const auto ax = local_assignment(boxes, {{fx & 1, fx >> 1}, {0, 0}});
      const auto ay = local_assignment(boxes, {{fy & 1, fy >> 1}, {0, 0}});
      const auto r = loop_compose(OnticEnsemble(boxes, {ax}, {1.0}), OnticEnsemble(boxes, {ay}, {1.0}));
      EXPECT_DOUBLE_EQ(r.none, 0.0);
      EXPECT_DOUBLE_EQ(r.unique, 1.0);
      EXPECT_NEAR(r.h_outcomes_given_ontic, 0.0, 1e-12);
    }
  }
  const auto q = tsirelson_two_stage_ensemble();
  const auto crossed = loop_compose(q, q);
  EXPECT_NEAR(crossed.none, 0.0, 1e-15);
  EXPECT_NEAR(crossed.unique, 1.0, 1e-12);
  EXPECT_NEAR(crossed.h_outcomes_given_ontic, 0.0, 1e-9);
}

TEST(Contextuality, SameStatisticsDifferentCorrelations) {
  const auto d = contextuality_demo();
  EXPECT_NEAR(d.operational_distance, 0.0, 1e-15);
  EXPECT_NEAR(d.correlation_correlated, 1.0, 1e-15);
  EXPECT_NEAR(d.correlation_anticorrelated, -1.0, 1e-15);
  EXPECT_NEAR(d.correlation_difference, 2.0, 1e-15);
  EXPECT_NEAR(d.conditional_correlated, 1.0, 1e-15);
  EXPECT_NEAR(d.conditional_anticorrelated, 0.0, 1e-15);
}
