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


#include "nlbox/icausality.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "nlbox/bell.hpp"
#include "nlbox/errors.hpp"

using namespace nlbox;

namespace {

double h(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Each address is guessed correctly with bias e^k, independently of the data.
double nested_oracle(double e, std::size_t k) {
  const double bias = std::pow(e, static_cast<double>(k));
  return std::ldexp(1.0 - h((1 + bias) / 2), static_cast<int>(k));
}

}  // namespace

TEST(IcGame, TrivialStrategy) {
  const auto r = ic_quantity(trivial_strategy(2));
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.h_c, 1.0, 1e-12);
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_NEAR(r.terms[0], 1.0, 1e-12);
  EXPECT_NEAR(r.terms[1], 0.0, 1e-12);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(ic_quantity(trivial_strategy(4)).value, 1.0, 1e-12);
}

TEST(IcGame, PrBoxViolates) {
  const auto r = ic_quantity(van_dam_strategy(pr_box()));
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_NEAR(r.h_c, 1.0, 1e-12);
  EXPECT_FALSE(r.pass);
}

TEST(IcGame, IsotropicVanDamMatchesBinaryEntropyFormula) {
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double e = 0.05 * i;
    const auto r = ic_quantity(van_dam_strategy(isotropic_box(e)));
    EXPECT_NEAR(r.value, 2 * (1 - h((1 + e) / 2)), 1e-10) << e;
    EXPECT_GE(r.value, prev - 1e-12);
    prev = r.value;
    EXPECT_EQ(r.pass, r.value <= r.h_c + kIcTolerance);
  }
  // Tsirelson boxes stay within the bound.
  EXPECT_TRUE(ic_quantity(van_dam_strategy(isotropic_box(1 / std::numbers::sqrt2))).pass);
}

TEST(IcGame, JointIsNormalizedAndHasExpectedVariables) {
  const auto d = ic_joint(van_dam_strategy(isotropic_box(0.4)));
  for (const char* label : {"a0", "a1", "m", "c", "b"}) EXPECT_TRUE(d.has(label)) << label;
  double s = 0.0;
  for (double p : d.table()) s += p;
  EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(IcGame, SampledAgreesWithExact) {
  const auto s = van_dam_strategy(isotropic_box(0.8));
  const auto exact = ic_quantity(s);
  const auto est = ic_quantity_sampled(s, 200000, 3);
  EXPECT_TRUE(est.sampled);
  EXPECT_EQ(est.samples, 200000u);
  EXPECT_NEAR(est.value, exact.value, 5 * est.value_std_error + 1e-4);
  const auto serial = ic_quantity_sampled(s, 50000, 8, Execution::serial);
  const auto parallel = ic_quantity_sampled(s, 50000, 8, Execution::parallel);
  EXPECT_EQ(serial.value, parallel.value);
  EXPECT_EQ(serial.terms, parallel.terms);
}

TEST(NestedProtocol, ExactValueMatchesOracle) {
  for (double e : {1.0, 0.9, 1 / std::numbers::sqrt2, 0.3}) {
    for (std::size_t k : {1, 2, 3}) {
      EXPECT_NEAR(pawlowski_value(e, e, k), nested_oracle(e, k), 1e-10);
      if (k <= 2) EXPECT_NEAR(ic_quantity(pawlowski_protocol(e, e, k)).value, nested_oracle(e, k), 1e-9);
    }
  }
  EXPECT_NEAR(ic_quantity(pawlowski_protocol(1.0, 1.0, 2)).value, 4.0, 1e-12);
  EXPECT_THROW(pawlowski_protocol(0.5, 0.5, 0), ArgumentError);
}

TEST(NestedProtocol, SuccessProbabilityPerAddress) {
  // With unequal correlators the bias is the product of e_{bit} along the address.
  const double e0 = 0.9, e1 = 0.6;
  for (std::size_t m = 0; m < 4; ++m) {
    // Bit l of m selects Bob's input at level l.
    double bias = 1.0;
    for (std::size_t l = 0; l < 2; ++l) bias *= ((m >> l) & 1) ? e1 : e0;
    EXPECT_NEAR(pawlowski_success(e0, e1, 2, m), (1 + bias) / 2, 1e-12) << m;
  }
  const auto s = pawlowski_protocol(e0, e1, 2);
  const std::uint64_t n = 40000;
  const auto est = simulate_success(s, n, 19);
  ASSERT_EQ(est.successes.size(), 4u);
  for (std::size_t m = 0; m < 4; ++m) {
    const double p = pawlowski_success(e0, e1, 2, m);
    EXPECT_NEAR(double(est.successes[m]) / double(n), p, 5 * std::sqrt(p * (1 - p) / double(n)));
  }
  const auto a = simulate_success(s, 5000, 2, Execution::serial);
  const auto b = simulate_success(s, 5000, 2, Execution::parallel);
  EXPECT_EQ(a.successes, b.successes);
}

TEST(E12, SolvesTheBinaryEntropyRelation) {
  const auto r = e12_relation(0.5, 0.5);
  ASSERT_TRUE(r.solvable);
  EXPECT_NEAR(1 - h((1 + r.e12) / 2), 2 * (1 - h(0.75)), 1e-10);
  EXPECT_NEAR(r.s_direct, r.s_series, 1e-10);
  EXPECT_GT(r.series_terms, 1u);
  EXPECT_FALSE(e12_relation(1.0, 0.9).solvable);
  EXPECT_THROW(e12_relation(-0.1, 0.5), DomainError);
  const auto z = e12_relation(0.0, 0.0);
  EXPECT_NEAR(z.e12, 0.0, 1e-9);
}

TEST(SingleVsSum, ClassicalHoldsPrFails) {
  const std::array<LocalStrategy, 2> s{LocalStrategy{2, {0, 1}}, LocalStrategy{2, {1, 0}}};
  const auto local = eq1_check(van_dam_strategy(local_deterministic(s)));
  EXPECT_TRUE(local.holds);
  const auto pr = eq1_check(van_dam_strategy(pr_box()));
  EXPECT_FALSE(pr.holds);
  EXPECT_NEAR(pr.sum, 2.0, 1e-12);
  EXPECT_NEAR(pr.max_single, 1.0, 1e-12);
}

TEST(SingleVsSum, TsirelsonIsotropicTermsMatchFormula) {
  const double e = 1 / std::numbers::sqrt2;
  const auto r = eq1_check(van_dam_strategy(isotropic_box(e)));
  ASSERT_EQ(r.terms.size(), 2u);
  for (double t : r.terms) EXPECT_NEAR(t, 1 - h((1 + e) / 2), 1e-10);
  for (double t : r.single) EXPECT_NEAR(t, 1 - h((1 + e) / 2), 1e-10);
}

TEST(Multipartite, FlawedAndCorrectedForms) {
  for (const auto& s : {ghz_system(), shared_bit_system()}) {
    const auto f = multipartite_ic_flawed(s);
    const auto c = multipartite_ic_corrected(s);
    EXPECT_NEAR(f.value, 2.0, 1e-12) << s.name;
    EXPECT_FALSE(f.pass) << s.name;
    EXPECT_NEAR(c.value, 1.0, 1e-12) << s.name;
    EXPECT_NEAR(c.h_c, 1.0, 1e-12) << s.name;
    EXPECT_TRUE(c.pass) << s.name;
  }
  const auto ind = multipartite_ic_corrected(independent_system());
  EXPECT_TRUE(ind.pass);
  const auto pr = multipartite_ic_corrected(double_pr_system());
  EXPECT_NEAR(pr.value, 2.0, 1e-12);
  EXPECT_FALSE(pr.pass);
}
