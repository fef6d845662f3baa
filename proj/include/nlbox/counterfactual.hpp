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

// Ontic ensembles: probability distributions over joint counterfactual
// assignments, i.e. over the outputs every box would give for every input.
//
// An assignment gives, for each box, its output as a function of the joint
// input of all boxes (same mixed-radix order as Behavior). Local hidden
// variable models are the assignments in which box k's output depends only on
// input k; counterfactual parameter independence is a weaker, statistical
// condition checked by cpi_statistic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlbox/boxes.hpp"
#include "nlbox/lp.hpp"
#include "nlbox/parallel.hpp"
#include "nlbox/prob.hpp"
#include "nlbox/quantum.hpp"

namespace nlbox {

struct Assignment {
  /// maps[box][joint_input] = output of that box.
  std::vector<std::vector<std::size_t>> maps;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Lifts per-box maps on the box's own input to an Assignment.
Assignment local_assignment(std::span<const BoxSpec> boxes, const std::vector<std::vector<std::size_t>>& local);

class OnticEnsemble {
 public:
  /// Validates map lengths and ranges, weights >= 0 summing to 1 within 1e-10.
  OnticEnsemble(std::vector<BoxSpec> boxes, std::vector<Assignment> support, std::vector<double> weights);

  const std::vector<BoxSpec>& boxes() const { return boxes_; }
  const std::vector<Assignment>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  std::size_t joint_inputs() const;

 private:
  std::vector<BoxSpec> boxes_;
  std::vector<Assignment> support_;
  std::vector<double> weights_;
};

Behavior ensemble_to_behavior(const OnticEnsemble& e);

/// The two-stage construction for a bipartite state. Box 0 receives input m
/// and measures `box0[m]`; box 1 receives a and measures `box1[a]`. Stage one
/// draws an outcome g_m for every m from the Born marginals; stage two draws,
/// for each (m, a), box 1's outcome from the state left by the Kraus update
/// for g_m. Zero-probability branches are skipped.
OnticEnsemble theorem2_exact(const DensityMatrix& rho, std::span<const std::size_t> dims,
                             const MeasurementSet& box0, const MeasurementSet& box1);

/// Frequentist version: `samples` independent draws from the same procedure,
/// collected into an empirical ensemble ordered by assignment.
OnticEnsemble theorem2_sampled(const DensityMatrix& rho, std::span<const std::size_t> dims,
                               const MeasurementSet& box0, const MeasurementSet& box1,
                               std::uint64_t samples, std::uint64_t seed,
                               Execution execution = Execution::parallel);

struct CpiClass {
  std::vector<std::size_t> f2;  ///< box 1's map, by joint input
  double weight = 0.0;
  double information = 0.0;     ///< I(g : a | f2), bits
};

struct CpiReport {
  double value = 0.0;  ///< max over classes
  std::vector<CpiClass> classes;
};

/// max over positive-weight box-1 maps f2 of I(g : a | f2), where g is box 0's
/// output vector over its inputs given box 1's input a. `a_weights` is the
/// distribution of a (uniform when empty).
CpiReport cpi_statistic(const OnticEnsemble& e, std::span<const double> a_weights = {});

enum class F2Family {
  restricted,  ///< box 1's map depends on its own input a only
  general,     ///< any map of (m, a)
};

std::string to_string(F2Family family);

struct CpiFeasibility {
  F2Family family = F2Family::restricted;
  bool feasible = false;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::optional<OnticEnsemble> witness;
  lp::FarkasCheck certificate;  ///< valid when infeasible
  double witness_behavior_error = 0.0;
  double witness_cpi = 0.0;
};

/// Is there an ensemble over binary 2x2 assignments in `family` that
/// reproduces `target` and satisfies counterfactual parameter independence?
/// Solved as an LP over ensemble weights; the CPI condition is linear because
/// a is independent of the ensemble.
CpiFeasibility cpi_feasibility(const Behavior& target, F2Family family);

struct PrInfeasibility {
  /// Restricted-family assignment pairs compatible with the PR support, and
  /// how many of them tie g_0 xor g_1 to a in every f2 class.
  std::size_t compatible = 0;
  std::size_t contradicted = 0;
  bool logical = false;
  CpiFeasibility restricted;
  CpiFeasibility general;
  CpiFeasibility control_uniform;      ///< e = 0, restricted family
  CpiFeasibility control_tsirelson;    ///< e = 1/sqrt(2), general family
  double tsirelson_two_stage_error = 0.0;
  double tsirelson_two_stage_cpi = 0.0;
  bool infeasible = false;  ///< logical and LP verdicts for the restricted family
};

PrInfeasibility pr_cpi_infeasible();

struct LoopReport {
  double none = 0.0;      ///< weight of (pair, free inputs) with no fixed point
  double unique = 0.0;
  double multiple = 0.0;
  std::size_t pairs = 0;
  /// Over the uniquely solved cases (renormalized).
  double h_outcomes_given_ontic = 0.0;  ///< H(g_x g_y | omega_x omega_y m_x m_y)
  double h_outcomes = 0.0;              ///< H(g_x g_y)
  double i_outcomes = 0.0;              ///< I(g_x : g_y)
};

/// Crosswise composition of two bipartite binary ensembles: each copy's box-0
/// output is fed to the other copy's box-1 input, and box-0 inputs m_x, m_y
/// are uniform. Fixed points g_x = G_x(m_x, g_y), g_y = G_y(m_y, g_x) are
/// counted per ensemble pair; multiple fixed points are reported, not resolved.
LoopReport loop_compose(const OnticEnsemble& ex, const OnticEnsemble& ey);

/// Single deterministic assignment as a bipartite binary ensemble whose box-0
/// output is `g(a)` regardless of m (box 1 outputs 0).
OnticEnsemble response_ensemble(std::size_t g_at_0, std::size_t g_at_1);

struct ContextualityDemo {
  OnticEnsemble correlated;
  OnticEnsemble anticorrelated;
  double operational_distance = 0.0;
  double correlation_correlated = 0.0;
  double correlation_anticorrelated = 0.0;
  double correlation_difference = 0.0;
  /// p(M_B outcome = 0 | M_A outcome = 0) under each ensemble.
  double conditional_correlated = 0.0;
  double conditional_anticorrelated = 0.0;
};

ContextualityDemo contextuality_demo();

/// Behavior for an isotropic box realized by the singlet with the Tsirelson
/// angles, as an exact two-stage ensemble.
OnticEnsemble tsirelson_two_stage_ensemble();

}  // namespace nlbox
