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


#include "nlbox/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "nlbox/bell.hpp"
#include "nlbox/boxes.hpp"
#include "nlbox/counterfactual.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/icausality.hpp"
#include "nlbox/prob.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/random.hpp"
#include "nlbox/sweeps.hpp"
#include "nlbox/version.hpp"

namespace nlbox {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::uint64_t check_seed(const CheckOptions& o, int id) {
  return o.seed + 1000003ull * static_cast<std::uint64_t>(id);
}

Behavior singlet_behavior(std::array<double, 4> angles) {
  const std::vector<double> a0{angles[0], angles[1]}, a1{angles[2], angles[3]};
  const std::vector<MeasurementSet> parties{planar_measurements(a0), planar_measurements(a1)};
  const std::vector<std::size_t> dims{2, 2};
  return from_quantum(states::singlet(), parties, dims);
}

CheckResult chsh_values(const CheckOptions&) {
  CheckResult r;
  const double pr = chsh(pr_box());
  // With inputs listed in order, the angles (0, pi/2; pi/4, 3pi/4) put the
  // minus sign on the wrong term; the textbook assignment swaps box 0's
  // inputs. Report both, and a relabeling with +2 sqrt(2).
  const Behavior listed = singlet_behavior({0.0, kPi / 2, kPi / 4, 3 * kPi / 4});
  ChshPairing textbook;
  textbook.inputs_a = {1, 0};
  const double listed_value = chsh(listed);
  const double textbook_value = chsh(listed, textbook);
  const double canonical = chsh(singlet_behavior(tsirelson_angles()));
  const LocalEnumeration local = enumerate_deterministic();
  r.pass = pr == 4.0 && std::abs(std::abs(textbook_value) - kTsirelsonBound) <= 1e-9 &&
           std::abs(canonical - kTsirelsonBound) <= 1e-9 && local.strategies == 256 &&
           local.max_local_chsh == 2.0;
  r.details = {{"pr_box", pr},
               {"singlet_listed_order", listed_value},
               {"singlet_textbook_order", textbook_value},
               {"singlet_canonical_angles", canonical},
               {"tsirelson_bound", kTsirelsonBound},
               {"deterministic_tables", local.strategies},
               {"no_signalling_deterministic", local.no_signalling},
               {"max_local_chsh", local.max_local_chsh},
               {"max_signalling_chsh", local.max_signalling_chsh},
               {"tolerance", 1e-9}};
  return r;
}

CheckResult information_causality(const CheckOptions& o) {
  CheckResult r;
  const ICReport pr = ic_quantity(van_dam_strategy(pr_box()));
  const IcResourceSweep sweep = ic_resource_sweep(100, check_seed(o, 2), o.execution);
  r.pass = std::abs(pr.value - 2.0) <= 1e-12 && std::abs(pr.h_c - 1.0) <= 1e-12 && !pr.pass &&
           sweep.failures == 0;
  r.details = {{"pr_value", pr.value},
               {"pr_h_c", pr.h_c},
               {"pr_terms", pr.terms},
               {"quantum_resources", sweep.instances.size()},
               {"quantum_failures", sweep.failures},
               {"quantum_max_excess", sweep.max_excess},
               {"tolerance", kIcTolerance}};
  return r;
}

CheckResult eq1(const CheckOptions& o) {
  CheckResult r;
  const Eq1Report pr = eq1_check(van_dam_strategy(pr_box()));
  Json rows = Json::array();
  bool others_hold = true;
  auto add = [&](const std::string& kind, const std::string& name, const Behavior& b) {
    const Eq1Report e = eq1_check(van_dam_strategy(b));
    others_hold = others_hold && e.holds;
    rows.push_back({{"kind", kind}, {"resource", name}, {"max_single", e.max_single}, {"sum", e.sum},
                    {"holds", e.holds}});
  };
  for (std::size_t code = 0; code < 16; ++code) {
    const std::vector<LocalStrategy> s{{2, {code & 1, code >> 1 & 1}}, {2, {code >> 2 & 1, code >> 3 & 1}}};
    add("classical", "deterministic-" + std::to_string(code), local_deterministic(s));
  }
  const std::vector<LocalStrategy> zero{{2, {0, 0}}, {2, {0, 0}}}, one{{2, {1, 1}}, {2, {1, 1}}};
  const std::vector<Behavior> shared{local_deterministic(zero), local_deterministic(one)};
  const std::vector<double> half{0.5, 0.5};
  add("classical", "shared-bit", mix(shared, half));
  add("quantum", "singlet-tsirelson", singlet_behavior(tsirelson_angles()));
  add("quantum", "singlet-listed-angles", singlet_behavior({0.0, kPi / 2, kPi / 4, 3 * kPi / 4}));
  for (std::size_t i = 0; i < 10; ++i) {
    StreamRng rng(check_seed(o, 3), i);
    const DensityMatrix rho = states::random_pure(2, rng);
    const std::array<double, 4> angles{rng.angle(), rng.angle(), rng.angle(), rng.angle()};
    const std::vector<double> a0{angles[0], angles[1]}, a1{angles[2], angles[3]};
    const std::vector<MeasurementSet> parties{planar_measurements(a0), planar_measurements(a1)};
    const std::vector<std::size_t> dims{2, 2};
    add("quantum", "random-" + std::to_string(i), from_quantum(rho, parties, dims));
  }
  const bool pr_violates = std::abs(pr.max_single - 1.0) <= 1e-12 && std::abs(pr.sum - 2.0) <= 1e-12 && !pr.holds;
  r.pass = pr_violates && others_hold;
  r.details = {{"pr_max_single", pr.max_single},
               {"pr_sum", pr.sum},
               {"pr_violates", pr_violates},
               {"all_other_resources_hold", others_hold},
               {"resources", rows},
               {"tolerance", kIcTolerance}};
  return r;
}

CheckResult theorem2(const CheckOptions& o) {
  CheckResult r;
  const auto angles = tsirelson_angles();
  const std::vector<double> a0{angles[0], angles[1]}, a1{angles[2], angles[3]};
  const MeasurementSet m0 = planar_measurements(a0), m1 = planar_measurements(a1);
  const std::vector<std::size_t> dims{2, 2};
  const Behavior born = singlet_behavior(angles);
  const OnticEnsemble exact = theorem2_exact(states::singlet(), dims, m0, m1);
  const double exact_error = max_row_distance(ensemble_to_behavior(exact), born);
  const double exact_cpi = cpi_statistic(exact).value;
  const std::uint64_t draws = 1000000;
  const OnticEnsemble sampled = theorem2_sampled(states::singlet(), dims, m0, m1, draws, check_seed(o, 4), o.execution);
  const Behavior est = ensemble_to_behavior(sampled);
  double max_z = 0.0;
  bool exact_support = true;
  for (std::size_t i = 0; i < born.table().size(); ++i) {
    const double p = born.table()[i];
    const double sigma = std::sqrt(p * (1.0 - p) / double(draws));
    const double dev = std::abs(est.table()[i] - p);
    if (sigma < 1e-15) {
      exact_support = exact_support && dev < 1e-12;
    } else {
      max_z = std::max(max_z, dev / sigma);
    }
  }
  const double sampled_cpi = cpi_statistic(sampled).value;
  r.pass = exact_error <= 1e-10 && exact_cpi <= 1e-10 && max_z <= 5.0 && exact_support;
  r.details = {{"exact_support", exact.size()},
               {"exact_behavior_error", exact_error},
               {"exact_cpi", exact_cpi},
               {"draws", draws},
               {"sampled_support", sampled.size()},
               {"sampled_max_z", max_z},
               {"sampled_cpi_plugin", sampled_cpi},
               {"tolerance", 1e-10},
               {"sigma_limit", 5.0}};
  return r;
}

Json feasibility_json(const CpiFeasibility& f) {
  Json j = {{"family", to_string(f.family)},
            {"feasible", f.feasible},
            {"variables", f.variables},
            {"constraints", f.constraints}};
  if (f.feasible) {
    j["witness_support"] = f.witness->size();
    j["witness_behavior_error"] = f.witness_behavior_error;
    j["witness_cpi"] = f.witness_cpi;
  } else {
    j["certificate_valid"] = f.certificate.valid;
    j["certificate_max_yA"] = f.certificate.max_ya;
    j["certificate_yb"] = f.certificate.yb;
  }
  return j;
}

CheckResult pr_infeasibility(const CheckOptions&) {
  CheckResult r;
  const PrInfeasibility p = pr_cpi_infeasible();
  r.pass = p.infeasible && p.control_uniform.feasible;
  r.details = {{"compatible_assignment_pairs", p.compatible},
               {"contradicted_f2_classes", p.contradicted},
               {"logical", p.logical},
               {"restricted", feasibility_json(p.restricted)},
               {"general", feasibility_json(p.general)},
               {"control_uniform", feasibility_json(p.control_uniform)},
               {"control_tsirelson", feasibility_json(p.control_tsirelson)},
               {"tsirelson_two_stage_behavior_error", p.tsirelson_two_stage_error},
               {"tsirelson_two_stage_cpi", p.tsirelson_two_stage_cpi},
               {"infeasible", p.infeasible}};
  return r;
}

Json loop_json(const LoopReport& l) {
  return {{"pairs", l.pairs},
          {"none", l.none},
          {"unique", l.unique},
          {"multiple", l.multiple},
          {"H_outcomes_given_ontic", l.h_outcomes_given_ontic},
          {"H_outcomes", l.h_outcomes},
          {"I_outcomes", l.i_outcomes}};
}

CheckResult loops(const CheckOptions&) {
  CheckResult r;
  const LoopReport paradox = loop_compose(response_ensemble(0, 1), response_ensemble(1, 0));
  const OnticEnsemble q = tsirelson_two_stage_ensemble();
  const LoopReport crossed = loop_compose(q, q);
  r.pass = paradox.none == 1.0 && crossed.none == 0.0;
  r.details = {{"identity_negation", loop_json(paradox)}, {"two_stage_crossed", loop_json(crossed)}};
  return r;
}

CheckResult series(const CheckOptions&) {
  CheckResult r;
  double max_series_error = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double e = 0.05 * k;
    max_series_error = std::max(max_series_error, std::abs(binary_entropy_series(e, 200) -
                                                           (1.0 - binary_entropy((1.0 + e) / 2.0))));
  }
  double max_s_gap = 0.0;
  std::size_t solvable = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const E12Report e = e12_relation(0.05 * i, 0.05 * j);
      if (!e.solvable) continue;
      ++solvable;
      max_s_gap = std::max(max_s_gap, std::abs(e.s_direct - e.s_series));
    }
  }
  r.pass = max_series_error < 1e-8 && max_s_gap < 1e-8;
  r.details = {{"series_points", 20},
               {"series_max_error", max_series_error},
               {"grid_points", 400},
               {"grid_solvable", solvable},
               {"s_max_gap", max_s_gap},
               {"tolerance", 1e-8}};
  return r;
}

CheckResult nested_protocol(const CheckOptions& o) {
  CheckResult r;
  const std::uint64_t trials = 100000;
  Json sims = Json::array();
  bool sim_ok = true;
  std::uint64_t stream = 0;
  for (double e : {1.0, 0.9, kInvSqrt2}) {
    for (std::size_t k : {1, 2}) {
      const ICStrategy s = pawlowski_protocol(e, e, k);
      const SuccessEstimate est = simulate_success(s, trials, check_seed(o, 8) + 7919 * stream++, o.execution);
      for (std::size_t m = 0; m < s.bits; ++m) {
        const double p = pawlowski_success(e, e, k, m);
        const double obs = double(est.successes[m]) / double(trials);
        const double sigma = std::sqrt(p * (1.0 - p) / double(trials));
        const bool ok = sigma > 0.0 ? std::abs(obs - p) <= 3.0 * sigma : obs == p;
        sim_ok = sim_ok && ok;
        sims.push_back({{"e", e}, {"levels", k}, {"address", m}, {"observed", obs}, {"predicted", p},
                        {"sigma", sigma}, {"pass", ok}});
      }
    }
  }
  Json perfect = Json::array();
  bool perfect_ok = true;
  for (std::size_t k : {1, 2}) {
    const ICReport ic = ic_quantity(pawlowski_protocol(1.0, 1.0, k));
    const double n = double(std::size_t{1} << k);
    perfect_ok = perfect_ok && std::abs(ic.value - n) <= 1e-12;
    perfect.push_back({{"levels", k}, {"bits", n}, {"ic_quantity", ic.value}});
  }
  // Scan the closed form: 2e^2 > 1.05 must exceed 1 for some n <= 32, and
  // 2e^2 <= 0.95 must stay at or below 1 up to n = 64.
  bool above_ok = true, below_ok = true;
  std::size_t above_points = 0, below_points = 0, worst_first_n = 0;
  double below_max = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double e = 0.001 * i;
    if (2 * e * e > 1.05) {
      ++above_points;
      std::size_t first = 0;
      for (std::size_t n = 1; n <= 32 && first == 0; ++n) {
        if (pawlowski_value(e, e, n) > 1.0) first = n;
      }
      above_ok = above_ok && first != 0;
      worst_first_n = std::max(worst_first_n, first);
    } else if (2 * e * e <= 0.95) {
      ++below_points;
      for (std::size_t n = 1; n <= 64; ++n) below_max = std::max(below_max, pawlowski_value(e, e, n));
    }
  }
  below_ok = below_max <= 1.0;
  r.pass = sim_ok && perfect_ok && above_ok && below_ok;
  r.details = {{"trials_per_address", trials},
               {"simulations", sims},
               {"perfect_boxes", perfect},
               {"scan_above_points", above_points},
               {"scan_above_largest_first_n", worst_first_n},
               {"scan_below_points", below_points},
               {"scan_below_max_value", below_max},
               {"sigma_limit", 3.0}};
  return r;
}

CheckResult monogamy(const CheckOptions& o) {
  CheckResult r;
  // Qubits ordered (singlet half, maximally mixed qubit, singlet half).
  const std::vector<DensityMatrix> factors{states::singlet(), states::maximally_mixed(1)};
  const std::vector<std::size_t> dims3{2, 2, 2}, perm{0, 2, 1};
  const DensityMatrix rho = permute_subsystems(states::product(factors), perm, dims3);
  const auto angles = tsirelson_angles();
  const std::vector<double> a0{angles[0], angles[1]}, a2{angles[2], angles[3]}, a1{0.0, kPi / 2};
  const std::vector<MeasurementSet> parties{planar_measurements(a0), planar_measurements(a1),
                                            planar_measurements(a2)};
  const Behavior saturating = from_quantum(rho, parties, dims3);
  const MonogamyReport sat = monogamy_quantum(saturating, pairing_13(), pairing_23());

  const MonogamySweep sweep = monogamy_sweep(1000, check_seed(o, 9), o.execution);

  const std::vector<std::size_t> pr_perm{0, 2, 1};
  const Behavior uniform({{2, 2}}, std::vector<double>(4, 0.5));
  const Behavior pr13 = permute_boxes(product(pr_box(), uniform), pr_perm);
  const MonogamyReport pr = monogamy_quantum(pr13, pairing_13(), pairing_23());
  r.pass = std::abs(sat.value - 8.0) <= 1e-9 && sweep.quantum_failures == 0 && sweep.ns_failures == 0 &&
           !pr.pass && pr.value > 8.0;
  r.details = {{"saturating_chsh_13", sat.chsh_13},
               {"saturating_chsh_23", sat.chsh_23},
               {"saturating_value", sat.value},
               {"random_instances", sweep.instances.size()},
               {"random_max_squares", sweep.max_squares},
               {"random_max_sum", sweep.max_sum},
               {"random_quantum_failures", sweep.quantum_failures},
               {"random_ns_failures", sweep.ns_failures},
               {"pr13_value", pr.value},
               {"pr13_flagged", !pr.pass},
               {"quantum_tolerance", 1e-6},
               {"linear_tolerance", 1e-9}};
  return r;
}

Json multiparty_json(const MultipartySystem& s) {
  const MultipartyReport f = multipartite_ic_flawed(s);
  const MultipartyReport c = multipartite_ic_corrected(s);
  return {{"system", s.name},
          {"h_c", f.h_c},
          {"flawed_value", f.value},
          {"flawed_pass", f.pass},
          {"corrected_value", c.value},
          {"corrected_pass", c.pass},
          {"corrected_literal_value", c.literal_value},
          {"corrected_literal_pass", c.literal_pass}};
}

CheckResult multipartite(const CheckOptions&) {
  CheckResult r;
  Json rows = Json::array();
  bool ok = true;
  for (const MultipartySystem& s : {ghz_system(), shared_bit_system()}) {
    const Json j = multiparty_json(s);
    ok = ok && std::abs(j["flawed_value"].get<double>() - 2.0) <= 1e-12 &&
         std::abs(j["h_c"].get<double>() - 1.0) <= 1e-12 && std::abs(j["corrected_value"].get<double>() - 1.0) <= 1e-12 &&
         j["corrected_pass"].get<bool>();
    rows.push_back(j);
  }
  rows.push_back(multiparty_json(independent_system()));
  rows.push_back(multiparty_json(double_pr_system()));
  r.pass = ok;
  r.details = {{"systems", rows}, {"tolerance", kIcTolerance}};
  return r;
}

CheckResult lemma1(const CheckOptions& o) {
  CheckResult r;
  double worst = 0.0;
  const std::size_t count = 100;
  for (std::size_t i = 0; i < count; ++i) {
    StreamRng rng(check_seed(o, 11), i);
    const std::size_t kn = 2 + rng.next() % 3, kq = 2 + rng.next() % 3, ko = 2 + rng.next() % 3;
    std::vector<double> pn(kn), pq(kq);
    for (double& p : pn) p = rng.uniform() + 0.01;
    for (double& p : pq) p = rng.uniform() + 0.01;
    std::vector<double> w(kn * kq * ko, 0.0);
    for (std::size_t n = 0; n < kn; ++n) {
      for (std::size_t q = 0; q < kq; ++q) w[(n * kq + q) * ko + rng.next() % ko] = pn[n] * pq[q];
    }
    const auto d = JointDistribution::from_weights({{"N", kn}, {"Q", kq}, {"O", ko}}, std::move(w));
    worst = std::max(worst, std::abs(lemma1_residual(d, {"N"}, {"Q"}, {"O"}).residual));
  }
  r.pass = worst < 1e-10;
  r.details = {{"instances", count}, {"max_abs_residual", worst}, {"tolerance", 1e-10}};
  return r;
}

CheckResult contextuality(const CheckOptions&) {
  CheckResult r;
  const ContextualityDemo d = contextuality_demo();
  r.pass = d.operational_distance == 0.0 && d.correlation_difference == 2.0;
  r.details = {{"operational_distance", d.operational_distance},
               {"correlation_correlated", d.correlation_correlated},
               {"correlation_anticorrelated", d.correlation_anticorrelated},
               {"correlation_difference", d.correlation_difference},
               {"p_B0_given_A0_correlated", d.conditional_correlated},
               {"p_B0_given_A0_anticorrelated", d.conditional_anticorrelated}};
  return r;
}

struct Entry {
  const char* name;
  CheckResult (*run)(const CheckOptions&);
};

constexpr std::array<Entry, 12> kChecks{{
    {"chsh-values", chsh_values},
    {"information-causality", information_causality},
    {"single-vs-sum", eq1},
    {"two-stage-sampler", theorem2},
    {"pr-cpi-infeasibility", pr_infeasibility},
    {"loop-composition", loops},
    {"entropy-series", series},
    {"nested-protocol", nested_protocol},
    {"monogamy", monogamy},
    {"multipartite-ic", multipartite},
    {"determined-output-identity", lemma1},
    {"contextuality", contextuality},
}};

}  // namespace

int check_count() { return static_cast<int>(kChecks.size()); }

std::string check_name(int id) {
  if (id < 1 || id > check_count()) throw ArgumentError("unknown check id " + std::to_string(id));
  return kChecks[id - 1].name;
}

CheckResult run_check(int id, const CheckOptions& options) {
  if (id < 1 || id > check_count()) throw ArgumentError("unknown check id " + std::to_string(id));
  CheckResult r = kChecks[id - 1].run(options);
  r.id = id;
  r.name = kChecks[id - 1].name;
  return r;
}

std::vector<CheckResult> run_paper_checks(const CheckOptions& options) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= check_count(); ++id) out.push_back(run_check(id, options));
  return out;
}

Json suite_report(const std::vector<CheckResult>& results, const CheckOptions& options) {
  Json summary = Json::array();
  Json details = Json::object();
  std::size_t passed = 0;
  for (const auto& r : results) {
    summary.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}});
    details[r.name] = r.details;
    passed += r.pass ? 1 : 0;
  }
  return {{"experiment", "suite"},
          {"suite", "paper-checks"},
          {"version", kVersion},
          {"seed", options.seed},
          {"checks", results.size()},
          {"passed", passed},
          {"pass", passed == results.size()},
          {"summary", summary},
          {"details", details}};
}

}  // namespace nlbox
