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


// nlbox: batch runner for the box, CHSH, information-causality and
// counterfactual experiments. Every run prints (or writes) one report.
//
// Exit status: 0 when the experiment ran (whatever its verdicts), 2 for usage
// errors, 3 for numerical failures inside a computation.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlbox/bell.hpp"
#include "nlbox/boxes.hpp"
#include "nlbox/checks.hpp"
#include "nlbox/counterfactual.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/icausality.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/serialize.hpp"
#include "nlbox/sweeps.hpp"
#include "nlbox/version.hpp"

namespace {

using nlbox::Json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kConvention = "outputs 0 -> +1, 1 -> -1; CHSH = E(x0,y0) + E(x0,y1) + E(x1,y0) - E(x1,y1)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  bool exact = false;
  double e0 = 1.0;
  std::optional<double> e1;
  double e2 = 0.0;
  std::size_t levels = 1;
  std::string box;  // empty: per-command default
  std::string resource;  // empty: per-command default
  std::string state = "singlet";
  std::string source = "two-stage";
  std::string angles;
  std::string output;
  std::string format = "json";
  std::string behavior_in;
  std::string behavior_out;
  std::string suite = "paper-checks";
};

Json config_json(const Options& o) {
  return {{"seed", o.seed},
          {"samples", o.samples},
          {"exact", o.exact},
          {"e0", o.e0},
          {"e1", o.e1 ? Json(*o.e1) : Json(nullptr)},
          {"e2", o.e2},
          {"levels", o.levels},
          {"box", o.box},
          {"resource", o.resource},
          {"state", o.state},
          {"source", o.source},
          {"angles", o.angles},
          {"format", o.format},
          {"behavior_in", o.behavior_in},
          {"behavior_out", o.behavior_out}};
}

// Accepts plain numbers and multiples of pi such as "pi/4", "3pi/4", "-pi".
double parse_angle(std::string token) {
  const auto p = token.find("pi");
  try {
    if (p == std::string::npos) return std::stod(token);
    std::string head = token.substr(0, p), tail = token.substr(p + 2);
    double k = 1.0;
    if (head == "-") k = -1.0;
    else if (!head.empty()) k = std::stod(head.back() == '*' ? head.substr(0, head.size() - 1) : head);
    double d = 1.0;
    if (!tail.empty()) {
      if (tail.front() != '/') throw UsageError("bad angle '" + token + "'");
      d = std::stod(tail.substr(1));
    }
    return k * std::numbers::pi / d;
  } catch (const std::logic_error&) {
    throw UsageError("bad angle '" + token + "'");
  }
}

std::vector<double> parse_angles(const std::string& text, std::size_t expected,
                                 const std::vector<double>& fallback) {
  if (text.empty()) return fallback;
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_angle(token));
  if (out.size() != expected) {
    throw UsageError("expected " + std::to_string(expected) + " comma-separated angles, got " +
                     std::to_string(out.size()));
  }
  return out;
}

std::vector<double> canonical_angles() {
  const auto a = nlbox::tsirelson_angles();
  return {a[0], a[1], a[2], a[3]};
}

nlbox::DensityMatrix bipartite_state(const std::string& name) {
  if (name == "singlet") return nlbox::states::singlet();
  if (name == "product") {
    const std::vector<int> bits{0, 0};
    return nlbox::states::basis(bits);
  }
  if (name == "mixed") return nlbox::states::maximally_mixed(2);
  throw UsageError("unknown bipartite state '" + name + "' (singlet, product, mixed)");
}

nlbox::Behavior load_behavior(const Options& o) {
  if (o.behavior_in.empty()) throw UsageError("--behavior-in is required for a file resource");
  std::ifstream in(o.behavior_in);
  if (!in) throw UsageError("cannot read " + o.behavior_in);
  try {
    return nlbox::behavior_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad behavior file: ") + e.what());
  } catch (const nlbox::Error& e) {
    throw UsageError(std::string("bad behavior file: ") + e.what());
  }
}

void check_unit(double e, const char* flag) {
  if (!(e >= 0.0 && e <= 1.0)) throw UsageError(std::string(flag) + " must be in [0, 1]");
}

// Named two-box resources shared by `chsh` and `ic`.
nlbox::Behavior named_behavior(const std::string& name, const Options& o) {
  if (name == "pr") return nlbox::pr_box();
  if (name == "isotropic") {
    check_unit(o.e0, "--e0");
    check_unit(o.e1.value_or(o.e0), "--e1");
    return nlbox::isotropic_box(o.e0, o.e1.value_or(o.e0));
  }
  if (name == "uniform") return nlbox::isotropic_box(0.0);
  if (name == "local") {
    const std::vector<nlbox::LocalStrategy> zero{{2, {0, 0}}, {2, {0, 0}}};
    return nlbox::local_deterministic(zero);
  }
  if (name == "singlet" || name == "product" || name == "mixed") {
    const auto a = parse_angles(o.angles, 4, canonical_angles());
    const std::vector<double> a0{a[0], a[1]}, a1{a[2], a[3]};
    const std::vector<nlbox::MeasurementSet> parties{nlbox::planar_measurements(a0),
                                                     nlbox::planar_measurements(a1)};
    const std::vector<std::size_t> dims{2, 2};
    return nlbox::from_quantum(bipartite_state(name), parties, dims);
  }
  if (name == "file") return load_behavior(o);
  throw UsageError("unknown resource '" + name + "' (pr, isotropic, uniform, local, singlet, product, mixed, file)");
}

void write_behavior(const Options& o, const nlbox::Behavior& b) {
  if (o.behavior_out.empty()) return;
  std::ofstream out(o.behavior_out);
  if (!out) throw UsageError("cannot write " + o.behavior_out);
  out << nlbox::to_json(b).dump(2) << "\n";
}

Json base_report(const std::string& experiment, const Options& o) {
  return {{"experiment", experiment}, {"version", nlbox::kVersion}, {"seed", o.seed}, {"config", config_json(o)}};
}

Json pairing_json(const nlbox::ChshPairing& p) {
  return {{"box_a", p.box_a}, {"box_b", p.box_b}, {"inputs_a", p.inputs_a}, {"inputs_b", p.inputs_b}};
}

Json run_chsh(const Options& o) {
  const nlbox::Behavior b = named_behavior(o.box.empty() ? "pr" : o.box, o);
  if (b.num_boxes() != 2) throw UsageError("chsh needs a two-box behavior");
  write_behavior(o, b);
  const double v = nlbox::chsh(b);
  Json r = base_report("bell chsh", o);
  r["convention"] = kConvention;
  r["pairing"] = pairing_json({});
  r["value"] = v;
  r["bound"] = nlbox::kTsirelsonBound;
  r["pass"] = std::abs(v) <= nlbox::kTsirelsonBound + nlbox::kChshTolerance;
  r["classical_bound"] = nlbox::kClassicalBound;
  r["tsirelson"] = nlbox::kTsirelsonBound;
  r["pass_classical"] = std::abs(v) <= nlbox::kClassicalBound + nlbox::kChshTolerance;
  r["pass_quantum"] = std::abs(v) <= nlbox::kTsirelsonBound + nlbox::kChshTolerance;
  r["no_signalling"] = nlbox::no_signalling_check(b).max_discrepancy;
  r["tolerance"] = nlbox::kChshTolerance;
  return r;
}

Json monogamy_json(const nlbox::MonogamyReport& m) {
  return {{"chsh_13", m.chsh_13}, {"chsh_23", m.chsh_23}, {"value", m.value}, {"bound", m.bound}, {"pass", m.pass}};
}

Json run_monogamy(const Options& o) {
  Json r = base_report("bell monogamy", o);
  r["convention"] = kConvention;
  r["pairings"] = {pairing_json(nlbox::pairing_13()), pairing_json(nlbox::pairing_23())};
  const std::string box = o.box.empty() ? "singlet13" : o.box;
  if (box == "random") {
    const std::size_t count = o.samples ? o.samples : 1000;
    const nlbox::MonogamySweep s = nlbox::monogamy_sweep(count, o.seed);
    r["instances"] = count;
    r["max_squares"] = s.max_squares;
    r["max_sum"] = s.max_sum;
    r["quantum_failures"] = s.quantum_failures;
    r["ns_failures"] = s.ns_failures;
    r["pass"] = s.quantum_failures == 0 && s.ns_failures == 0;
    return r;
  }
  nlbox::Behavior b = nlbox::pr_box();
  const std::vector<std::size_t> perm{0, 2, 1};
  if (box == "singlet13") {
    const std::vector<nlbox::DensityMatrix> f{nlbox::states::singlet(), nlbox::states::maximally_mixed(1)};
    const std::vector<std::size_t> dims{2, 2, 2};
    const auto rho = nlbox::permute_subsystems(nlbox::states::product(f), perm, dims);
    const auto a = parse_angles(o.angles, 4, canonical_angles());
    const std::vector<double> a0{a[0], a[1]}, a2{a[2], a[3]}, a1{0.0, std::numbers::pi / 2};
    const std::vector<nlbox::MeasurementSet> parties{nlbox::planar_measurements(a0), nlbox::planar_measurements(a1),
                                                     nlbox::planar_measurements(a2)};
    b = nlbox::from_quantum(rho, parties, dims);
  } else if (box == "pr13") {
    const nlbox::Behavior uniform({{2, 2}}, std::vector<double>(4, 0.5));
    b = nlbox::permute_boxes(nlbox::product(nlbox::pr_box(), uniform), perm);
  } else if (box == "file") {
    b = load_behavior(o);
  } else {
    throw UsageError("unknown monogamy box '" + box + "' (singlet13, pr13, random, file)");
  }
  if (b.num_boxes() != 3) throw UsageError("monogamy needs a three-box behavior");
  write_behavior(o, b);
  r["linear"] = monogamy_json(nlbox::monogamy_ns(b, nlbox::pairing_13(), nlbox::pairing_23()));
  r["quadratic"] = monogamy_json(nlbox::monogamy_quantum(b, nlbox::pairing_13(), nlbox::pairing_23()));
  r["pass"] = r["linear"]["pass"].get<bool>() && r["quadratic"]["pass"].get<bool>();
  r["tolerance"] = nlbox::kChshTolerance;
  return r;
}

nlbox::ICStrategy game_strategy(const Options& o) {
  const std::string resource = o.resource.empty() ? "pr" : o.resource;
  if (resource == "none") return nlbox::trivial_strategy();
  return nlbox::van_dam_strategy(named_behavior(resource, o));
}

Json ic_json(const nlbox::ICReport& ic) {
  Json r = {{"value", ic.value}, {"h_c", ic.h_c}, {"pass", ic.pass}, {"terms", ic.terms}};
  if (ic.sampled) {
    r["estimator"] = "plug-in with delete-one jackknife bias correction";
    r["samples"] = ic.samples;
    r["value_std_error"] = ic.value_std_error;
    r["h_c_std_error"] = ic.h_c_std_error;
    r["term_std_errors"] = ic.term_std_errors;
  }
  return r;
}

bool sampled_mode(const Options& o) { return !o.exact && o.samples > 0; }

Json run_ic_game(const Options& o) {
  const nlbox::ICStrategy s = game_strategy(o);
  if (!s.pairs.empty()) write_behavior(o, s.pairs.front());
  Json r = base_report("ic game", o);
  r["mode"] = sampled_mode(o) ? "sampled" : "exact";
  r.update(ic_json(sampled_mode(o) ? nlbox::ic_quantity_sampled(s, o.samples, o.seed) : nlbox::ic_quantity(s)));
  r["tolerance"] = nlbox::kIcTolerance;
  return r;
}

Json run_ic_protocol(const Options& o) {
  check_unit(o.e0, "--e0");
  const double e1 = o.e1.value_or(o.e0);
  check_unit(e1, "--e1");
  if (o.levels < 1 || o.levels > 16) throw UsageError("--levels must be in [1, 16]");
  const nlbox::ICStrategy s = nlbox::pawlowski_protocol(o.e0, e1, o.levels);
  Json r = base_report("ic protocol", o);
  r["bits"] = s.bits;
  r["address_convention"] = "most significant bit of m selects the branch at the root";
  r["formula_value"] = nlbox::pawlowski_value(o.e0, e1, o.levels);
  if (sampled_mode(o)) {
    r["mode"] = "sampled";
    r["game"] = ic_json(nlbox::ic_quantity_sampled(s, o.samples, o.seed));
    const nlbox::SuccessEstimate est = nlbox::simulate_success(s, o.samples, o.seed + 1);
    Json rows = Json::array();
    for (std::size_t m = 0; m < s.bits; ++m) {
      const double p = nlbox::pawlowski_success(o.e0, e1, o.levels, m);
      const double obs = double(est.successes[m]) / double(o.samples);
      const double sigma = std::sqrt(p * (1.0 - p) / double(o.samples));
      rows.push_back({{"address", m}, {"observed", obs}, {"predicted", p}, {"sigma", sigma},
                      {"z", sigma > 0 ? (obs - p) / sigma : 0.0}});
    }
    r["success"] = rows;
  } else {
    r["mode"] = "exact";
    try {
      r["game"] = ic_json(nlbox::ic_quantity(s));
    } catch (const nlbox::ResourceError& e) {
      throw UsageError(std::string(e.what()) + " (pass --samples for a Monte Carlo estimate)");
    }
  }
  return r;
}

Json run_ic_e12(const Options& o) {
  const double e1 = o.e1.value_or(o.e0);
  check_unit(e1, "--e1");
  check_unit(o.e2, "--e2");
  const nlbox::E12Report e = nlbox::e12_relation(e1, o.e2);
  Json r = base_report("ic e12", o);
  r["e1"] = e.e1;
  r["e2"] = e.e2;
  r["target"] = e.target;
  r["solvable"] = e.solvable;
  if (e.solvable) {
    r["e12"] = e.e12;
    r["s_direct"] = e.s_direct;
    r["s_series"] = e.s_series;
    r["s_gap"] = std::abs(e.s_direct - e.s_series);
    r["series_terms"] = e.series_terms;
  }
  r["two_e1_sq_plus_two_e2_sq"] = e.boundary;
  r["tolerance"] = 1e-12;
  return r;
}

Json run_ic_multi(const Options& o) {
  const std::map<std::string, std::function<nlbox::MultipartySystem()>> systems{
      {"ghz", nlbox::ghz_system},
      {"shared-bit", nlbox::shared_bit_system},
      {"independent", nlbox::independent_system},
      {"double-pr", nlbox::double_pr_system}};
  const std::string name = o.resource.empty() ? "ghz" : o.resource;
  const auto it = systems.find(name);
  if (it == systems.end()) {
    throw UsageError("unknown multipartite system '" + name + "' (ghz, shared-bit, independent, double-pr)");
  }
  const nlbox::MultipartySystem s = it->second();
  const nlbox::MultipartyReport f = nlbox::multipartite_ic_flawed(s);
  const nlbox::MultipartyReport c = nlbox::multipartite_ic_corrected(s);
  Json r = base_report("ic multi", o);
  r["system"] = s.name;
  r["h_c"] = f.h_c;
  r["flawed"] = {{"value", f.value}, {"terms", f.terms}, {"pass", f.pass}};
  r["corrected"] = {{"value", c.value}, {"terms", c.terms}, {"pass", c.pass},
                    {"literal_value", c.literal_value}, {"literal_pass", c.literal_pass}};
  r["tolerance"] = nlbox::kIcTolerance;
  return r;
}

Json run_ic_single_vs_sum(const Options& o) {
  const nlbox::Eq1Report e = nlbox::eq1_check(game_strategy(o));
  Json r = base_report("ic single-vs-sum", o);
  r["single_measurement"] = e.single;
  r["max_single"] = e.max_single;
  r["terms"] = e.terms;
  r["sum"] = e.sum;
  r["holds"] = e.holds;
  r["tolerance"] = nlbox::kIcTolerance;
  return r;
}

nlbox::OnticEnsemble source_ensemble(const Options& o) {
  if (o.source == "two-stage") {
    const auto a = parse_angles(o.angles, 4, canonical_angles());
    const std::vector<double> a0{a[0], a[1]}, a1{a[2], a[3]};
    const std::vector<std::size_t> dims{2, 2};
    const auto rho = bipartite_state(o.state);
    const auto m0 = nlbox::planar_measurements(a0), m1 = nlbox::planar_measurements(a1);
    if (sampled_mode(o)) return nlbox::theorem2_sampled(rho, dims, m0, m1, o.samples, o.seed);
    return nlbox::theorem2_exact(rho, dims, m0, m1);
  }
  if (o.source == "pr-witness") {
    const auto f = nlbox::cpi_feasibility(nlbox::pr_box(), nlbox::F2Family::general);
    return *f.witness;
  }
  if (o.source == "identity") return nlbox::response_ensemble(0, 1);
  if (o.source == "negation") return nlbox::response_ensemble(1, 0);
  throw UsageError("unknown ensemble source '" + o.source + "' (two-stage, pr-witness, identity, negation)");
}

Json run_cf_sample(const Options& o) {
  const nlbox::OnticEnsemble e = source_ensemble(o);
  const nlbox::Behavior b = nlbox::ensemble_to_behavior(e);
  write_behavior(o, b);
  Json r = base_report("cf sample", o);
  r["mode"] = sampled_mode(o) ? "sampled" : "exact";
  r["support"] = e.size();
  r["ensemble"] = nlbox::to_json(e);
  r["behavior"] = nlbox::to_json(b);
  return r;
}

Json run_cf_cpi(const Options& o) {
  const nlbox::OnticEnsemble e = source_ensemble(o);
  const nlbox::CpiReport c = nlbox::cpi_statistic(e);
  Json r = base_report("cf cpi", o);
  r["mode"] = sampled_mode(o) ? "sampled" : "exact";
  r["cpi"] = c.value;
  r["pass"] = c.value <= 1e-10;
  Json classes = Json::array();
  for (const auto& k : c.classes) classes.push_back({{"f2", k.f2}, {"weight", k.weight}, {"information", k.information}});
  r["classes"] = classes;
  r["tolerance"] = 1e-10;
  return r;
}

Json loop_json(const nlbox::LoopReport& l) {
  return {{"pairs", l.pairs}, {"none", l.none}, {"unique", l.unique}, {"multiple", l.multiple},
          {"H_outcomes_given_ontic", l.h_outcomes_given_ontic}, {"H_outcomes", l.h_outcomes},
          {"I_outcomes", l.i_outcomes}};
}

Json run_cf_loop(const Options& o) {
  Json r = base_report("cf loop", o);
  if (o.source == "negation" || o.source == "identity") {
    r["pair"] = "identity x negation";
    r.update(loop_json(nlbox::loop_compose(nlbox::response_ensemble(0, 1), nlbox::response_ensemble(1, 0))));
  } else {
    const nlbox::OnticEnsemble e = source_ensemble(o);
    r["pair"] = o.source + " x " + o.source;
    r.update(loop_json(nlbox::loop_compose(e, e)));
  }
  r["contradiction_fraction"] = r["none"];
  return r;
}

Json run_cf_pr_infeasible(const Options& o) {
  nlbox::CheckOptions co;
  co.seed = o.seed;
  const nlbox::CheckResult c = nlbox::run_check(5, co);
  Json r = base_report("cf pr-infeasible", o);
  r.update(c.details);
  r["pass"] = c.pass;
  return r;
}

Json run_cf_contextuality(const Options& o) {
  const nlbox::ContextualityDemo d = nlbox::contextuality_demo();
  Json r = base_report("cf contextuality", o);
  r["ensemble_correlated"] = nlbox::to_json(d.correlated);
  r["ensemble_anticorrelated"] = nlbox::to_json(d.anticorrelated);
  r["operational_distance"] = d.operational_distance;
  r["correlation_correlated"] = d.correlation_correlated;
  r["correlation_anticorrelated"] = d.correlation_anticorrelated;
  r["correlation_difference"] = d.correlation_difference;
  r["p_B0_given_A0_correlated"] = d.conditional_correlated;
  r["p_B0_given_A0_anticorrelated"] = d.conditional_anticorrelated;
  return r;
}

Json run_suite(const Options& o) {
  if (o.suite != "paper-checks") throw UsageError("unknown suite '" + o.suite + "' (paper-checks)");
  nlbox::CheckOptions co;
  co.seed = o.seed;
  Json r = nlbox::suite_report(nlbox::run_paper_checks(co), co);
  r["config"] = config_json(o);
  return r;
}

// One CSV row per JSON leaf: slash-separated path, value.
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), out);
  } else {
    std::string v = j.is_string() ? j.get<std::string>() : j.dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      v = q + "\"";
    }
    out << path << "," << v << "\n";
  }
}

std::string render(const Json& report, const std::string& format) {
  if (format == "csv") {
    std::ostringstream out;
    out << "key,value\n";
    flatten(report, "", out);
    return out.str();
  }
  return report.dump(2) + "\n";
}

void emit(const std::string& text, const Options& o) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::path path(o.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("NLBOX_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Non-local box and information-causality laboratory", "nlbox"};
  app.set_version_flag("--version", nlbox::kVersion);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--seed", o.seed, "Seed for every sampled quantity");
  app.add_option("--samples", o.samples, "Monte Carlo sample count (selects sampled mode)");
  app.add_flag("--exact", o.exact, "Force exact enumeration");
  app.add_option("--e0", o.e0, "Correlator for box input 0");
  app.add_option("--e1", o.e1, "Correlator for box input 1 (defaults to --e0); e1 in `ic e12`");
  app.add_option("--e2", o.e2, "Second correlator for `ic e12`");
  app.add_option("--levels", o.levels, "Levels of the nested protocol (n = 2^levels bits)");
  app.add_option("--box", o.box, "Behavior for bell commands (chsh: pr, monogamy: singlet13)");
  app.add_option("--resource", o.resource, "Resource for ic commands (game, single-vs-sum: pr, multi: ghz)");
  app.add_option("--state", o.state, "Bipartite state: singlet, product, mixed");
  app.add_option("--source", o.source, "Ensemble source for cf commands");
  app.add_option("--angles", o.angles, "Comma-separated measurement angles, e.g. 0,pi/2,5pi/4,3pi/4");
  app.add_option("--output", o.output, "Report path (relative paths resolve against $NLBOX_OUTPUT_DIR)");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--behavior-in", o.behavior_in, "Behavior JSON used by --box file / --resource file");
  app.add_option("--behavior-out", o.behavior_out, "Write the behavior used to this path");

  std::map<CLI::App*, std::function<Json(const Options&)>> handlers;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Json(const Options&)> run) {
    CLI::App* sub = parent->add_subcommand(name, help);
    handlers[sub] = std::move(run);
    return sub;
  };

  CLI::App* bell = app.add_subcommand("bell", "CHSH values and monogamy bounds");
  bell->require_subcommand(1);
  leaf(bell, "chsh", "CHSH value of a two-box behavior", run_chsh);
  leaf(bell, "monogamy", "Linear and quadratic monogamy bounds", run_monogamy);
  leaf(&app, "chsh", "Alias of `bell chsh`", run_chsh);

  CLI::App* ic = app.add_subcommand("ic", "Information-causality game");
  ic->require_subcommand(1);
  leaf(ic, "game", "Two-bit game with one box pair", run_ic_game);
  leaf(ic, "protocol", "Nested protocol on 2^levels bits", run_ic_protocol);
  leaf(ic, "e12", "Correlator of the composite box", run_ic_e12);
  leaf(ic, "multi", "Multipartite definitions on a three-box system", run_ic_multi);
  leaf(ic, "single-vs-sum", "Single-measurement bound versus the game sum", run_ic_single_vs_sum);

  CLI::App* cf = app.add_subcommand("cf", "Counterfactual ensembles");
  cf->require_subcommand(1);
  leaf(cf, "sample", "Build an ontic ensemble", run_cf_sample);
  leaf(cf, "cpi", "Counterfactual parameter independence statistic", run_cf_cpi);
  leaf(cf, "loop", "Crosswise loop composition", run_cf_loop);
  leaf(cf, "pr-infeasible", "No CPI ensemble reproduces the PR box", run_cf_pr_infeasible);
  leaf(cf, "contextuality", "Operationally identical, counterfactually opposite ensembles", run_cf_contextuality);

  CLI::App* suite = leaf(&app, "suite", "Run a named check suite", run_suite);
  suite->add_option("name", o.suite, "Suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  std::function<Json(const Options&)> run;
  for (const auto& [sub, handler] : handlers) {
    if (sub->parsed()) run = handler;
  }
  if (!run) {
    std::cerr << "nlbox: no experiment selected\n";
    return kExitUsage;
  }
  try {
    emit(render(run(o), o.format), o);
  } catch (const UsageError& e) {
    std::cerr << "nlbox: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "nlbox: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
