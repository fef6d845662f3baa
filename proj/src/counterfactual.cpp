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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "nlbox/bell.hpp"
#include "nlbox/errors.hpp"
#include "nlbox/random.hpp"

namespace nlbox {
namespace {

constexpr std::size_t kMaxExactSupport = std::size_t{1} << 20;

std::size_t product_of(std::span<const std::size_t> v) {
  std::size_t p = 1;
  for (std::size_t x : v) p *= x;
  return p;
}

void require_binary_pair(std::span<const BoxSpec> boxes, const char* what) {
  if (boxes.size() != 2) throw UnsupportedError(std::string(what) + " needs a bipartite scenario");
  for (const auto& b : boxes) {
    if (b.inputs != 2 || b.outputs != 2) throw UnsupportedError(std::string(what) + " needs binary boxes");
  }
}

// Born statistics needed by both sampler modes.
struct StageTables {
  std::size_t M = 0, A = 0, G = 0, C = 0;
  std::vector<std::vector<double>> p_g;                          // [m][g]
  std::vector<std::vector<std::vector<std::vector<double>>>> p_c;  // [m][g][a][c]
};

StageTables stage_tables(const DensityMatrix& rho, std::span<const std::size_t> dims,
                               const MeasurementSet& box0, const MeasurementSet& box1) {
  if (dims.size() != 2) throw ArgumentError("the two-stage construction needs a bipartite state");
  if (dims[0] * dims[1] != rho.dim()) throw ArgumentError("factor dimensions do not match the state");
  if (box0.empty() || box1.empty()) throw ArgumentError("empty measurement set");
  StageTables t;
  t.M = box0.size();
  t.A = box1.size();
  t.G = box0.front().outcomes();
  t.C = box1.front().outcomes();
  for (const auto& m : box0) {
    if (m.dim() != dims[0] || m.outcomes() != t.G) throw ArgumentError("box 0 measurements are inconsistent");
  }
  for (const auto& m : box1) {
    if (m.dim() != dims[1] || m.outcomes() != t.C) throw ArgumentError("box 1 measurements are inconsistent");
  }
  const CMatrix id0 = CMatrix::Identity(dims[0], dims[0]);
  const CMatrix id1 = CMatrix::Identity(dims[1], dims[1]);
  t.p_g.assign(t.M, std::vector<double>(t.G, 0.0));
  t.p_c.assign(t.M, std::vector(t.G, std::vector(t.A, std::vector<double>(t.C, 0.0))));
  for (std::size_t m = 0; m < t.M; ++m) {
    for (std::size_t g = 0; g < t.G; ++g) {
      const std::vector<CMatrix> e{box0[m].effect(g), id1};
      t.p_g[m][g] = born(rho, e);
      if (t.p_g[m][g] <= 1e-12) {
        t.p_g[m][g] = 0.0;
        continue;
      }
      const DensityMatrix post = post_measurement(rho, tensor(box0[m].kraus(g), id1));
      for (std::size_t a = 0; a < t.A; ++a) {
        for (std::size_t c = 0; c < t.C; ++c) {
          const std::vector<CMatrix> f{id0, box1[a].effect(c)};
          t.p_c[m][g][a][c] = born(post, f);
        }
      }
    }
  }
  return t;
}

Assignment stage_assignment(const StageTables& t, std::span<const std::size_t> g,
                               std::span<const std::size_t> c) {
  Assignment s;
  s.maps.assign(2, std::vector<std::size_t>(t.M * t.A));
  for (std::size_t m = 0; m < t.M; ++m) {
    for (std::size_t a = 0; a < t.A; ++a) {
      s.maps[0][m * t.A + a] = g[m];
      s.maps[1][m * t.A + a] = c[m * t.A + a];
    }
  }
  return s;
}

std::vector<BoxSpec> stage_boxes(const StageTables& t) { return {{t.M, t.G}, {t.A, t.C}}; }

}  // namespace

Assignment local_assignment(std::span<const BoxSpec> boxes, const std::vector<std::vector<std::size_t>>& local) {
  if (local.size() != boxes.size()) throw ArgumentError("one local map per box is required");
  std::vector<std::size_t> radices;
  for (const auto& b : boxes) radices.push_back(b.inputs);
  const std::size_t joint = product_of(radices);
  Assignment s;
  s.maps.assign(boxes.size(), std::vector<std::size_t>(joint));
  for (std::size_t x = 0; x < joint; ++x) {
    const auto xs = decode_digits(x, radices);
    for (std::size_t k = 0; k < boxes.size(); ++k) {
      if (local[k].size() != boxes[k].inputs) throw ArgumentError("local map must cover the input alphabet");
      s.maps[k][x] = local[k][xs[k]];
    }
  }
  return s;
}

OnticEnsemble::OnticEnsemble(std::vector<BoxSpec> boxes, std::vector<Assignment> support,
                             std::vector<double> weights)
    : boxes_(std::move(boxes)), support_(std::move(support)), weights_(std::move(weights)) {
  if (boxes_.empty()) throw ArgumentError("ensemble needs at least one box");
  if (support_.empty()) throw ArgumentError("ensemble support is empty");
  if (support_.size() != weights_.size()) throw ArgumentError("one weight per assignment is required");
  const std::size_t joint = joint_inputs();
  for (const auto& s : support_) {
    if (s.maps.size() != boxes_.size()) throw ArgumentError("assignment must give a map for every box");
    for (std::size_t k = 0; k < boxes_.size(); ++k) {
      if (s.maps[k].size() != joint) throw ArgumentError("assignment map must cover every joint input");
      for (std::size_t y : s.maps[k]) {
        if (y >= boxes_[k].outputs) throw ArgumentError("assignment output out of range");
      }
    }
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw DomainError("negative ensemble weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("ensemble weights do not sum to one");
}

std::size_t OnticEnsemble::joint_inputs() const {
  std::size_t p = 1;
  for (const auto& b : boxes_) p *= b.inputs;
  return p;
}

Behavior ensemble_to_behavior(const OnticEnsemble& e) {
  std::vector<std::size_t> out_r;
  for (const auto& b : e.boxes()) out_r.push_back(b.outputs);
  const std::size_t ni = e.joint_inputs(), no = product_of(out_r);
  std::vector<double> table(ni * no, 0.0);
  std::vector<std::size_t> ys(e.boxes().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& s = e.support()[i];
    for (std::size_t x = 0; x < ni; ++x) {
      for (std::size_t k = 0; k < ys.size(); ++k) ys[k] = s.maps[k][x];
      table[x * no + encode_digits(ys, out_r)] += e.weights()[i];
    }
  }
  return Behavior(e.boxes(), std::move(table));
}

OnticEnsemble theorem2_exact(const DensityMatrix& rho, std::span<const std::size_t> dims,
                             const MeasurementSet& box0, const MeasurementSet& box1) {
  const StageTables t = stage_tables(rho, dims, box0, box1);
  const std::vector<std::size_t> g_r(t.M, t.G);
  const std::vector<std::size_t> c_r(t.M * t.A, t.C);
  const double g_count = std::pow(double(t.G), double(t.M));
  const double c_count = std::pow(double(t.C), double(t.M * t.A));
  if (g_count * c_count > double(kMaxExactSupport)) {
    throw ResourceError("exact enumeration exceeds 2^20 assignments; use sampled mode");
  }
  std::vector<Assignment> support;
  std::vector<double> weights;
  for (std::size_t gi = 0; gi < product_of(g_r); ++gi) {
    const auto g = decode_digits(gi, g_r);
    double w1 = 1.0;
    for (std::size_t m = 0; m < t.M; ++m) w1 *= t.p_g[m][g[m]];
    if (w1 <= 0.0) continue;
    for (std::size_t ci = 0; ci < product_of(c_r); ++ci) {
      const auto c = decode_digits(ci, c_r);
      double w = w1;
      for (std::size_t m = 0; m < t.M && w > 0.0; ++m) {
        for (std::size_t a = 0; a < t.A; ++a) w *= t.p_c[m][g[m]][a][c[m * t.A + a]];
      }
      if (w <= 0.0) continue;
      support.push_back(stage_assignment(t, g, c));
      weights.push_back(w);
    }
  }
  // Born weights are clamped individually; renormalize the product tree.
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return OnticEnsemble(stage_boxes(t), std::move(support), std::move(weights));
}

OnticEnsemble theorem2_sampled(const DensityMatrix& rho, std::span<const std::size_t> dims,
                               const MeasurementSet& box0, const MeasurementSet& box1,
                               std::uint64_t samples, std::uint64_t seed, Execution execution) {
  if (samples == 0) throw ArgumentError("sample count must be positive");
  const StageTables t = stage_tables(rho, dims, box0, box1);
  std::vector<std::size_t> radices(t.M, t.G);
  radices.insert(radices.end(), t.M * t.A, t.C);
  double code_space = 1.0;
  for (std::size_t r : radices) code_space *= double(r);
  if (code_space > 9.0e18) throw UnsupportedError("assignment space too large to encode");

  const std::uint64_t blocks = (samples + kTrialsPerStream - 1) / kTrialsPerStream;
  std::vector<std::map<std::uint64_t, std::uint64_t>> partial(blocks);
  for_each_index(blocks, execution, [&](std::size_t block) {
    StreamRng rng(seed, block);
    const std::uint64_t begin = block * kTrialsPerStream;
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kTrialsPerStream);
    std::vector<std::size_t> digits(radices.size());
    auto& counts = partial[block];
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      for (std::size_t m = 0; m < t.M; ++m) digits[m] = rng.categorical(t.p_g[m]);
      for (std::size_t m = 0; m < t.M; ++m) {
        for (std::size_t a = 0; a < t.A; ++a) {
          digits[t.M + m * t.A + a] = rng.categorical(t.p_c[m][digits[m]][a]);
        }
      }
      ++counts[encode_digits(digits, radices)];
    }
  });
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& p : partial) {
    for (const auto& [code, n] : p) counts[code] += n;
  }
  std::vector<Assignment> support;
  std::vector<double> weights;
  for (const auto& [code, n] : counts) {
    const auto digits = decode_digits(code, radices);
    const std::span<const std::size_t> all(digits);
    support.push_back(stage_assignment(t, all.first(t.M), all.subspan(t.M)));
    weights.push_back(double(n) / double(samples));
  }
  return OnticEnsemble(stage_boxes(t), std::move(support), std::move(weights));
}

CpiReport cpi_statistic(const OnticEnsemble& e, std::span<const double> a_weights) {
  if (e.boxes().size() != 2) throw UnsupportedError("cpi_statistic needs a bipartite ensemble");
  const std::size_t M = e.boxes()[0].inputs, A = e.boxes()[1].inputs, G = e.boxes()[0].outputs;
  std::vector<double> pa(A, 1.0 / double(A));
  if (!a_weights.empty()) {
    if (a_weights.size() != A) throw ArgumentError("one weight per value of a is required");
    pa.assign(a_weights.begin(), a_weights.end());
  }
  const std::vector<std::size_t> g_r(M, G);
  const std::size_t g_codes = product_of(g_r);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.weights()[i] > 0.0) classes[e.support()[i].maps[1]].push_back(i);
  }
  CpiReport report;
  std::vector<std::size_t> g(M);
  for (const auto& [f2, members] : classes) {
    std::vector<double> w(g_codes * A, 0.0);
    double total = 0.0;
    for (std::size_t i : members) total += e.weights()[i];
    for (std::size_t i : members) {
      const auto& f1 = e.support()[i].maps[0];
      for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t m = 0; m < M; ++m) g[m] = f1[m * A + a];
        w[encode_digits(g, g_r) * A + a] += e.weights()[i] / total * pa[a];
      }
    }
    const auto dist = JointDistribution::from_weights({{"g", g_codes}, {"a", A}}, std::move(w));
    CpiClass c;
    c.f2 = f2;
    c.weight = total;
    c.information = mutual_information(dist, {"g"}, {"a"});
    report.value = std::max(report.value, c.information);
    report.classes.push_back(std::move(c));
  }
  return report;
}

std::string to_string(F2Family family) {
  return family == F2Family::restricted ? "restricted" : "general";
}

CpiFeasibility cpi_feasibility(const Behavior& target, F2Family family) {
  require_binary_pair(target.boxes(), "cpi_feasibility");
  // Box-0 maps f1: 16 tables over (m, a). Box-1 maps f2: 16 tables over
  // (m, a), or the 4 tables depending on a alone.
  std::vector<std::vector<std::size_t>> f1s, f2s;
  for (std::size_t code = 0; code < 16; ++code) {
    std::vector<std::size_t> f(4);
    for (std::size_t x = 0; x < 4; ++x) f[x] = code >> x & 1;
    f1s.push_back(f);
    const bool a_only = f[0] == f[2] && f[1] == f[3];
    if (family == F2Family::general || a_only) f2s.push_back(f);
  }
  const std::size_t n1 = f1s.size(), n2 = f2s.size(), vars = n1 * n2;
  const std::size_t rows = 16 + n2 * 4;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, vars);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t col = i * n2 + j;
      for (std::size_t x = 0; x < 4; ++x) A(x * 4 + f1s[i][x] * 2 + f2s[j][x], col) = 1.0;
      // g vector (f1(0, a), f1(1, a)) for a = 0 and a = 1.
      const std::size_t g_a0 = f1s[i][0] * 2 + f1s[i][2];
      const std::size_t g_a1 = f1s[i][1] * 2 + f1s[i][3];
      A(16 + j * 4 + g_a0, col) += 1.0;
      A(16 + j * 4 + g_a1, col) -= 1.0;
    }
  }
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) b[x * 4 + y] = target.at(x, y);
  }
  CpiFeasibility out;
  out.family = family;
  out.variables = vars;
  out.constraints = rows;
  const lp::Result r = lp::feasible(A, b);
  out.feasible = r.status == lp::Status::optimal;
  if (!out.feasible) {
    out.certificate = lp::check_farkas(A, b, r.farkas);
    return out;
  }
  std::vector<Assignment> support;
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t col = 0; col < vars; ++col) {
    if (r.x[col] > 1e-12) total += r.x[col];
  }
  for (std::size_t col = 0; col < vars; ++col) {
    if (r.x[col] <= 1e-12) continue;
    support.push_back(Assignment{{f1s[col / n2], f2s[col % n2]}});
    weights.push_back(r.x[col] / total);
  }
  OnticEnsemble witness(target.boxes(), std::move(support), std::move(weights));
  out.witness_behavior_error = max_row_distance(ensemble_to_behavior(witness), target);
  out.witness_cpi = cpi_statistic(witness).value;
  out.witness = std::move(witness);
  return out;
}

PrInfeasibility pr_cpi_infeasible() {
  PrInfeasibility out;
  // Logical route: for every restricted f2 (a function h of a), collect the
  // box-0 maps consistent with g xor h(a) = m a at every input. CPI needs the
  // g vectors seen at a = 0 and a = 1 to share a distribution, impossible
  // when their supports are disjoint.
  std::size_t classes = 0;
  for (std::size_t h = 0; h < 4; ++h) {
    std::vector<std::size_t> at0, at1;
    for (std::size_t code = 0; code < 16; ++code) {
      bool ok = true;
      for (std::size_t m = 0; m < 2 && ok; ++m) {
        for (std::size_t a = 0; a < 2 && ok; ++a) {
          const std::size_t g = code >> (m * 2 + a) & 1;
          ok = (g ^ (h >> a & 1)) == (m & a);
        }
      }
      if (!ok) continue;
      ++out.compatible;
      at0.push_back((code >> 0 & 1) * 2 + (code >> 2 & 1));
      at1.push_back((code >> 1 & 1) * 2 + (code >> 3 & 1));
    }
    if (at0.empty()) continue;
    ++classes;
    bool disjoint = true;
    for (std::size_t v : at0) disjoint = disjoint && std::find(at1.begin(), at1.end(), v) == at1.end();
    if (disjoint) ++out.contradicted;
  }
  out.logical = classes > 0 && out.contradicted == classes;
  const Behavior pr = pr_box();
  out.restricted = cpi_feasibility(pr, F2Family::restricted);
  out.general = cpi_feasibility(pr, F2Family::general);
  out.control_uniform = cpi_feasibility(isotropic_box(0.0), F2Family::restricted);
  const double e = 1.0 / std::numbers::sqrt2;
  out.control_tsirelson = cpi_feasibility(isotropic_box(e), F2Family::general);
  const OnticEnsemble q = tsirelson_two_stage_ensemble();
  out.tsirelson_two_stage_error = max_row_distance(ensemble_to_behavior(q), isotropic_box(e));
  out.tsirelson_two_stage_cpi = cpi_statistic(q).value;
  out.infeasible = out.logical && !out.restricted.feasible && out.restricted.certificate.valid;
  return out;
}

LoopReport loop_compose(const OnticEnsemble& ex, const OnticEnsemble& ey) {
  require_binary_pair(ex.boxes(), "loop_compose");
  require_binary_pair(ey.boxes(), "loop_compose");
  LoopReport r;
  r.pairs = ex.size() * ey.size();
  const std::size_t cells = r.pairs * 16;
  if (cells > (std::size_t{1} << 24)) throw ResourceError("loop bookkeeping table too large");
  std::vector<double> w(cells, 0.0);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const auto& gx = ex.support()[i].maps[0];
    for (std::size_t j = 0; j < ey.size(); ++j) {
      const auto& gy = ey.support()[j].maps[0];
      const double pair_weight = ex.weights()[i] * ey.weights()[j] / 4.0;
      for (std::size_t mx = 0; mx < 2; ++mx) {
        for (std::size_t my = 0; my < 2; ++my) {
          std::size_t solutions = 0, sx = 0, sy = 0;
          for (std::size_t x = 0; x < 2; ++x) {
            for (std::size_t y = 0; y < 2; ++y) {
              if (gx[mx * 2 + y] == x && gy[my * 2 + x] == y) {
                ++solutions;
                sx = x;
                sy = y;
              }
            }
          }
          if (solutions == 0) {
            r.none += pair_weight;
          } else if (solutions == 1) {
            r.unique += pair_weight;
            w[((i * ey.size() + j) * 4 + mx * 2 + my) * 4 + sx * 2 + sy] += pair_weight;
          } else {
            r.multiple += pair_weight;
          }
        }
      }
    }
  }
  if (r.unique > 0.0) {
    const auto d = JointDistribution::from_weights(
        {{"wx", ex.size()}, {"wy", ey.size()}, {"mx", 2}, {"my", 2}, {"gx", 2}, {"gy", 2}}, std::move(w));
    r.h_outcomes_given_ontic = conditional_entropy(d, {"gx", "gy"}, {"wx", "wy", "mx", "my"});
    r.h_outcomes = entropy(d, {"gx", "gy"});
    r.i_outcomes = mutual_information(d, {"gx"}, {"gy"});
  }
  return r;
}

OnticEnsemble response_ensemble(std::size_t g_at_0, std::size_t g_at_1) {
  if (g_at_0 > 1 || g_at_1 > 1) throw ArgumentError("binary outputs expected");
  Assignment s;
  s.maps = {{g_at_0, g_at_1, g_at_0, g_at_1}, {0, 0, 0, 0}};
  return OnticEnsemble({{2, 2}, {2, 2}}, {s}, {1.0});
}

ContextualityDemo contextuality_demo() {
  const std::vector<BoxSpec> box{{2, 2}};
  ContextualityDemo d{
      OnticEnsemble(box, {Assignment{{{0, 0}}}, Assignment{{{1, 1}}}}, {0.5, 0.5}),
      OnticEnsemble(box, {Assignment{{{0, 1}}}, Assignment{{{1, 0}}}}, {0.5, 0.5}),
  };
  d.operational_distance =
      max_row_distance(ensemble_to_behavior(d.correlated), ensemble_to_behavior(d.anticorrelated));
  auto correlation = [](const OnticEnsemble& e) {
    double c = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto& f = e.support()[i].maps[0];
      c += e.weights()[i] * ((f[0] ^ f[1]) ? -1.0 : 1.0);
    }
    return c;
  };
  auto conditional = [](const OnticEnsemble& e) {
    double joint = 0.0, given = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto& f = e.support()[i].maps[0];
      if (f[0] != 0) continue;
      given += e.weights()[i];
      if (f[1] == 0) joint += e.weights()[i];
    }
    return joint / given;
  };
  d.correlation_correlated = correlation(d.correlated);
  d.correlation_anticorrelated = correlation(d.anticorrelated);
  d.correlation_difference = std::abs(d.correlation_correlated - d.correlation_anticorrelated);
  d.conditional_correlated = conditional(d.correlated);
  d.conditional_anticorrelated = conditional(d.anticorrelated);
  return d;
}

OnticEnsemble tsirelson_two_stage_ensemble() {
  const auto angles = tsirelson_angles();
  const std::vector<double> a0{angles[0], angles[1]}, a1{angles[2], angles[3]};
  const std::vector<std::size_t> dims{2, 2};
  return theorem2_exact(states::singlet(), dims, planar_measurements(a0), planar_measurements(a1));
}

}  // namespace nlbox
