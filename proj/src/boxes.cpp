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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

std::size_t product_of(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

std::size_t encode_digits(std::span<const std::size_t> digits, std::span<const std::size_t> radices) {
  if (digits.size() != radices.size()) throw ArgumentError("digit count does not match radices");
  std::size_t index = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= radices[k]) throw ArgumentError("digit out of range");
    index = index * radices[k] + digits[k];
  }
  return index;
}

std::vector<std::size_t> decode_digits(std::size_t index, std::span<const std::size_t> radices) {
  std::vector<std::size_t> d(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) {
    d[k] = index % radices[k];
    index /= radices[k];
  }
  return d;
}

Behavior::Behavior(std::vector<BoxSpec> boxes, std::vector<double> table)
    : boxes_(std::move(boxes)), table_(std::move(table)) {
  if (boxes_.empty()) throw ArgumentError("behavior needs at least one box");
  for (const auto& b : boxes_) {
    if (b.inputs == 0 || b.outputs == 0) throw ArgumentError("box alphabets must be non-empty");
    joint_inputs_ *= b.inputs;
    joint_outputs_ *= b.outputs;
  }
  if (table_.size() != joint_inputs_ * joint_outputs_) {
    throw ArgumentError("behavior table has length " + std::to_string(table_.size()) + ", expected " +
                        std::to_string(joint_inputs_ * joint_outputs_));
  }
  for (std::size_t x = 0; x < joint_inputs_; ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < joint_outputs_; ++y) {
      const double p = at(x, y);
      if (!(p >= -kRowTolerance)) throw DomainError("negative or NaN behavior entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) {
      throw DomainError("behavior row " + std::to_string(x) + " sums to " + std::to_string(sum));
    }
  }
  for (double& p : table_) p = std::max(p, 0.0);
}

std::vector<std::size_t> Behavior::input_radices() const {
  std::vector<std::size_t> r;
  for (const auto& b : boxes_) r.push_back(b.inputs);
  return r;
}

std::vector<std::size_t> Behavior::output_radices() const {
  std::vector<std::size_t> r;
  for (const auto& b : boxes_) r.push_back(b.outputs);
  return r;
}

std::size_t Behavior::encode_inputs(std::span<const std::size_t> inputs) const {
  return encode_digits(inputs, input_radices());
}
std::size_t Behavior::encode_outputs(std::span<const std::size_t> outputs) const {
  return encode_digits(outputs, output_radices());
}
std::vector<std::size_t> Behavior::decode_inputs(std::size_t joint) const {
  return decode_digits(joint, input_radices());
}
std::vector<std::size_t> Behavior::decode_outputs(std::size_t joint) const {
  return decode_digits(joint, output_radices());
}

double Behavior::prob(std::span<const std::size_t> outputs, std::span<const std::size_t> inputs) const {
  return at(encode_inputs(inputs), encode_outputs(outputs));
}

Behavior pr_box() { return xor_box(1.0, 1.0); }

Behavior isotropic_box(double e) { return isotropic_box(e, e); }

Behavior isotropic_box(double e0, double e1) {
  if (!(e0 >= 0.0 && e0 <= 1.0) || !(e1 >= 0.0 && e1 <= 1.0)) {
    throw DomainError("isotropic correlator outside [0, 1]");
  }
  return xor_box(e0, e1);
}

Behavior xor_box(double e0, double e1) {
  if (!(std::abs(e0) <= 1.0) || !(std::abs(e1) <= 1.0)) throw DomainError("correlator outside [-1, 1]");
  std::vector<double> t(16);
  for (std::size_t m = 0; m < 2; ++m) {
    const double e = m == 0 ? e0 : e1;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t g = 0; g < 2; ++g) {
        for (std::size_t c = 0; c < 2; ++c) {
          const bool success = (g ^ c) == (m & a);
          t[(m * 2 + a) * 4 + g * 2 + c] = success ? (1.0 + e) / 4.0 : (1.0 - e) / 4.0;
        }
      }
    }
  }
  return Behavior({{2, 2}, {2, 2}}, std::move(t));
}

Behavior from_quantum(const DensityMatrix& rho, std::span<const MeasurementSet> parties,
                      std::span<const std::size_t> dims) {
  if (parties.size() != dims.size()) throw ArgumentError("one measurement set per subsystem");
  std::vector<BoxSpec> boxes;
  for (std::size_t k = 0; k < parties.size(); ++k) {
    if (parties[k].empty()) throw ArgumentError("empty measurement set");
    const std::size_t outs = parties[k].front().outcomes();
    for (const auto& m : parties[k]) {
      if (m.outcomes() != outs) throw ArgumentError("measurements of a party differ in outcome count");
      if (m.dim() != dims[k]) throw ArgumentError("measurement dimension does not match subsystem");
    }
    boxes.push_back({parties[k].size(), outs});
  }
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != rho.dim()) throw ArgumentError("subsystem dimensions do not match the state");

  std::vector<std::size_t> in_r, out_r;
  for (const auto& b : boxes) {
    in_r.push_back(b.inputs);
    out_r.push_back(b.outputs);
  }
  const std::size_t ni = product_of(in_r), no = product_of(out_r);
  std::vector<double> table(ni * no);
  std::vector<CMatrix> effects(parties.size());
  for (std::size_t x = 0; x < ni; ++x) {
    const auto xs = decode_digits(x, in_r);
    for (std::size_t y = 0; y < no; ++y) {
      const auto ys = decode_digits(y, out_r);
      for (std::size_t k = 0; k < parties.size(); ++k) effects[k] = parties[k][xs[k]].effect(ys[k]);
      table[x * no + y] = born(rho, effects);
    }
    // Born values are clamped individually; renormalize away the residue.
    double sum = 0.0;
    for (std::size_t y = 0; y < no; ++y) sum += table[x * no + y];
    for (std::size_t y = 0; y < no; ++y) table[x * no + y] /= sum;
  }
  return Behavior(std::move(boxes), std::move(table));
}

Behavior local_deterministic(std::span<const LocalStrategy> strategies) {
  std::vector<BoxSpec> boxes;
  for (const auto& s : strategies) {
    if (s.map.empty()) throw ArgumentError("strategy needs at least one input");
    for (std::size_t o : s.map) {
      if (o >= s.outputs) throw ArgumentError("strategy output out of range");
    }
    boxes.push_back({s.map.size(), s.outputs});
  }
  std::vector<std::size_t> in_r, out_r;
  for (const auto& b : boxes) {
    in_r.push_back(b.inputs);
    out_r.push_back(b.outputs);
  }
  const std::size_t ni = product_of(in_r), no = product_of(out_r);
  std::vector<double> table(ni * no, 0.0);
  for (std::size_t x = 0; x < ni; ++x) {
    const auto xs = decode_digits(x, in_r);
    std::vector<std::size_t> ys(strategies.size());
    for (std::size_t k = 0; k < strategies.size(); ++k) ys[k] = strategies[k].map[xs[k]];
    table[x * no + encode_digits(ys, out_r)] = 1.0;
  }
  return Behavior(std::move(boxes), std::move(table));
}

Behavior mix(std::span<const Behavior> behaviors, std::span<const double> weights) {
  if (behaviors.empty() || behaviors.size() != weights.size()) {
    throw ArgumentError("mix needs one weight per behavior");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ArgumentError("mixture weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kRowTolerance) throw ArgumentError("mixture weights must sum to 1");
  std::vector<double> table(behaviors.front().table().size(), 0.0);
  for (std::size_t k = 0; k < behaviors.size(); ++k) {
    if (behaviors[k].boxes() != behaviors.front().boxes()) {
      throw ArgumentError("mixed behaviors must have identical box alphabets");
    }
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += weights[k] * behaviors[k].table()[i];
  }
  return Behavior(behaviors.front().boxes(), std::move(table));
}

Behavior product(const Behavior& a, const Behavior& b) {
  std::vector<BoxSpec> boxes = a.boxes();
  boxes.insert(boxes.end(), b.boxes().begin(), b.boxes().end());
  const std::size_t ni = a.joint_inputs() * b.joint_inputs();
  const std::size_t no = a.joint_outputs() * b.joint_outputs();
  std::vector<double> table(ni * no);
  for (std::size_t xa = 0; xa < a.joint_inputs(); ++xa) {
    for (std::size_t xb = 0; xb < b.joint_inputs(); ++xb) {
      const std::size_t x = xa * b.joint_inputs() + xb;
      for (std::size_t ya = 0; ya < a.joint_outputs(); ++ya) {
        for (std::size_t yb = 0; yb < b.joint_outputs(); ++yb) {
          table[x * no + ya * b.joint_outputs() + yb] = a.at(xa, ya) * b.at(xb, yb);
        }
      }
    }
  }
  return Behavior(std::move(boxes), std::move(table));
}

Behavior permute_boxes(const Behavior& b, std::span<const std::size_t> perm) {
  const std::size_t n = b.num_boxes();
  std::vector<std::size_t> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  bool ok = check.size() == n;
  for (std::size_t k = 0; ok && k < check.size(); ++k) ok = check[k] == k;
  if (!ok) throw ArgumentError("not a permutation of the boxes");
  std::vector<BoxSpec> boxes;
  std::vector<std::size_t> in_r, out_r;
  for (std::size_t p : perm) {
    boxes.push_back(b.boxes()[p]);
    in_r.push_back(b.boxes()[p].inputs);
    out_r.push_back(b.boxes()[p].outputs);
  }
  std::vector<double> table(b.table().size());
  std::vector<std::size_t> xs(n), ys(n);
  for (std::size_t x = 0; x < b.joint_inputs(); ++x) {
    const auto old_x = b.decode_inputs(x);
    for (std::size_t k = 0; k < n; ++k) xs[k] = old_x[perm[k]];
    const std::size_t nx = encode_digits(xs, in_r);
    for (std::size_t y = 0; y < b.joint_outputs(); ++y) {
      const auto old_y = b.decode_outputs(y);
      for (std::size_t k = 0; k < n; ++k) ys[k] = old_y[perm[k]];
      table[nx * b.joint_outputs() + encode_digits(ys, out_r)] = b.at(x, y);
    }
  }
  return Behavior(std::move(boxes), std::move(table));
}

Behavior marginal(const Behavior& b, std::span<const std::size_t> keep,
                  std::span<const std::size_t> context) {
  const std::size_t n = b.num_boxes();
  if (context.size() != n) throw ArgumentError("context must give an input for every box");
  if (keep.empty()) throw ArgumentError("marginal needs at least one box");
  std::vector<bool> kept(n, false);
  std::vector<BoxSpec> boxes;
  std::vector<std::size_t> in_r, out_r;
  for (std::size_t k : keep) {
    if (k >= n || kept[k]) throw ArgumentError("invalid box list for marginal");
    kept[k] = true;
    boxes.push_back(b.boxes()[k]);
    in_r.push_back(b.boxes()[k].inputs);
    out_r.push_back(b.boxes()[k].outputs);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!kept[k] && context[k] >= b.boxes()[k].inputs) throw ArgumentError("context input out of range");
  }
  const std::size_t ni = product_of(in_r), no = product_of(out_r);
  std::vector<double> table(ni * no, 0.0);
  std::vector<std::size_t> full_x(context.begin(), context.end());
  std::vector<std::size_t> ys(keep.size());
  for (std::size_t x = 0; x < ni; ++x) {
    const auto xs = decode_digits(x, in_r);
    for (std::size_t k = 0; k < keep.size(); ++k) full_x[keep[k]] = xs[k];
    const std::size_t fx = b.encode_inputs(full_x);
    for (std::size_t y = 0; y < b.joint_outputs(); ++y) {
      const auto fy = b.decode_outputs(y);
      for (std::size_t k = 0; k < keep.size(); ++k) ys[k] = fy[keep[k]];
      table[x * no + encode_digits(ys, out_r)] += b.at(fx, y);
    }
  }
  return Behavior(std::move(boxes), std::move(table));
}

Behavior marginal(const Behavior& b, std::span<const std::size_t> keep) {
  const std::vector<std::size_t> context(b.num_boxes(), 0);
  return marginal(b, keep, context);
}

double max_row_distance(const Behavior& a, const Behavior& b) {
  if (a.boxes() != b.boxes()) throw ArgumentError("behaviors have different box alphabets");
  double worst = 0.0;
  for (std::size_t x = 0; x < a.joint_inputs(); ++x) {
    double tv = 0.0;
    for (std::size_t y = 0; y < a.joint_outputs(); ++y) tv += std::abs(a.at(x, y) - b.at(x, y));
    worst = std::max(worst, tv / 2.0);
  }
  return worst;
}

NoSignallingReport no_signalling_check(const Behavior& b, double tolerance) {
  const std::size_t n = b.num_boxes();
  NoSignallingReport report;
  report.per_box.assign(n, 0.0);
  if (n < 2) return report;
  const auto in_r = b.input_radices();
  const auto out_r = b.output_radices();
  // Every proper, non-empty subset S of boxes: the marginal of S's outputs must
  // not depend on the inputs of the complement.
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> sub_out_r;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) sub_out_r.push_back(out_r[k]);
    }
    const std::size_t sub_outs = product_of(sub_out_r);
    // marginals[x] for every joint input x
    std::vector<std::vector<double>> marg(b.joint_inputs(), std::vector<double>(sub_outs, 0.0));
    std::vector<std::size_t> ys;
    for (std::size_t x = 0; x < b.joint_inputs(); ++x) {
      for (std::size_t y = 0; y < b.joint_outputs(); ++y) {
        const auto fy = decode_digits(y, out_r);
        ys.clear();
        for (std::size_t k = 0; k < n; ++k) {
          if (mask >> k & 1) ys.push_back(fy[k]);
        }
        marg[x][encode_digits(ys, sub_out_r)] += b.at(x, y);
      }
    }
    double worst = 0.0;
    for (std::size_t x1 = 0; x1 < b.joint_inputs(); ++x1) {
      const auto d1 = decode_digits(x1, in_r);
      for (std::size_t x2 = x1 + 1; x2 < b.joint_inputs(); ++x2) {
        const auto d2 = decode_digits(x2, in_r);
        bool same_s = true;
        for (std::size_t k = 0; k < n && same_s; ++k) {
          if ((mask >> k & 1) && d1[k] != d2[k]) same_s = false;
        }
        if (!same_s) continue;
        double tv = 0.0;
        for (std::size_t y = 0; y < sub_outs; ++y) tv += std::abs(marg[x1][y] - marg[x2][y]);
        worst = std::max(worst, tv / 2.0);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) report.per_box[k] = std::max(report.per_box[k], worst);
    }
  }
  report.max_discrepancy = *std::max_element(report.per_box.begin(), report.per_box.end());
  report.pass = report.max_discrepancy <= tolerance;
  return report;
}

Behavior wire(const Behavior& first, const Behavior& second, std::span<const Connection> connections) {
  const std::size_t n1 = first.num_boxes(), n2 = second.num_boxes();
  std::vector<int> source(n2, -1);
  for (const auto& c : connections) {
    if (c.from_stage != Stage::first || c.to_stage != Stage::second) {
      throw ArgumentError("cyclic wiring: connections must run from the first stage to the second");
    }
    if (c.from_box >= n1 || c.to_box >= n2) throw ArgumentError("connection refers to a missing box");
    if (source[c.to_box] >= 0) throw ArgumentError("box input wired twice");
    if (first.boxes()[c.from_box].outputs != second.boxes()[c.to_box].inputs) {
      throw ArgumentError("wired output and input alphabets differ");
    }
    source[c.to_box] = static_cast<int>(c.from_box);
  }
  std::vector<BoxSpec> boxes = first.boxes();
  for (std::size_t k = 0; k < n2; ++k) {
    BoxSpec s = second.boxes()[k];
    if (source[k] >= 0) s.inputs = 1;
    boxes.push_back(s);
  }
  std::vector<std::size_t> in_r, out_r;
  for (const auto& s : boxes) {
    in_r.push_back(s.inputs);
    out_r.push_back(s.outputs);
  }
  const std::size_t ni = product_of(in_r), no = product_of(out_r);
  std::vector<double> table(ni * no, 0.0);
  std::vector<std::size_t> x2(n2);
  for (std::size_t x = 0; x < ni; ++x) {
    const auto xs = decode_digits(x, in_r);
    const std::size_t x1 = encode_digits(std::span(xs).first(n1), first.input_radices());
    for (std::size_t y1 = 0; y1 < first.joint_outputs(); ++y1) {
      const double p1 = first.at(x1, y1);
      if (p1 == 0.0) continue;
      const auto o1 = first.decode_outputs(y1);
      for (std::size_t k = 0; k < n2; ++k) {
        x2[k] = source[k] >= 0 ? o1[static_cast<std::size_t>(source[k])] : xs[n1 + k];
      }
      const std::size_t jx2 = second.encode_inputs(x2);
      for (std::size_t y2 = 0; y2 < second.joint_outputs(); ++y2) {
        table[x * no + y1 * second.joint_outputs() + y2] += p1 * second.at(jx2, y2);
      }
    }
  }
  return Behavior(std::move(boxes), std::move(table));
}

}  // namespace nlbox
