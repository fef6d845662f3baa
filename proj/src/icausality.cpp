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

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nlbox/errors.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/random.hpp"

namespace nlbox {
namespace {

std::string bit_label(std::size_t x) { return "a" + std::to_string(x); }

Labels bit_labels(std::size_t n) {
  Labels out;
  for (std::size_t x = 0; x < n; ++x) out.push_back(bit_label(x));
  return out;
}

void validate(const ICStrategy& s) {
  if (s.bits == 0) throw ArgumentError("the game needs at least one bit");
  if (s.message_cardinality == 0) throw ArgumentError("empty message alphabet");
  if (!s.message || !s.guess || !s.bob_inputs || (!s.pairs.empty() && !s.alice_input)) {
    throw ArgumentError("strategy is missing an encoder or decoder");
  }
  for (const auto& p : s.pairs) {
    if (p.num_boxes() != 2) throw ArgumentError("every resource must be a box pair");
  }
}

std::size_t bob_output_codes(const ICStrategy& s) {
  std::size_t b = 1;
  for (const auto& p : s.pairs) b *= p.boxes()[0].outputs;
  return b;
}

std::vector<std::size_t> bob_output_radices(const ICStrategy& s) {
  std::vector<std::size_t> r;
  for (const auto& p : s.pairs) r.push_back(p.boxes()[0].outputs);
  return r;
}

std::size_t checked(std::size_t value, std::size_t limit, const char* what) {
  if (value >= limit) throw Error(std::string(what) + " out of range");
  return value;
}

// One round of the game with box outputs drawn from `rng`.
std::pair<std::size_t, std::size_t> play(const ICStrategy& s, std::span<const std::size_t> bits,
                                         std::size_t m, StreamRng& rng, std::vector<std::size_t>& alice,
                                         std::vector<std::size_t>& bob) {
  const auto bob_in = s.bob_inputs(m);
  alice.clear();
  bob.clear();
  for (std::size_t j = 0; j < s.pairs.size(); ++j) {
    const Behavior& p = s.pairs[j];
    const std::size_t x = checked(s.alice_input(j, bits, alice), p.boxes()[1].inputs, "Alice's input");
    const std::size_t y = checked(bob_in.at(j), p.boxes()[0].inputs, "Bob's input");
    const std::size_t out = rng.categorical(p.row(y * p.boxes()[1].inputs + x));
    bob.push_back(out / p.boxes()[1].outputs);
    alice.push_back(out % p.boxes()[1].outputs);
  }
  const std::size_t c = checked(s.message(bits, alice), s.message_cardinality, "message");
  const std::size_t g = checked(s.guess(m, c, bob), 2, "guess");
  return {c, g};
}

}  // namespace

JointDistribution ic_joint(const ICStrategy& s) {
  validate(s);
  const std::size_t n = s.bits;
  double rows = std::ldexp(1.0, static_cast<int>(n)) * double(n);
  for (const auto& p : s.pairs) rows *= double(p.joint_outputs());
  if (rows > double(kMaxExactRows)) throw ResourceError("exact game enumeration exceeds 2^20 rows");

  std::vector<Variable> vars;
  for (std::size_t x = 0; x < n; ++x) vars.push_back({bit_label(x), 2});
  const std::size_t B = bob_output_codes(s);
  vars.push_back({"m", n});
  vars.push_back({"c", s.message_cardinality});
  vars.push_back({"g", 2});
  vars.push_back({"b", B});
  std::vector<double> w(table_size(vars), 0.0);
  const auto b_radices = bob_output_radices(s);
  const std::vector<std::size_t> bit_radices(n, 2);

  std::vector<std::size_t> alice, bob;
  for (std::size_t ai = 0; ai < (std::size_t{1} << n); ++ai) {
    const auto bits = decode_digits(ai, bit_radices);
    for (std::size_t m = 0; m < n; ++m) {
      const auto bob_in = s.bob_inputs(m);
      const double base = 1.0 / double(std::size_t{1} << n) / double(n);
      // Depth-first over the pairs in Alice's order.
      auto visit = [&](auto&& self, std::size_t j, double p) -> void {
        if (j == s.pairs.size()) {
          const std::size_t c = checked(s.message(bits, alice), s.message_cardinality, "message");
          const std::size_t g = checked(s.guess(m, c, bob), 2, "guess");
          const std::size_t bcode = b_radices.empty() ? 0 : encode_digits(bob, b_radices);
          w[(((ai * n + m) * s.message_cardinality + c) * 2 + g) * B + bcode] += p;
          return;
        }
        const Behavior& pair = s.pairs[j];
        const std::size_t xa = checked(s.alice_input(j, bits, alice), pair.boxes()[1].inputs, "Alice's input");
        const std::size_t yb = checked(bob_in.at(j), pair.boxes()[0].inputs, "Bob's input");
        const auto row = pair.row(yb * pair.boxes()[1].inputs + xa);
        for (std::size_t out = 0; out < row.size(); ++out) {
          if (row[out] <= 0.0) continue;
          bob.push_back(out / pair.boxes()[1].outputs);
          alice.push_back(out % pair.boxes()[1].outputs);
          self(self, j + 1, p * row[out]);
          bob.pop_back();
          alice.pop_back();
        }
      };
      alice.clear();
      bob.clear();
      visit(visit, 0, base);
    }
  }
  return JointDistribution::from_weights(std::move(vars), std::move(w));
}

ICReport ic_quantity(const ICStrategy& s) {
  const JointDistribution d = ic_joint(s);
  ICReport r;
  r.h_c = entropy(d, {"c"});
  for (std::size_t x = 0; x < s.bits; ++x) {
    const JointDistribution dx = condition(d, {{"m", x}});
    r.terms.push_back(mutual_information(dx, {bit_label(x)}, {"g", "c"}));
    r.value += r.terms.back();
  }
  r.pass = r.value <= r.h_c + kIcTolerance;
  return r;
}

ICReport ic_quantity_sampled(const ICStrategy& s, std::uint64_t trials, std::uint64_t seed,
                             Execution execution) {
  validate(s);
  if (trials == 0) throw ArgumentError("trial count must be positive");
  const std::size_t n = s.bits, K = s.message_cardinality;
  // Per address x: counts over (a_x, c, g); plus message counts.
  const std::size_t cell = 2 * K * 2;
  const std::size_t width = n * cell + K;
  const std::uint64_t blocks = (trials + kTrialsPerStream - 1) / kTrialsPerStream;
  std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(width, 0));
  for_each_index(blocks, execution, [&](std::size_t block) {
    StreamRng rng(seed, block);
    std::vector<std::size_t> bits(n), alice, bob;
    auto& counts = partial[block];
    const std::uint64_t begin = block * kTrialsPerStream;
    const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kTrialsPerStream);
    for (std::uint64_t t = begin; t < end; ++t) {
      for (std::size_t x = 0; x < n; ++x) bits[x] = rng.next() >> 63;
      const auto m = static_cast<std::size_t>(rng.uniform() * double(n));
      const auto [c, g] = play(s, bits, m, rng, alice, bob);
      ++counts[m * cell + (bits[m] * K + c) * 2 + g];
      ++counts[n * cell + c];
    }
  });
  std::vector<std::uint64_t> counts(width, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < width; ++i) counts[i] += p[i];
  }
  ICReport r;
  r.sampled = true;
  r.samples = trials;
  const std::vector<Variable> vars{{"a", 2}, {"c", K}, {"g", 2}};
  double var = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    const std::span<const std::uint64_t> cx(counts.data() + x * cell, cell);
    std::uint64_t total = 0;
    for (auto v : cx) total += v;
    Estimate est;
    if (total > 1) est = jackknife_mutual_information(vars, cx, {"a"}, {"c", "g"});
    r.terms.push_back(est.value);
    r.term_std_errors.push_back(est.std_error);
    r.value += est.value;
    var += est.std_error * est.std_error;
  }
  r.value_std_error = std::sqrt(var);
  const Estimate hc = jackknife_entropy({{"c", K}}, std::span<const std::uint64_t>(counts).subspan(n * cell), {"c"});
  r.h_c = hc.value;
  r.h_c_std_error = hc.std_error;
  r.pass = r.value <= r.h_c + kIcTolerance;
  return r;
}

ICStrategy van_dam_strategy(const Behavior& pair) {
  if (pair.num_boxes() != 2) throw ArgumentError("van Dam wiring needs one box pair");
  for (const auto& b : pair.boxes()) {
    if (b.inputs != 2 || b.outputs != 2) throw UnsupportedError("van Dam wiring needs binary boxes");
  }
  ICStrategy s;
  s.bits = 2;
  s.pairs = {pair};
  s.alice_input = [](std::size_t, std::span<const std::size_t> a, std::span<const std::size_t>) {
    return a[0] ^ a[1];
  };
  s.message = [](std::span<const std::size_t> a, std::span<const std::size_t> o) { return a[0] ^ o[0]; };
  s.bob_inputs = [](std::size_t m) { return std::vector<std::size_t>{m}; };
  s.guess = [](std::size_t, std::size_t c, std::span<const std::size_t> b) { return c ^ b[0]; };
  return s;
}

ICStrategy trivial_strategy(std::size_t bits) {
  ICStrategy s;
  s.bits = bits;
  s.message = [](std::span<const std::size_t> a, std::span<const std::size_t>) { return a[0]; };
  s.bob_inputs = [](std::size_t) { return std::vector<std::size_t>{}; };
  s.guess = [](std::size_t, std::size_t c, std::span<const std::size_t>) { return c; };
  return s;
}

ICStrategy pawlowski_protocol(double e0, double e1, std::size_t levels) {
  if (levels == 0 || levels > 20) throw ArgumentError("levels must be in [1, 20]");
  const std::size_t n = std::size_t{1} << levels;
  // offset[l] is the index of the first pair at tree level l (0 = leaves).
  std::vector<std::size_t> offset(levels + 1, 0);
  for (std::size_t l = 0; l < levels; ++l) offset[l + 1] = offset[l] + (n >> (l + 1));
  const Behavior box = isotropic_box(e0, e1);

  ICStrategy s;
  s.bits = n;
  s.pairs.assign(n - 1, box);
  // Value carried by node (l, j): its left input value xor its box output.
  auto value = [offset](auto&& self, std::size_t l, std::size_t j, std::span<const std::size_t> a,
                        std::span<const std::size_t> o) -> std::size_t {
    const std::size_t left = l == 0 ? a[2 * j] : self(self, l - 1, 2 * j, a, o);
    return left ^ o[offset[l] + j];
  };
  auto locate = [offset, levels](std::size_t pair) {
    std::size_t l = 0;
    while (l + 1 < levels && pair >= offset[l + 1]) ++l;
    return std::pair{l, pair - offset[l]};
  };
  s.alice_input = [value, locate](std::size_t pair, std::span<const std::size_t> a,
                                  std::span<const std::size_t> o) -> std::size_t {
    const auto [l, j] = locate(pair);
    if (l == 0) return a[2 * j] ^ a[2 * j + 1];
    return value(value, l - 1, 2 * j, a, o) ^ value(value, l - 1, 2 * j + 1, a, o);
  };
  s.message = [value, levels](std::span<const std::size_t> a, std::span<const std::size_t> o) {
    return value(value, levels - 1, 0, a, o);
  };
  s.bob_inputs = [offset, levels, n](std::size_t m) {
    std::vector<std::size_t> in(n - 1, 0);
    for (std::size_t l = 0; l < levels; ++l) in[offset[l] + (m >> (l + 1))] = m >> l & 1;
    return in;
  };
  s.guess = [offset, levels](std::size_t m, std::size_t c, std::span<const std::size_t> b) {
    std::size_t g = c;
    for (std::size_t l = 0; l < levels; ++l) g ^= b[offset[l] + (m >> (l + 1))];
    return g;
  };
  return s;
}

double pawlowski_value(double e0, double e1, std::size_t levels) {
  if (!(e0 >= 0.0 && e0 <= 1.0 && e1 >= 0.0 && e1 <= 1.0)) throw DomainError("correlators must be in [0, 1]");
  if (levels == 0) throw ArgumentError("levels must be positive");
  double total = 0.0;
  double binom = 1.0;
  for (std::size_t k = 0; k <= levels; ++k) {
    const double e = std::pow(e0, double(levels - k)) * std::pow(e1, double(k));
    total += binom * one_minus_binary_entropy_of_bias(e);
    binom = binom * double(levels - k) / double(k + 1);
  }
  return total;
}

double pawlowski_success(double e0, double e1, std::size_t levels, std::size_t m) {
  const auto ones = static_cast<std::size_t>(std::popcount(m & ((std::size_t{1} << levels) - 1)));
  return 0.5 * (1.0 + std::pow(e0, double(levels - ones)) * std::pow(e1, double(ones)));
}

SuccessEstimate simulate_success(const ICStrategy& s, std::uint64_t trials_per_address, std::uint64_t seed,
                                 Execution execution) {
  validate(s);
  if (trials_per_address == 0) throw ArgumentError("trial count must be positive");
  const std::size_t n = s.bits;
  const std::uint64_t per = (trials_per_address + kTrialsPerStream - 1) / kTrialsPerStream;
  std::vector<std::uint64_t> partial(n * per, 0);
  for_each_index(n * per, execution, [&](std::size_t block) {
    const std::size_t m = block / per;
    StreamRng rng(seed, block);
    std::vector<std::size_t> bits(n), alice, bob;
    const std::uint64_t begin = (block % per) * kTrialsPerStream;
    const std::uint64_t end = std::min<std::uint64_t>(trials_per_address, begin + kTrialsPerStream);
    std::uint64_t hits = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      for (std::size_t x = 0; x < n; ++x) bits[x] = rng.next() >> 63;
      if (play(s, bits, m, rng, alice, bob).second == bits[m]) ++hits;
    }
    partial[block] = hits;
  });
  SuccessEstimate out;
  out.trials_per_address = trials_per_address;
  out.successes.assign(n, 0);
  for (std::size_t block = 0; block < partial.size(); ++block) out.successes[block / per] += partial[block];
  return out;
}

E12Report e12_relation(double e1, double e2) {
  if (!(e1 >= 0.0 && e1 <= 1.0 && e2 >= 0.0 && e2 <= 1.0)) throw DomainError("correlators must be in [0, 1]");
  E12Report r;
  r.e1 = e1;
  r.e2 = e2;
  r.target = one_minus_binary_entropy_of_bias(e1) + one_minus_binary_entropy_of_bias(e2);
  r.boundary = 2.0 * e1 * e1 + 2.0 * e2 * e2;
  if (r.target > 1.0) return r;
  r.solvable = true;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (one_minus_binary_entropy_of_bias(mid) < r.target ? lo : hi) = mid;
  }
  r.e12 = 0.5 * (lo + hi);
  r.s_direct = r.e12 * r.e12 - e1 * e1 - e2 * e2;
  // Sum until the geometric tail bound drops below 1e-15.
  const double x1 = e1 * e1, x2 = e2 * e2, x12 = r.e12 * r.e12;
  const double top = std::max({x1, x2, x12});
  double p1 = x1, p2 = x2, p12 = x12, s = 0.0;
  std::size_t q = 1;
  while (q < 100000000) {
    ++q;
    p1 *= x1;
    p2 *= x2;
    p12 *= x12;
    const double denom = double(q) * double(2 * q - 1);
    s += (p1 + p2 - p12) / denom;
    const double biggest = std::max({p1, p2, p12}) / denom;
    if (biggest == 0.0 || (top < 1.0 && biggest / (1.0 - top) < 1e-15)) break;
  }
  r.s_series = s;
  r.series_terms = q - 1;
  return r;
}

Eq1Report eq1_check(const ICStrategy& s) {
  if (s.bits > 3) throw ResourceError("eq1_check supports at most 3 bits");
  const JointDistribution d = ic_joint(s);
  Eq1Report r;
  const Labels all = bit_labels(s.bits);
  for (std::size_t q = 0; q < s.bits; ++q) {
    const JointDistribution dq = condition(d, {{"m", q}});
    r.single.push_back(mutual_information(dq, all, {"b", "c"}));
    r.terms.push_back(mutual_information(dq, {bit_label(q)}, {"b", "c"}));
    r.sum += r.terms.back();
  }
  r.max_single = *std::max_element(r.single.begin(), r.single.end());
  r.holds = r.max_single >= r.sum - kIcTolerance;
  return r;
}

JointDistribution multiparty_joint(const MultipartySystem& s) {
  const Behavior& b = s.behavior;
  if (b.num_boxes() != 3) throw ArgumentError("multipartite system needs three boxes");
  if (b.boxes()[0].inputs != s.bits || b.boxes()[1].inputs != s.bits) {
    throw ArgumentError("receivers must take one input per bit");
  }
  if (b.boxes()[0].outputs != 2 || b.boxes()[1].outputs != 2) throw UnsupportedError("receivers must be binary");
  const std::size_t n = s.bits, K = s.message_cardinality;
  std::vector<Variable> vars;
  for (std::size_t x = 0; x < n; ++x) vars.push_back({bit_label(x), 2});
  vars.push_back({"w", n});
  vars.push_back({"c", K});
  vars.push_back({"g1", 2});
  vars.push_back({"g2", 2});
  std::vector<double> w(table_size(vars), 0.0);
  const std::vector<std::size_t> bit_radices(n, 2);
  const double base = 1.0 / double(std::size_t{1} << n) / double(n);
  for (std::size_t ai = 0; ai < (std::size_t{1} << n); ++ai) {
    const auto bits = decode_digits(ai, bit_radices);
    const std::size_t xs = checked(s.sender_input(bits), b.boxes()[2].inputs, "sender input");
    for (std::size_t in = 0; in < n; ++in) {
      const std::vector<std::size_t> inputs{in, in, xs};
      const std::size_t x = b.encode_inputs(inputs);
      for (std::size_t y = 0; y < b.joint_outputs(); ++y) {
        const double p = b.at(x, y);
        if (p <= 0.0) continue;
        const auto o = b.decode_outputs(y);
        const std::size_t c = checked(s.message(bits, o[2]), K, "message");
        w[(((ai * n + in) * K + c) * 2 + o[0]) * 2 + o[1]] += base * p;
      }
    }
  }
  return JointDistribution::from_weights(std::move(vars), std::move(w));
}

MultipartyReport multipartite_ic_flawed(const MultipartySystem& s) {
  const JointDistribution d = multiparty_joint(s);
  MultipartyReport r;
  r.h_c = entropy(d, {"c"});
  for (const char* g : {"g1", "g2"}) {
    for (std::size_t x = 0; x < s.bits; ++x) {
      const JointDistribution dx = condition(d, {{"w", x}});
      r.terms.push_back(mutual_information(dx, {bit_label(x)}, {"c", g}));
      r.value += r.terms.back();
    }
  }
  r.pass = r.value <= r.h_c + kIcTolerance;
  return r;
}

MultipartyReport multipartite_ic_corrected(const MultipartySystem& s) {
  const JointDistribution d = multiparty_joint(s);
  MultipartyReport r;
  r.h_c = entropy(d, {"c"});
  for (std::size_t x = 0; x < s.bits; ++x) {
    const JointDistribution dx = condition(d, {{"w", x}});
    const Labels ax{bit_label(x)};
    const double first = mutual_information(dx, ax, {"c", "g1"});
    const double second = conditional_mutual_information(dx, ax, {"g2"}, {"c", "g1"});
    const double literal = conditional_mutual_information(dx, ax, {"c", "g2"}, {"g1"});
    r.terms.push_back(first);
    r.terms.push_back(second);
    r.value += first + second;
    r.literal_value += first + literal;
  }
  r.pass = r.value <= r.h_c + kIcTolerance;
  r.literal_pass = r.literal_value <= r.h_c + kIcTolerance;
  return r;
}

namespace {

MultipartySystem xor_message_system(std::string name, Behavior b) {
  MultipartySystem s{.name = std::move(name), .behavior = std::move(b)};
  s.sender_input = [](std::span<const std::size_t>) -> std::size_t { return 0; };
  s.message = [](std::span<const std::size_t> a, std::size_t o) { return a[0] ^ o; };
  return s;
}

}  // namespace

MultipartySystem ghz_system() {
  const Measurement z = planar_measurement(0.0);
  const std::vector<MeasurementSet> parties{{z, z}, {z, z}, {z}};
  const std::vector<std::size_t> dims{2, 2, 2};
  return xor_message_system("ghz", from_quantum(states::ghz3(), parties, dims));
}

MultipartySystem shared_bit_system() {
  std::vector<double> t(4 * 8, 0.0);
  for (std::size_t x = 0; x < 4; ++x) {
    t[x * 8 + 0] = 0.5;
    t[x * 8 + 7] = 0.5;
  }
  return xor_message_system("shared-bit", Behavior({{2, 2}, {2, 2}, {1, 2}}, std::move(t)));
}

MultipartySystem independent_system() {
  return xor_message_system("independent",
                            Behavior({{2, 2}, {2, 2}, {1, 2}}, std::vector<double>(4 * 8, 1.0 / 8.0)));
}

MultipartySystem double_pr_system() {
  const Behavior pr = pr_box();
  // Inputs (w1, w2, x); outputs (g1, g2, o) with o = 2 o13 + o23.
  std::vector<double> t(8 * 16, 0.0);
  for (std::size_t w1 = 0; w1 < 2; ++w1) {
    for (std::size_t w2 = 0; w2 < 2; ++w2) {
      for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t g1 = 0; g1 < 2; ++g1) {
          for (std::size_t g2 = 0; g2 < 2; ++g2) {
            for (std::size_t o13 = 0; o13 < 2; ++o13) {
              for (std::size_t o23 = 0; o23 < 2; ++o23) {
                const double p = pr.at(w1 * 2 + x, g1 * 2 + o13) * pr.at(w2 * 2 + x, g2 * 2 + o23);
                t[((w1 * 2 + w2) * 2 + x) * 16 + (g1 * 2 + g2) * 4 + o13 * 2 + o23] = p;
              }
            }
          }
        }
      }
    }
  }
  MultipartySystem s{.name = "double-pr", .behavior = Behavior({{2, 2}, {2, 2}, {2, 4}}, std::move(t))};
  s.sender_input = [](std::span<const std::size_t> a) { return a[0] ^ a[1]; };
  s.message = [](std::span<const std::size_t> a, std::size_t o) { return a[0] ^ (o >> 1); };
  return s;
}

}  // namespace nlbox
