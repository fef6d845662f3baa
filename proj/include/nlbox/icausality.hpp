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

// The information-causality game. Alice holds n uniform bits A, Bob receives
// a uniform index m in [0, n) and guesses a_m from his box outputs and one
// message c from Alice. The game quantity is
//   sum_x I(a_x : g c | m = x),
// compared against the entropy H(c) of the message actually sent.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlbox/boxes.hpp"
#include "nlbox/parallel.hpp"
#include "nlbox/prob.hpp"

namespace nlbox {

inline constexpr double kIcTolerance = 1e-9;
inline constexpr std::size_t kMaxExactRows = std::size_t{1} << 20;

/// A strategy built from independent box pairs. In every pair box 0 is Bob's
/// and box 1 is Alice's. Alice feeds her pairs in order, so the input of pair
/// j may depend on A and on her outputs from pairs 0..j-1.
struct ICStrategy {
  std::size_t bits = 0;
  std::size_t message_cardinality = 2;
  std::vector<Behavior> pairs;
  std::function<std::size_t(std::size_t pair, std::span<const std::size_t> bits,
                            std::span<const std::size_t> alice_outputs)>
      alice_input;
  std::function<std::size_t(std::span<const std::size_t> bits, std::span<const std::size_t> alice_outputs)>
      message;
  /// Bob's input to every pair, given the index m.
  std::function<std::vector<std::size_t>(std::size_t m)> bob_inputs;
  std::function<std::size_t(std::size_t m, std::size_t c, std::span<const std::size_t> bob_outputs)> guess;
};

/// Joint distribution over a0..a{n-1}, m, c, g (guess) and b (Bob's box
/// outputs, mixed-radix code over the pairs). Throws ResourceError when the
/// enumeration exceeds kMaxExactRows.
JointDistribution ic_joint(const ICStrategy& s);

struct ICReport {
  double value = 0.0;
  double h_c = 0.0;
  std::vector<double> terms;
  bool pass = false;
  bool sampled = false;
  double value_std_error = 0.0;
  double h_c_std_error = 0.0;
  std::vector<double> term_std_errors;
  std::uint64_t samples = 0;
};

ICReport ic_quantity(const ICStrategy& s);

/// Monte Carlo estimate with jackknife bias correction; `trials` game rounds
/// with A and m uniform.
ICReport ic_quantity_sampled(const ICStrategy& s, std::uint64_t trials, std::uint64_t seed,
                             Execution execution = Execution::parallel);

/// Two bits, one pair: Alice inputs a0 xor a1 and sends c = a0 xor o; Bob
/// inputs m and guesses c xor his output.
ICStrategy van_dam_strategy(const Behavior& pair);

/// No boxes: c = a0, Bob guesses c.
ICStrategy trivial_strategy(std::size_t bits = 2);

/// Nested protocol on n = 2^levels bits with one isotropic_box(e0, e1) per
/// tree node (n - 1 pairs, listed bottom-up). Bob reads his address most
/// significant bit first: the root pair gets the top bit of m and the leaf
/// pair gets the bottom bit.
ICStrategy pawlowski_protocol(double e0, double e1, std::size_t levels);

/// sum_{k=0..levels} C(levels, k) (1 - h((1 + e0^(levels-k) e1^k) / 2)).
double pawlowski_value(double e0, double e1, std::size_t levels);

/// Predicted probability that Bob's guess of a_m is right.
double pawlowski_success(double e0, double e1, std::size_t levels, std::size_t m);

struct SuccessEstimate {
  std::vector<std::uint64_t> successes;  ///< per address
  std::uint64_t trials_per_address = 0;
};

/// Runs `trials_per_address` rounds for every address m with uniform A.
SuccessEstimate simulate_success(const ICStrategy& s, std::uint64_t trials_per_address, std::uint64_t seed,
                                 Execution execution = Execution::parallel);

struct E12Report {
  double e1 = 0.0, e2 = 0.0;
  double target = 0.0;  ///< 2 - h((1 + e1)/2) - h((1 + e2)/2)
  bool solvable = false;
  double e12 = 0.0;
  double s_direct = 0.0;  ///< e12^2 - e1^2 - e2^2
  double s_series = 0.0;  ///< sum_{q>=2} (e1^2q + e2^2q - e12^2q) / (q (2q - 1))
  std::size_t series_terms = 0;
  double boundary = 0.0;  ///< 2 e1^2 + 2 e2^2
};

/// Solves 1 - h((1 + e12)/2) = target by bisection when target is in [0, 1].
E12Report e12_relation(double e1, double e2);

struct Eq1Report {
  std::vector<double> single;  ///< I(A : b c | m = q) per q
  double max_single = 0.0;
  std::vector<double> terms;   ///< I(a_x : b c | m = x)
  double sum = 0.0;
  bool holds = false;
};

/// Both sides of max_q I(A : b c | m = q) >= sum_x I(a_x : b c | m = x),
/// with b Bob's box outputs. Requires bits <= 3.
Eq1Report eq1_check(const ICStrategy& s);

/// Three boxes: receivers 0 and 1 take input w in [0, bits), the sender is box
/// 2. The sender's input and the message are functions of A and its output.
struct MultipartySystem {
  std::string name;
  Behavior behavior;
  std::size_t bits = 2;
  std::size_t message_cardinality = 2;
  std::function<std::size_t(std::span<const std::size_t> bits)> sender_input{};
  std::function<std::size_t(std::span<const std::size_t> bits, std::size_t sender_output)> message{};
};

/// Joint distribution over a0..a{n-1}, w, c, g1, g2 with both receivers given
/// the same uniform input w.
JointDistribution multiparty_joint(const MultipartySystem& s);

struct MultipartyReport {
  double value = 0.0;
  double h_c = 0.0;
  std::vector<double> terms;  ///< flattened per (receiver or part, w)
  bool pass = false;
  double literal_value = 0.0;  ///< corrected form with I(a_w : c g2 | g1)
  bool literal_pass = false;
};

/// sum_i sum_w I(a_w : c g_i | inputs = w).
MultipartyReport multipartite_ic_flawed(const MultipartySystem& s);

/// sum_w [ I(a_w : c g1 | w) + I(a_w : g2 | c g1, w) ]: the second receiver is
/// credited only with what it adds to the first. Also reports the reading
/// with I(a_w : c g2 | g1, w) as the second term.
MultipartyReport multipartite_ic_corrected(const MultipartySystem& s);

/// Receivers and sender measure Z on the GHZ state; c = a0 xor o.
MultipartySystem ghz_system();
/// The three boxes output one shared uniform bit.
MultipartySystem shared_bit_system();
/// Three independent uniform bits.
MultipartySystem independent_system();
/// The sender shares a PR box with each receiver (its output is the pair of
/// its two PR outputs, both fed a0 xor a1); c = a0 xor the first.
MultipartySystem double_pr_system();

}  // namespace nlbox
