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

// Operational behaviors: conditional probability tables p(outputs | inputs)
// for a list of labeled boxes.
//
// Layout: table[joint_input * joint_outputs() + joint_output]. Joint inputs
// and joint outputs are mixed-radix indices with box 0 the most significant
// digit. Alphabets are 0-based integers.

#include <cstddef>
#include <span>
#include <vector>

#include "nlbox/quantum.hpp"

namespace nlbox {

inline constexpr double kRowTolerance = 1e-10;
inline constexpr double kNoSignallingTolerance = 1e-9;

struct BoxSpec {
  std::size_t inputs = 2;
  std::size_t outputs = 2;

  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

std::size_t encode_digits(std::span<const std::size_t> digits, std::span<const std::size_t> radices);
std::vector<std::size_t> decode_digits(std::size_t index, std::span<const std::size_t> radices);

class Behavior {
 public:
  /// Validates that every row is a probability distribution (entries >= 0,
  /// sum within kRowTolerance of 1).
  Behavior(std::vector<BoxSpec> boxes, std::vector<double> table);

  const std::vector<BoxSpec>& boxes() const { return boxes_; }
  std::size_t num_boxes() const { return boxes_.size(); }
  std::size_t joint_inputs() const { return joint_inputs_; }
  std::size_t joint_outputs() const { return joint_outputs_; }
  const std::vector<double>& table() const { return table_; }

  std::vector<std::size_t> input_radices() const;
  std::vector<std::size_t> output_radices() const;
  std::size_t encode_inputs(std::span<const std::size_t> inputs) const;
  std::size_t encode_outputs(std::span<const std::size_t> outputs) const;
  std::vector<std::size_t> decode_inputs(std::size_t joint) const;
  std::vector<std::size_t> decode_outputs(std::size_t joint) const;

  double at(std::size_t joint_input, std::size_t joint_output) const {
    return table_[joint_input * joint_outputs_ + joint_output];
  }
  double prob(std::span<const std::size_t> outputs, std::span<const std::size_t> inputs) const;
  std::span<const double> row(std::size_t joint_input) const {
    return {table_.data() + joint_input * joint_outputs_, joint_outputs_};
  }

 private:
  std::vector<BoxSpec> boxes_;
  std::vector<double> table_;
  std::size_t joint_inputs_ = 1;
  std::size_t joint_outputs_ = 1;
};

/// Two binary boxes with g xor c = m * a, each satisfying pair at 1/2.
/// Box 0 takes m and yields g; box 1 takes a and yields c.
Behavior pr_box();

/// Binary bipartite box with uniform marginals and
/// p(g xor c = m * a | m, a) = (1 + e) / 2. Requires e in [0, 1].
Behavior isotropic_box(double e);

/// As above with a correlator that depends on box 0's input: e0 when m = 0,
/// e1 when m = 1. Requires both in [0, 1].
Behavior isotropic_box(double e0, double e1);

/// Unchecked variant allowing anti-correlated boxes, correlators in [-1, 1].
Behavior xor_box(double e0, double e1);

/// Born-rule table. `parties[k]` are the measurements on tensor factor k of
/// dimension dims[k]; every measurement of a party must have the same number
/// of outcomes.
Behavior from_quantum(const DensityMatrix& rho, std::span<const MeasurementSet> parties,
                      std::span<const std::size_t> dims);

struct LocalStrategy {
  std::size_t outputs = 2;
  std::vector<std::size_t> map;  ///< map[input] = output
};

Behavior local_deterministic(std::span<const LocalStrategy> strategies);

/// Convex mixture; weights must be non-negative and sum to one within 1e-10.
Behavior mix(std::span<const Behavior> behaviors, std::span<const double> weights);

/// Independent boxes side by side: a's boxes then b's.
Behavior product(const Behavior& a, const Behavior& b);

/// Box k of the result is box perm[k] of b.
Behavior permute_boxes(const Behavior& b, std::span<const std::size_t> perm);

/// Marginal on `keep` (in the given order). Boxes that are dropped receive the
/// inputs in `context` (indexed by box; entries for kept boxes are ignored).
Behavior marginal(const Behavior& b, std::span<const std::size_t> keep,
                  std::span<const std::size_t> context);
Behavior marginal(const Behavior& b, std::span<const std::size_t> keep);

/// Largest total-variation distance between corresponding rows.
double max_row_distance(const Behavior& a, const Behavior& b);

struct NoSignallingReport {
  /// For each box, the largest total-variation change of the output marginal
  /// of any box subset containing it, across the inputs of the other boxes.
  std::vector<double> per_box;
  double max_discrepancy = 0.0;
  bool pass = true;
};

NoSignallingReport no_signalling_check(const Behavior& b, double tolerance = kNoSignallingTolerance);

enum class Stage { first, second };

/// Feeds the output of one box into the input of another.
struct Connection {
  Stage from_stage = Stage::first;
  std::size_t from_box = 0;
  Stage to_stage = Stage::second;
  std::size_t to_box = 0;
};

/// Sequential composition: `first` runs before `second`, and each connection
/// sets a second-stage input to a first-stage output. The result lists first's
/// boxes then second's; wired boxes keep their position with a trivial input
/// alphabet. Connections that point backwards or within a stage would close a
/// loop and are rejected with ArgumentError.
Behavior wire(const Behavior& first, const Behavior& second, std::span<const Connection> connections);

}  // namespace nlbox
