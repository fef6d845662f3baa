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

// Discrete probability tables and Shannon information quantities.
//
// All logarithms are base 2. Information quantities that come out marginally
// negative through rounding are clamped to zero; the *_raw variants return the
// unclamped value for diagnostics.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nlbox {

struct Variable {
  std::string name;
  std::size_t cardinality = 0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

using Labels = std::vector<std::string>;
using Evidence = std::vector<std::pair<std::string, std::size_t>>;

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kInformationSlack = 1e-12;

/// Probability table over named discrete variables, stored row-major with the
/// last variable varying fastest.
class JointDistribution {
 public:
  /// Validates the table against the invariants: non-negative entries summing
  /// to one within kNormalizationTolerance, length equal to the product of
  /// cardinalities, unique non-empty labels.
  JointDistribution(std::vector<Variable> variables, std::vector<double> table);

  /// Normalizes non-negative weights (e.g. accumulated path probabilities or
  /// empirical counts) before validation.
  static JointDistribution from_weights(std::vector<Variable> variables, std::vector<double> weights);
  static JointDistribution from_counts(std::vector<Variable> variables,
                                       std::span<const std::uint64_t> counts);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<double>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  bool has(std::string_view label) const;
  /// Position of a label; throws LabelError when absent.
  std::size_t index_of(std::string_view label) const;

  double probability(std::span<const std::size_t> values) const;

  /// Marginal over `keep`, with variables in the order given.
  JointDistribution marginal(const Labels& keep) const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> table_;
};

/// Shape helper: product of cardinalities.
std::size_t table_size(std::span<const Variable> variables);

double entropy(const JointDistribution& dist, const Labels& subset);
/// H(X | Z) = H(XZ) - H(Z).
double conditional_entropy(const JointDistribution& dist, const Labels& x, const Labels& given);

double mutual_information_raw(const JointDistribution& dist, const Labels& x, const Labels& y);
double mutual_information(const JointDistribution& dist, const Labels& x, const Labels& y);

/// I(X:Y|Z), defined through the chain rule as I(X:YZ) - I(X:Z).
double conditional_mutual_information_raw(const JointDistribution& dist, const Labels& x,
                                          const Labels& y, const Labels& z);
double conditional_mutual_information(const JointDistribution& dist, const Labels& x,
                                      const Labels& y, const Labels& z);

/// Renormalized distribution over the variables not fixed by `evidence`.
/// Throws ConditioningError when the evidence has zero probability.
JointDistribution condition(const JointDistribution& dist, const Evidence& evidence);

/// h(p) = -p log2 p - (1-p) log2 (1-p).
double binary_entropy(double p);

/// Partial sum (1 / (2 ln 2)) * sum_{q=1..terms} e^{2q} / (q (2q - 1)), which
/// converges to 1 - h((1 + e) / 2) for 0 <= e < 1.
double binary_entropy_series(double e, std::size_t terms);

/// Capacity-style quantity 1 - h((1 + e) / 2) for a correlator e in [-1, 1],
/// evaluated without cancellation for small |e|.
double one_minus_binary_entropy_of_bias(double e);

struct Lemma1Report {
  double residual = 0.0;  ///< H(O) - I(O:N) - I(NO:Q)
  double h_o = 0.0;
  double i_o_n = 0.0;
  double i_no_q = 0.0;
  double i_n_q = 0.0;          ///< precondition: independence of N and Q
  double h_o_given_nq = 0.0;   ///< precondition: O is a function of N, Q
};

/// Evaluates the bookkeeping identity H(O) = I(O:N) + I(NO:Q) for O a function
/// of independent N and Q. Throws PreconditionError (naming the condition)
/// when either precondition fails by more than 1e-9 bits.
Lemma1Report lemma1_residual(const JointDistribution& dist, const Labels& n, const Labels& q,
                             const Labels& o);

/// Plug-in estimate from counts with a delete-one jackknife bias correction.
struct Estimate {
  double value = 0.0;      ///< bias-corrected
  double plugin = 0.0;
  double std_error = 0.0;  ///< jackknife standard error
};

Estimate jackknife_entropy(const std::vector<Variable>& variables,
                           std::span<const std::uint64_t> counts, const Labels& x);
Estimate jackknife_mutual_information(const std::vector<Variable>& variables,
                                      std::span<const std::uint64_t> counts, const Labels& x,
                                      const Labels& y);

}  // namespace nlbox
