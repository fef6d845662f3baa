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

#include "nlbox/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

std::vector<std::size_t> strides_of(std::span<const Variable> vars) {
  std::vector<std::size_t> strides(vars.size(), 1);
  for (std::size_t i = vars.size(); i-- > 1;) strides[i - 1] = strides[i] * vars[i].cardinality;
  return strides;
}

// Maps each row of `dist` onto a row of the marginal over `positions`.
std::vector<std::size_t> projection(const JointDistribution& dist,
                                    const std::vector<std::size_t>& positions) {
  const auto& vars = dist.variables();
  const auto strides = strides_of(vars);
  std::vector<std::size_t> out_strides(positions.size(), 1);
  for (std::size_t i = positions.size(); i-- > 1;) {
    out_strides[i - 1] = out_strides[i] * vars[positions[i]].cardinality;
  }
  std::vector<std::size_t> map(dist.size(), 0);
  for (std::size_t row = 0; row < dist.size(); ++row) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const std::size_t p = positions[k];
      target += ((row / strides[p]) % vars[p].cardinality) * out_strides[k];
    }
    map[row] = target;
  }
  return map;
}

std::vector<std::size_t> positions_of(const JointDistribution& dist, const Labels& labels) {
  std::vector<std::size_t> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    const std::size_t p = dist.index_of(l);
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
      throw ArgumentError("label listed twice: " + l);
    }
    pos.push_back(p);
  }
  return pos;
}

void require_disjoint(const Labels& a, const Labels& b) {
  for (const auto& l : a) {
    if (std::find(b.begin(), b.end(), l) != b.end()) {
      throw ArgumentError("label sets overlap on '" + l + "'");
    }
  }
}

Labels concat(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double entropy_of_counts(const std::vector<double>& counts, double total) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / total) * std::log2(c / total);
  }
  return h;
}

// Plug-in mutual information of a two-way count table stored x-major.
double mi_of_counts(const std::vector<double>& cxy, std::size_t nx, std::size_t ny, double total) {
  std::vector<double> cx(nx, 0.0), cy(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      cx[x] += cxy[x * ny + y];
      cy[y] += cxy[x * ny + y];
    }
  }
  return entropy_of_counts(cx, total) + entropy_of_counts(cy, total) -
         entropy_of_counts(cxy, total);
}

std::vector<double> marginal_counts(const std::vector<Variable>& variables,
                                    std::span<const std::uint64_t> counts, const Labels& keep,
                                    std::size_t* total_cells) {
  if (counts.size() != table_size(variables)) {
    throw ArgumentError("count table does not match variable shape");
  }
  // Reuse the distribution machinery for the index map; the table content is
  // irrelevant, so a uniform placeholder is enough.
  std::vector<double> uniform(counts.size(), 1.0 / static_cast<double>(counts.size()));
  const JointDistribution shape(variables, std::move(uniform));
  const auto pos = positions_of(shape, keep);
  const auto map = projection(shape, pos);
  std::size_t cells = 1;
  for (std::size_t p : pos) cells *= variables[p].cardinality;
  std::vector<double> out(cells, 0.0);
  for (std::size_t row = 0; row < counts.size(); ++row) out[map[row]] += static_cast<double>(counts[row]);
  *total_cells = cells;
  return out;
}

template <typename Stat>
Estimate jackknife(std::vector<double> cells, Stat&& stat) {
  const double n = std::accumulate(cells.begin(), cells.end(), 0.0);
  if (n < 2.0) throw ArgumentError("jackknife needs at least two observations");
  Estimate est;
  est.plugin = stat(cells, n);
  double mean = 0.0;
  std::vector<double> loo(cells.size(), 0.0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] <= 0.0) continue;
    cells[i] -= 1.0;
    loo[i] = stat(cells, n - 1.0);
    cells[i] += 1.0;
    mean += cells[i] * loo[i];
  }
  mean /= n;
  double var = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] > 0.0) var += cells[i] * (loo[i] - mean) * (loo[i] - mean);
  }
  var *= (n - 1.0) / n;
  est.value = n * est.plugin - (n - 1.0) * mean;
  est.std_error = std::sqrt(var);
  return est;
}

}  // namespace

std::size_t table_size(std::span<const Variable> variables) {
  std::size_t n = 1;
  for (const auto& v : variables) n *= v.cardinality;
  return n;
}

JointDistribution::JointDistribution(std::vector<Variable> variables, std::vector<double> table)
    : variables_(std::move(variables)), table_(std::move(table)) {
  std::unordered_set<std::string> seen;
  for (const auto& v : variables_) {
    if (v.name.empty()) throw ArgumentError("variable label must be non-empty");
    if (v.cardinality == 0) throw ArgumentError("variable '" + v.name + "' has cardinality 0");
    if (!seen.insert(v.name).second) throw ArgumentError("duplicate variable label '" + v.name + "'");
  }
  if (table_.size() != table_size(variables_)) {
    throw ArgumentError("table length " + std::to_string(table_.size()) +
                        " does not match product of cardinalities");
  }
  double sum = 0.0;
  for (double p : table_) {
    if (!(p >= 0.0)) throw DomainError("negative or NaN probability in table");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw DomainError("table sums to " + std::to_string(sum) + ", not 1");
  }
}

JointDistribution JointDistribution::from_weights(std::vector<Variable> variables,
                                                  std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("negative or NaN weight");
    sum += w;
  }
  if (!(sum > 0.0)) throw DomainError("weights sum to zero");
  for (double& w : weights) w /= sum;
  return JointDistribution(std::move(variables), std::move(weights));
}

JointDistribution JointDistribution::from_counts(std::vector<Variable> variables,
                                                 std::span<const std::uint64_t> counts) {
  std::vector<double> w(counts.begin(), counts.end());
  return from_weights(std::move(variables), std::move(w));
}

bool JointDistribution::has(std::string_view label) const {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const Variable& v) { return v.name == label; });
}

std::size_t JointDistribution::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == label) return i;
  }
  throw LabelError("unknown variable label '" + std::string(label) + "'");
}

double JointDistribution::probability(std::span<const std::size_t> values) const {
  if (values.size() != variables_.size()) throw ArgumentError("assignment has wrong arity");
  std::size_t row = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= variables_[i].cardinality) throw ArgumentError("value out of range");
    row = row * variables_[i].cardinality + values[i];
  }
  return table_[row];
}

JointDistribution JointDistribution::marginal(const Labels& keep) const {
  const auto pos = positions_of(*this, keep);
  const auto map = projection(*this, pos);
  std::vector<Variable> vars;
  for (std::size_t p : pos) vars.push_back(variables_[p]);
  std::vector<double> out(table_size(vars), 0.0);
  for (std::size_t row = 0; row < table_.size(); ++row) out[map[row]] += table_[row];
  // Re-summing can drift by a few ulps; renormalize.
  return from_weights(std::move(vars), std::move(out));
}

double entropy(const JointDistribution& dist, const Labels& subset) {
  if (subset.empty()) throw ArgumentError("entropy needs a non-empty subset");
  const auto m = dist.marginal(subset);
  double h = 0.0;
  for (double p : m.table()) h -= plogp(p);
  return std::max(h, 0.0);
}

double conditional_entropy(const JointDistribution& dist, const Labels& x, const Labels& given) {
  require_disjoint(x, given);
  if (given.empty()) return entropy(dist, x);
  return std::max(entropy(dist, concat(x, given)) - entropy(dist, given), 0.0);
}

double mutual_information_raw(const JointDistribution& dist, const Labels& x, const Labels& y) {
  if (x.empty() || y.empty()) throw ArgumentError("mutual information needs non-empty label sets");
  require_disjoint(x, y);
  return entropy(dist, x) + entropy(dist, y) - entropy(dist, concat(x, y));
}

double mutual_information(const JointDistribution& dist, const Labels& x, const Labels& y) {
  return std::max(mutual_information_raw(dist, x, y), 0.0);
}

double conditional_mutual_information_raw(const JointDistribution& dist, const Labels& x,
                                          const Labels& y, const Labels& z) {
  require_disjoint(x, y);
  require_disjoint(x, z);
  require_disjoint(y, z);
  if (z.empty()) return mutual_information_raw(dist, x, y);
  return mutual_information_raw(dist, x, concat(y, z)) - mutual_information_raw(dist, x, z);
}

double conditional_mutual_information(const JointDistribution& dist, const Labels& x,
                                      const Labels& y, const Labels& z) {
  return std::max(conditional_mutual_information_raw(dist, x, y, z), 0.0);
}

JointDistribution condition(const JointDistribution& dist, const Evidence& evidence) {
  const auto& vars = dist.variables();
  std::vector<int> fixed(vars.size(), -1);
  for (const auto& [label, value] : evidence) {
    const std::size_t p = dist.index_of(label);
    if (value >= vars[p].cardinality) {
      throw ArgumentError("evidence value out of range for '" + label + "'");
    }
    if (fixed[p] >= 0 && static_cast<std::size_t>(fixed[p]) != value) {
      throw ConditioningError("contradictory evidence for '" + label + "'");
    }
    fixed[p] = static_cast<int>(value);
  }
  Labels rest;
  std::vector<Variable> rest_vars;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (fixed[i] < 0) {
      rest.push_back(vars[i].name);
      rest_vars.push_back(vars[i]);
    }
  }
  const auto strides = strides_of(vars);
  std::vector<std::size_t> rest_pos;
  for (const auto& l : rest) rest_pos.push_back(dist.index_of(l));
  const auto map = rest_pos.empty() ? std::vector<std::size_t>(dist.size(), 0)
                                    : projection(dist, rest_pos);
  std::vector<double> out(table_size(rest_vars), 0.0);
  double mass = 0.0;
  for (std::size_t row = 0; row < dist.size(); ++row) {
    bool match = true;
    for (std::size_t i = 0; i < vars.size() && match; ++i) {
      if (fixed[i] >= 0 &&
          (row / strides[i]) % vars[i].cardinality != static_cast<std::size_t>(fixed[i])) {
        match = false;
      }
    }
    if (!match) continue;
    out[map[row]] += dist.table()[row];
    mass += dist.table()[row];
  }
  if (!(mass > 0.0)) throw ConditioningError("evidence has zero probability");
  if (rest_vars.empty()) return JointDistribution({}, {1.0});
  return JointDistribution::from_weights(std::move(rest_vars), std::move(out));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy: p outside [0, 1]");
  return -plogp(p) - plogp(1.0 - p);
}

double binary_entropy_series(double e, std::size_t terms) {
  if (!(e >= 0.0 && e < 1.0)) throw DomainError("binary_entropy_series: e outside [0, 1)");
  if (terms == 0) throw DomainError("binary_entropy_series: terms must be positive");
  const double e2 = e * e;
  double power = 1.0;
  double sum = 0.0;
  for (std::size_t q = 1; q <= terms; ++q) {
    power *= e2;
    if (power == 0.0) break;
    const double qd = static_cast<double>(q);
    sum += power / (qd * (2.0 * qd - 1.0));
  }
  return sum / (2.0 * std::numbers::ln2);
}

double one_minus_binary_entropy_of_bias(double e) {
  if (!(e >= -1.0 && e <= 1.0)) throw DomainError("correlator outside [-1, 1]");
  const double a = std::abs(e);
  if (a < 0.5) {
    const double e2 = a * a;
    double power = 1.0, sum = 0.0;
    for (int q = 1; q < 200; ++q) {
      power *= e2;
      const double term = power / (q * (2.0 * q - 1.0));
      sum += term;
      if (term <= 1e-18 * sum) break;
    }
    return sum / (2.0 * std::numbers::ln2);
  }
  return 1.0 - binary_entropy((1.0 + a) / 2.0);
}

Lemma1Report lemma1_residual(const JointDistribution& dist, const Labels& n, const Labels& q,
                             const Labels& o) {
  Lemma1Report r;
  r.i_n_q = mutual_information_raw(dist, n, q);
  r.h_o_given_nq = entropy(dist, concat(concat(o, n), q)) - entropy(dist, concat(n, q));
  if (std::abs(r.i_n_q) > 1e-9) {
    throw PreconditionError("N and Q are not independent (I(N:Q) = " + std::to_string(r.i_n_q) + ")");
  }
  if (std::abs(r.h_o_given_nq) > 1e-9) {
    throw PreconditionError("O is not a function of N and Q (H(O|NQ) = " +
                            std::to_string(r.h_o_given_nq) + ")");
  }
  r.h_o = entropy(dist, o);
  r.i_o_n = mutual_information_raw(dist, o, n);
  r.i_no_q = mutual_information_raw(dist, concat(n, o), q);
  r.residual = r.h_o - r.i_o_n - r.i_no_q;
  return r;
}

Estimate jackknife_entropy(const std::vector<Variable>& variables,
                           std::span<const std::uint64_t> counts, const Labels& x) {
  std::size_t cells = 0;
  auto c = marginal_counts(variables, counts, x, &cells);
  return jackknife(std::move(c), [](const std::vector<double>& v, double n) {
    return entropy_of_counts(v, n);
  });
}

Estimate jackknife_mutual_information(const std::vector<Variable>& variables,
                                      std::span<const std::uint64_t> counts, const Labels& x,
                                      const Labels& y) {
  require_disjoint(x, y);
  std::size_t cells = 0;
  auto c = marginal_counts(variables, counts, concat(x, y), &cells);
  std::size_t ny = 1;
  for (const auto& l : y) {
    for (const auto& v : variables) {
      if (v.name == l) ny *= v.cardinality;
    }
  }
  const std::size_t nx = cells / ny;
  return jackknife(std::move(c), [nx, ny](const std::vector<double>& v, double n) {
    return mi_of_counts(v, nx, ny, n);
  });
}

}  // namespace nlbox
