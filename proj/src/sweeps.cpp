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


#include "nlbox/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlbox/bell.hpp"
#include "nlbox/icausality.hpp"
#include "nlbox/quantum.hpp"
#include "nlbox/random.hpp"

namespace nlbox {
namespace {

Behavior random_planar_behavior(std::size_t qubits, StreamRng& rng, std::vector<MeasurementSet>& parties) {
  const DensityMatrix rho = states::random_pure(qubits, rng);
  parties.clear();
  for (std::size_t q = 0; q < qubits; ++q) {
    const std::vector<double> angles{rng.angle(), rng.angle()};
    parties.push_back(planar_measurements(angles));
  }
  const std::vector<std::size_t> dims(qubits, 2);
  return from_quantum(rho, parties, dims);
}

}  // namespace

MonogamySweep monogamy_sweep(std::size_t count, std::uint64_t seed, Execution execution) {
  MonogamySweep out;
  out.instances.resize(count);
  for_each_index(count, execution, [&](std::size_t i) {
    StreamRng rng(seed, i);
    std::vector<MeasurementSet> parties;
    const Behavior b = random_planar_behavior(3, rng, parties);
    out.instances[i] = {chsh(b, pairing_13()), chsh(b, pairing_23())};
  });
  out.max_squares = -std::numeric_limits<double>::infinity();
  out.max_sum = -std::numeric_limits<double>::infinity();
  for (const auto& r : out.instances) {
    const double squares = r.chsh_13 * r.chsh_13 + r.chsh_23 * r.chsh_23;
    const double sum = r.chsh_13 + r.chsh_23;
    out.max_squares = std::max(out.max_squares, squares);
    out.max_sum = std::max(out.max_sum, sum);
    if (squares > 8.0 + 1e-6) ++out.quantum_failures;
    if (sum > 4.0 + 1e-9) ++out.ns_failures;
  }
  return out;
}

ChshSweep chsh_sweep(std::size_t count, std::uint64_t seed, Execution execution) {
  ChshSweep out;
  out.values.resize(count);
  for_each_index(count, execution, [&](std::size_t i) {
    StreamRng rng(seed, i);
    std::vector<MeasurementSet> parties;
    out.values[i] = chsh(random_planar_behavior(2, rng, parties));
  });
  for (double v : out.values) out.max_abs = std::max(out.max_abs, std::abs(v));
  return out;
}

IcResourceSweep ic_resource_sweep(std::size_t count, std::uint64_t seed, Execution execution) {
  IcResourceSweep out;
  out.instances.resize(count);
  for_each_index(count, execution, [&](std::size_t i) {
    StreamRng rng(seed, i);
    std::vector<MeasurementSet> parties;
    const ICReport r = ic_quantity(van_dam_strategy(random_planar_behavior(2, rng, parties)));
    out.instances[i] = {r.value, r.h_c};
  });
  out.max_excess = -std::numeric_limits<double>::infinity();
  for (const auto& r : out.instances) {
    out.max_excess = std::max(out.max_excess, r.value - r.h_c);
    if (r.value > r.h_c + kIcTolerance) ++out.failures;
  }
  return out;
}

}  // namespace nlbox
