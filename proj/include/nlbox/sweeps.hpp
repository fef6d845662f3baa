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

// Monte Carlo sweeps over random quantum resources. Instance i draws all of
// its randomness from stream i of the seed, so results do not depend on the
// execution mode or on the thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nlbox/parallel.hpp"

namespace nlbox {

struct MonogamyInstance {
  double chsh_13 = 0.0;
  double chsh_23 = 0.0;
};

struct MonogamySweep {
  std::vector<MonogamyInstance> instances;
  double max_squares = 0.0;  ///< max CHSH_13^2 + CHSH_23^2
  double max_sum = 0.0;      ///< max CHSH_13 + CHSH_23
  std::size_t quantum_failures = 0;  ///< above 8 + 1e-6
  std::size_t ns_failures = 0;       ///< above 4 + 1e-9
};

/// Haar-random pure three-qubit states with random planar measurements; the
/// third qubit uses the same two angles in both pairings.
MonogamySweep monogamy_sweep(std::size_t count, std::uint64_t seed, Execution execution = Execution::parallel);

struct ChshSweep {
  std::vector<double> values;
  double max_abs = 0.0;
};

/// Haar-random pure two-qubit states with random planar measurement angles.
ChshSweep chsh_sweep(std::size_t count, std::uint64_t seed, Execution execution = Execution::parallel);

struct IcInstance {
  double value = 0.0;
  double h_c = 0.0;
};

struct IcResourceSweep {
  std::vector<IcInstance> instances;
  double max_excess = 0.0;  ///< max of value - H(c)
  std::size_t failures = 0;
};

/// Random two-qubit resources wired into the two-bit game, evaluated exactly.
IcResourceSweep ic_resource_sweep(std::size_t count, std::uint64_t seed,
                                  Execution execution = Execution::parallel);

}  // namespace nlbox
