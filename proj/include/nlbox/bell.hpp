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

// CHSH quantities, the XOR twirl, and the two monogamy bounds.
//
// Outputs map to +-1 as 0 -> +1, 1 -> -1. The sign pattern is fixed:
//   CHSH = E(x0, y0) + E(x0, y1) + E(x1, y0) - E(x1, y1)
// where x0, x1 are box_a's inputs and y0, y1 are box_b's inputs.

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "nlbox/boxes.hpp"

namespace nlbox {

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;
inline constexpr double kChshTolerance = 1e-9;

struct ChshPairing {
  std::size_t box_a = 0;
  std::size_t box_b = 1;
  std::array<std::size_t, 2> inputs_a{0, 1};
  std::array<std::size_t, 2> inputs_b{0, 1};
  /// Inputs of the remaining boxes (indexed by box; empty means all 0).
  std::vector<std::size_t> context;
};

/// Throws ArgumentError for out-of-range or repeated labels, UnsupportedError
/// when either box is not binary-output.
void validate(const Behavior& b, const ChshPairing& pairing);

double correlator(const Behavior& b, std::size_t box_a, std::size_t box_b, std::size_t input_a,
                  std::size_t input_b, std::span<const std::size_t> context = {});

double chsh(const Behavior& b, const ChshPairing& pairing = {});

/// XOR twirl of a binary bipartite behavior: the result is isotropic with
/// correlator chsh(b) / 4.
Behavior depolarize(const Behavior& b);

struct MonogamyReport {
  double chsh_13 = 0.0;
  double chsh_23 = 0.0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// CHSH_13 + CHSH_23 <= 4. Both pairings must measure the shared box with the
/// same two inputs (ArgumentError otherwise).
MonogamyReport monogamy_ns(const Behavior& b, const ChshPairing& p13, const ChshPairing& p23);
/// CHSH_13^2 + CHSH_23^2 <= 8. A check, not an enforcement.
MonogamyReport monogamy_quantum(const Behavior& b, const ChshPairing& p13, const ChshPairing& p23);

/// Pairings (box 0, box 2) and (box 1, box 2), all inputs {0, 1}.
ChshPairing pairing_13();
ChshPairing pairing_23();

struct LocalEnumeration {
  std::size_t strategies = 0;         ///< all deterministic (m, a) -> (g, c) tables
  std::size_t no_signalling = 0;      ///< those passing the no-signalling check
  double max_local_chsh = 0.0;        ///< max |CHSH| over the no-signalling ones
  double max_signalling_chsh = 0.0;   ///< max |CHSH| over the rest
};

/// Exhaustive enumeration of the 256 deterministic binary bipartite tables.
/// A deterministic table is no-signalling exactly when it is a product of
/// local response functions.
LocalEnumeration enumerate_deterministic();

/// Singlet angles giving CHSH = +2 sqrt(2) in the fixed sign pattern:
/// box 0 measures at 0 and pi/2, box 1 at 5 pi/4 and 3 pi/4.
std::array<double, 4> tsirelson_angles();

}  // namespace nlbox
