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


#include "nlbox/bell.hpp"

#include <algorithm>
#include <cmath>

#include "nlbox/errors.hpp"

namespace nlbox {

void validate(const Behavior& b, const ChshPairing& p) {
  const std::size_t n = b.num_boxes();
  if (p.box_a >= n || p.box_b >= n || p.box_a == p.box_b) throw ArgumentError("invalid CHSH box pair");
  const auto& ba = b.boxes()[p.box_a];
  const auto& bb = b.boxes()[p.box_b];
  if (p.inputs_a[0] == p.inputs_a[1] || p.inputs_b[0] == p.inputs_b[1]) {
    throw ArgumentError("the two CHSH inputs of a box must differ");
  }
  for (std::size_t x : p.inputs_a) {
    if (x >= ba.inputs) throw ArgumentError("CHSH input out of range");
  }
  for (std::size_t y : p.inputs_b) {
    if (y >= bb.inputs) throw ArgumentError("CHSH input out of range");
  }
  if (ba.outputs != 2 || bb.outputs != 2) throw UnsupportedError("CHSH needs binary outputs");
  if (!p.context.empty() && p.context.size() != n) throw ArgumentError("context must cover every box");
}

double correlator(const Behavior& b, std::size_t box_a, std::size_t box_b, std::size_t input_a,
                  std::size_t input_b, std::span<const std::size_t> context) {
  const std::size_t n = b.num_boxes();
  if (box_a >= n || box_b >= n || box_a == box_b) throw ArgumentError("invalid box pair");
  if (b.boxes()[box_a].outputs != 2 || b.boxes()[box_b].outputs != 2) {
    throw UnsupportedError("correlator needs binary outputs");
  }
  std::vector<std::size_t> ctx(n, 0);
  if (!context.empty()) {
    if (context.size() != n) throw ArgumentError("context must cover every box");
    std::copy(context.begin(), context.end(), ctx.begin());
  }
  ctx[box_a] = input_a;
  ctx[box_b] = input_b;
  const std::size_t x = b.encode_inputs(ctx);
  double e = 0.0;
  for (std::size_t y = 0; y < b.joint_outputs(); ++y) {
    const auto o = b.decode_outputs(y);
    e += ((o[box_a] ^ o[box_b]) ? -1.0 : 1.0) * b.at(x, y);
  }
  return e;
}

double chsh(const Behavior& b, const ChshPairing& p) {
  validate(b, p);
  auto E = [&](std::size_t i, std::size_t j) {
    return correlator(b, p.box_a, p.box_b, p.inputs_a[i], p.inputs_b[j], p.context);
  };
  return E(0, 0) + E(0, 1) + E(1, 0) - E(1, 1);
}

Behavior depolarize(const Behavior& b) {
  if (b.num_boxes() != 2) throw UnsupportedError("depolarize needs a bipartite behavior");
  for (const auto& s : b.boxes()) {
    if (s.inputs != 2 || s.outputs != 2) throw UnsupportedError("depolarize needs binary boxes");
  }
  std::vector<double> t(16, 0.0);
  auto idx = [](std::size_t m, std::size_t a, std::size_t g, std::size_t c) {
    return (m * 2 + a) * 4 + g * 2 + c;
  };
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t u = 0; u < 2; ++u) {
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t m = 0; m < 2; ++m) {
          for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t g = 0; g < 2; ++g) {
              for (std::size_t c = 0; c < 2; ++c) {
                // Box 0 is fed m^s and flips by r ^ u m ^ s u; box 1 is fed
                // a^u and flips by r ^ s a. The PR condition is unchanged.
                const std::size_t g0 = g ^ r ^ (u & m) ^ (s & u);
                const std::size_t c0 = c ^ r ^ (s & a);
                t[idx(m, a, g, c)] += b.table()[idx(m ^ s, a ^ u, g0, c0)] / 8.0;
              }
            }
          }
        }
      }
    }
  }
  return Behavior(b.boxes(), std::move(t));
}

namespace {

void check_shared(const ChshPairing& p13, const ChshPairing& p23) {
  if (p13.box_b != p23.box_b) throw ArgumentError("monogamy pairings must share their second box");
  if (p13.inputs_b != p23.inputs_b) {
    throw ArgumentError("monogamy bounds hold only when the shared box uses the same two measurements");
  }
}

}  // namespace

MonogamyReport monogamy_ns(const Behavior& b, const ChshPairing& p13, const ChshPairing& p23) {
  check_shared(p13, p23);
  MonogamyReport r;
  r.chsh_13 = chsh(b, p13);
  r.chsh_23 = chsh(b, p23);
  r.value = r.chsh_13 + r.chsh_23;
  r.bound = 4.0;
  r.pass = r.value <= r.bound + kChshTolerance;
  return r;
}

MonogamyReport monogamy_quantum(const Behavior& b, const ChshPairing& p13, const ChshPairing& p23) {
  check_shared(p13, p23);
  MonogamyReport r;
  r.chsh_13 = chsh(b, p13);
  r.chsh_23 = chsh(b, p23);
  r.value = r.chsh_13 * r.chsh_13 + r.chsh_23 * r.chsh_23;
  r.bound = 8.0;
  r.pass = r.value <= r.bound + kChshTolerance;
  return r;
}

ChshPairing pairing_13() {
  ChshPairing p;
  p.box_a = 0;
  p.box_b = 2;
  return p;
}

ChshPairing pairing_23() {
  ChshPairing p;
  p.box_a = 1;
  p.box_b = 2;
  return p;
}

LocalEnumeration enumerate_deterministic() {
  LocalEnumeration out;
  const std::vector<BoxSpec> boxes{{2, 2}, {2, 2}};
  for (std::size_t code = 0; code < 256; ++code) {
    // Two bits of output per joint input (m, a).
    std::vector<double> t(16, 0.0);
    for (std::size_t x = 0; x < 4; ++x) t[x * 4 + ((code >> (2 * x)) & 3)] = 1.0;
    const Behavior b(boxes, std::move(t));
    const double v = std::abs(chsh(b));
    ++out.strategies;
    if (no_signalling_check(b).pass) {
      ++out.no_signalling;
      out.max_local_chsh = std::max(out.max_local_chsh, v);
    } else {
      out.max_signalling_chsh = std::max(out.max_signalling_chsh, v);
    }
  }
  return out;
}

std::array<double, 4> tsirelson_angles() {
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 2.0, 5.0 * pi / 4.0, 3.0 * pi / 4.0};
}

}  // namespace nlbox
