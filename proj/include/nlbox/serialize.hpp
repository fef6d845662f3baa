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

// JSON forms of the value types.
//
//   JointDistribution  {"variables": [{"name", "cardinality"}], "table": [...]}
//                      row-major, last variable fastest
//   complex matrix     [[[re, im], ...], ...] row by row
//   Behavior           {"boxes": [{"in", "out"}], "table": [...]}
//                      table[joint_input * joint_outputs + joint_output],
//                      box 0 the most significant digit of both indices
//   OnticEnsemble      {"boxes": [...], "assignments": [[[...per box map...]]],
//                      "weights": [...]}; maps are indexed by joint input

#include "json.hpp"

#include "nlbox/boxes.hpp"
#include "nlbox/counterfactual.hpp"
#include "nlbox/prob.hpp"
#include "nlbox/quantum.hpp"

namespace nlbox {

using Json = nlohmann::ordered_json;

Json to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const Json& j);

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

Json to_json(const OnticEnsemble& e);
OnticEnsemble ensemble_from_json(const Json& j);

}  // namespace nlbox
