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


#include "nlbox/serialize.hpp"

#include "nlbox/errors.hpp"

namespace nlbox {
namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

Json boxes_json(const std::vector<BoxSpec>& boxes) {
  Json out = Json::array();
  for (const auto& b : boxes) out.push_back({{"in", b.inputs}, {"out", b.outputs}});
  return out;
}

std::vector<BoxSpec> boxes_from(const Json& j) {
  if (!j.is_array()) throw ArgumentError("'boxes' must be an array");
  std::vector<BoxSpec> boxes;
  for (const auto& b : j) boxes.push_back({field<std::size_t>(b, "in"), field<std::size_t>(b, "out")});
  return boxes;
}

}  // namespace

Json to_json(const JointDistribution& d) {
  Json vars = Json::array();
  for (const auto& v : d.variables()) vars.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
  return {{"variables", vars}, {"table", d.table()}};
}

JointDistribution distribution_from_json(const Json& j) {
  std::vector<Variable> vars;
  for (const auto& v : field<Json>(j, "variables")) {
    vars.push_back({field<std::string>(v, "name"), field<std::size_t>(v, "cardinality")});
  }
  return JointDistribution(std::move(vars), field<std::vector<double>>(j, "table"));
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ArgumentError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw ArgumentError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& z = j[r][c];
      if (!z.is_array() || z.size() != 2) throw ArgumentError("matrix entries must be [re, im]");
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Json to_json(const Behavior& b) { return {{"boxes", boxes_json(b.boxes())}, {"table", b.table()}}; }

Behavior behavior_from_json(const Json& j) {
  return Behavior(boxes_from(field<Json>(j, "boxes")), field<std::vector<double>>(j, "table"));
}

Json to_json(const OnticEnsemble& e) {
  Json assignments = Json::array();
  for (const auto& s : e.support()) assignments.push_back(s.maps);
  return {{"boxes", boxes_json(e.boxes())}, {"assignments", assignments}, {"weights", e.weights()}};
}

OnticEnsemble ensemble_from_json(const Json& j) {
  std::vector<Assignment> support;
  for (const auto& a : field<Json>(j, "assignments")) {
    support.push_back(Assignment{a.get<std::vector<std::vector<std::size_t>>>()});
  }
  return OnticEnsemble(boxes_from(field<Json>(j, "boxes")), std::move(support),
                       field<std::vector<double>>(j, "weights"));
}

}  // namespace nlbox
