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

// The reproduction checks: one function per headline result, each returning a
// verdict and the numbers behind it. Shared by `nlbox suite paper-checks` and
// the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "nlbox/parallel.hpp"
#include "nlbox/serialize.hpp"

namespace nlbox {

struct CheckOptions {
  std::uint64_t seed = 20260101;
  Execution execution = Execution::parallel;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  Json details;
};

/// Registered checks, ids 1..check_count().
int check_count();
std::string check_name(int id);
CheckResult run_check(int id, const CheckOptions& options);

std::vector<CheckResult> run_paper_checks(const CheckOptions& options);

/// Summary table plus per-check details. Contains no timings, so equal
/// options give byte-identical documents.
Json suite_report(const std::vector<CheckResult>& results, const CheckOptions& options);

}  // namespace nlbox
