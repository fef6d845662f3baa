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

#include <cstddef>
#include <functional>

namespace nlbox {

/// Kernels come in two flavors: a plain loop kept as the reference, and an
/// OpenMP loop. Both visit the same work items with the same random streams,
/// and results are merged in item order, so their outputs agree bit for bit.
enum class Execution { serial, parallel };

/// Calls body(i) for every i in [0, count). The first exception thrown by any
/// item is rethrown after the loop.
void for_each_index(std::size_t count, Execution execution, const std::function<void(std::size_t)>& body);

/// Number of OpenMP threads a parallel loop would use.
int max_threads();

}  // namespace nlbox
