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


#include "nlbox/parallel.hpp"

#include <gtest/gtest.h>

#include <omp.h>

#include <atomic>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nlbox/sweeps.hpp"

using namespace nlbox;

class ParallelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(4);
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_F(ParallelTest, VisitsEveryIndexOnce) {
  for (Execution ex : {Execution::serial, Execution::parallel}) {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(hits.size(), ex, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  for_each_index(0, Execution::parallel, [](std::size_t) { FAIL(); });
}

TEST_F(ParallelTest, PropagatesExceptions) {
  for (Execution ex : {Execution::serial, Execution::parallel}) {
    EXPECT_THROW(for_each_index(64, ex,
                                [](std::size_t i) {
                                  if (i == 37) throw std::runtime_error("boom");
                                }),
                 std::runtime_error);
  }
}

TEST_F(ParallelTest, MonogamySweepSerialEqualsParallel) {
  const auto a = monogamy_sweep(60, 4, Execution::serial);
  const auto b = monogamy_sweep(60, 4, Execution::parallel);
  ASSERT_EQ(a.instances.size(), b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    EXPECT_EQ(a.instances[i].chsh_13, b.instances[i].chsh_13);
    EXPECT_EQ(a.instances[i].chsh_23, b.instances[i].chsh_23);
  }
  EXPECT_EQ(a.quantum_failures, 0u);
  EXPECT_EQ(a.ns_failures, 0u);
  EXPECT_LE(a.max_squares, 8.0 + 1e-6);
}

TEST_F(ParallelTest, ChshSweepSerialEqualsParallelAndRespectsTsirelson) {
  const auto a = chsh_sweep(200, 9, Execution::serial);
  const auto b = chsh_sweep(200, 9, Execution::parallel);
  EXPECT_EQ(a.values, b.values);
  EXPECT_LE(a.max_abs, 2.0 * std::numbers::sqrt2 + 1e-9);
}

TEST_F(ParallelTest, IcResourceSweepSerialEqualsParallel) {
  const auto a = ic_resource_sweep(20, 3, Execution::serial);
  const auto b = ic_resource_sweep(20, 3, Execution::parallel);
  ASSERT_EQ(a.instances.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(a.instances[i].value, b.instances[i].value);
    EXPECT_EQ(a.instances[i].h_c, b.instances[i].h_c);
  }
  EXPECT_EQ(a.failures, 0u);
}
