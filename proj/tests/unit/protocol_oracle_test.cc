/*
 * Copyright 2026 The srv6pulse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include "support/protocol_reference.h"

namespace srv6pulse::testing {
namespace {

constexpr std::int64_t kInterval = 10'000'000;

struct OracleCase {
  const char* name;
  ReferenceStart start;
  std::int64_t detection;
};

class ProtocolOracle : public ::testing::TestWithParam<OracleCase> {};

TEST_P(ProtocolOracle, AgreesOnEverySequence) {
  const auto& c = GetParam();
  std::size_t checked = 0;
  std::vector<std::string> failures;
  for_each_sequence(6, [&](const std::vector<ProbeFate>& fates) {
    ++checked;
    if (auto d = replay(fates, c.start, kInterval, c.detection); d && failures.size() < 5) failures.push_back(*d);
  });
  EXPECT_EQ(checked, 5u + 25 + 125 + 625 + 3125 + 15625);
  for (const auto& f : failures) ADD_FAILURE() << f;
}

INSTANTIATE_TEST_SUITE_P(
    Starts, ProtocolOracle,
    ::testing::Values(OracleCase{"FreshDetect2x", {}, 2 * kInterval},
                      OracleCase{"FreshDetect3x", {}, 3 * kInterval},
                      OracleCase{"UpMidStream", {true, 100, 99}, 2 * kInterval},
                      OracleCase{"UpNearWrap", {true, 0xFFFFFFFEu, 0xFFFFFFFDu}, 2 * kInterval},
                      OracleCase{"UpNothingLooped", {true, 1, 0}, 3 * kInterval}),
    [](const auto& info) { return std::string(info.param.name); });

}  // namespace
}  // namespace srv6pulse::testing
