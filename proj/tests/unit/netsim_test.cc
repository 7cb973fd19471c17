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

#include "srv6pulse/netsim.h"

#include <gtest/gtest.h>

#include <sstream>

#include "support/scenarios.h"

namespace srv6pulse::netsim {
namespace {

using namespace std::chrono_literals;
using testing::at;
using testing::two_node_ms;

TEST(Run, IdealConditionsNoFalsePositives) {
  for (int interval : {5, 10, 20, 40}) {
    const auto r = run(two_node_ms(interval, 3, 1, 120s));
    EXPECT_EQ(r.master.false_positives, 0u) << interval;
    EXPECT_EQ(r.slave.false_positives, 0u) << interval;
    ASSERT_EQ(r.master.transitions.size(), 1u);
    EXPECT_EQ(r.master.transitions[0].to, LinkState::kUp);
    EXPECT_TRUE(r.packets.reconciles());
  }
}

TEST(Run, FirstLoopBackBringsSessionUp) {
  const auto r = run(two_node_ms(10, 3, 1, 1s));
  ASSERT_FALSE(r.master.transitions.empty());
  // First probe at t=0 crosses the 100 us link twice.
  EXPECT_EQ(r.master.transitions[0].at, at(200us));
}

TEST(Run, DeterministicForEqualSeeds) {
  auto c = two_node_ms(5, 3, 42, 60s);
  testing::stress_host(c, "A");
  c.links[0].loss = 0.01;
  const auto a = run(c);
  const auto b = run(c);
  EXPECT_EQ(a.master.false_positives, b.master.false_positives);
  ASSERT_EQ(a.master.transitions.size(), b.master.transitions.size());
  for (std::size_t i = 0; i < a.master.transitions.size(); ++i) {
    EXPECT_EQ(a.master.transitions[i].at, b.master.transitions[i].at);
  }
  EXPECT_EQ(a.packets.lost_by_link, b.packets.lost_by_link);
  EXPECT_GT(a.master.false_positives, 0u);

  c.seed = 43;
  const auto other = run(c);
  EXPECT_NE(other.master.transitions.size() * 1000 + other.packets.lost_by_link,
            a.master.transitions.size() * 1000 + a.packets.lost_by_link);
}

TEST(Run, SameStressHurtsMasterMoreThanSlave) {
  auto on_master = two_node_ms(5, 3, 7, 120s);
  testing::stress_host(on_master, "A");
  auto on_slave = two_node_ms(5, 3, 7, 120s);
  testing::stress_host(on_slave, "B");
  const auto m = run(on_master);
  const auto s = run(on_slave);
  EXPECT_GT(m.master.false_positives, 100u);
  EXPECT_LE(s.slave.false_positives, m.master.false_positives);
  EXPECT_EQ(m.master.true_detections, 0u);
}

TEST(Run, StressOnSlaveHostLeavesTenMsSessionClean) {
  auto c = two_node_ms(10, 3, 7, 120s);
  testing::stress_host(c, "B");
  const auto r = run(c);
  EXPECT_EQ(r.slave.false_positives, 0u);
  EXPECT_EQ(r.master.false_positives, 0u);
}

TEST(Run, LossyLinkConservesPackets) {
  auto c = two_node_ms(10, 3, 3, 60s);
  c.links[0].loss = 0.2;
  c.links[0].one_way_delay = {50us, 2ms};
  c = inject_failure(c, testing::kLinkAB, {at(20s), at(21s)});
  const auto r = run(c);
  EXPECT_TRUE(r.packets.reconciles());
  EXPECT_GT(r.packets.lost_by_link, 0u);
  EXPECT_GT(r.packets.dropped_by_failure, 0u);
  // Each tick injects one probe; each reflected probe is injected again.
  EXPECT_GE(r.packets.injected, 6000u);
}

TEST(InjectFailure, DetectionAndRecoveryBounds) {
  const auto interval = 10ms;
  const auto det = 30ms;
  const auto one_way = 100us;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto c = two_node_ms(10, 3, seed, 60s);
    c.sessions[0].phase = std::chrono::microseconds(1237 * seed);
    c = inject_failure(c, testing::kLinkAB, {at(20s + 3ms * seed), at(30s + 7ms * seed)});
    const auto r = run(c);
    EXPECT_EQ(r.master.false_positives, 0u);
    ASSERT_EQ(r.master.true_detections, 1u);
    ASSERT_EQ(r.master.detection_latencies.size(), 1u);
    EXPECT_LE(r.master.detection_latencies[0], det + interval + 2 * one_way);
    ASSERT_EQ(r.master.recovery_latencies.size(), 1u);
    EXPECT_LE(r.master.recovery_latencies[0], interval + 2 * one_way);
    EXPECT_EQ(r.slave.true_detections, 1u);
    EXPECT_EQ(r.slave.false_positives, 0u);
  }
}

TEST(InjectFailure, RejectsBadWindows) {
  const auto c = two_node_ms(10, 3, 1, 60s);
  EXPECT_THROW(inject_failure(c, testing::kLinkAB, {at(50s), at(70s)}), OverlappingWindow);
  EXPECT_THROW(inject_failure(c, testing::kLinkAB, {at(5s), at(5s)}), OverlappingWindow);
  const auto once = inject_failure(c, testing::kLinkAB, {at(10s), at(20s)});
  EXPECT_THROW(inject_failure(once, testing::kLinkAB, {at(19s), at(25s)}), OverlappingWindow);
  EXPECT_NO_THROW(inject_failure(once, testing::kLinkAB, {at(20s), at(25s)}));
  EXPECT_THROW(inject_failure(c, LinkId{77}, {at(1s), at(2s)}), ConfigError);
  EXPECT_EQ(c.links[0].failures.size(), 0u);
}

TEST(VerifyFrr, NoFailureNoReroute) {
  const auto r = verify_frr(testing::triangle_frr(20s));
  EXPECT_EQ(r.rerouted_packets, 0u);
  EXPECT_GT(r.passed_packets, 3900u);
  EXPECT_EQ(r.frr_verification_failures, 0u);
}

TEST(VerifyFrr, BothVariantsRerouteDuringFailure) {
  const auto c = inject_failure(testing::triangle_frr(60s), testing::kLinkAB, {at(20s), at(30s)});
  const auto r = verify_frr(c);
  EXPECT_EQ(r.frr_verification_failures, 0u);
  std::map<FrrVariant, std::uint64_t> rerouted;
  for (const auto& rec : r.frr_log) {
    if (!rec.rerouted) continue;
    ++rerouted[rec.variant];
    EXPECT_GE(rec.at, at(20s));
    EXPECT_LT(rec.at, at(30s) + 50ms);
    const auto d = wire::strip_encap(rec.output);
    EXPECT_EQ(d.outer.destination, testing::kThirdLo);
  }
  // 10 s at 100 pps minus the detection delay.
  for (auto v : {FrrVariant::kMap, FrrVariant::kTimestamp}) {
    EXPECT_GE(rerouted[v], 990u) << to_string(v);
    EXPECT_LE(rerouted[v], 1010u) << to_string(v);
  }
  EXPECT_EQ(r.rerouted_packets, rerouted[FrrVariant::kMap] + rerouted[FrrVariant::kTimestamp]);
  EXPECT_TRUE(r.packets.reconciles());
}

TEST(VerifyFrr, RequiresTrafficAndPolicy) {
  auto c = testing::triangle_frr();
  c.traffic.clear();
  EXPECT_THROW(verify_frr(c), ConfigError);
  c = testing::triangle_frr();
  c.frr.clear();
  EXPECT_THROW(verify_frr(c), ConfigError);
}

void expect_field(const SimConfig& c, const std::string& field) {
  try {
    c.validate();
    ADD_FAILURE() << "expected ConfigError on " << field;
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

TEST(SimConfig, ValidationNamesTheField) {
  auto base = testing::triangle_frr();
  EXPECT_NO_THROW(base.validate());

  auto c = base;
  c.duration = 0s;
  expect_field(c, "duration");
  c = base;
  c.links[1].loss = 1.5;
  expect_field(c, "links[1].loss");
  c = base;
  c.links[0].one_way_delay = {2ms, 1ms};
  expect_field(c, "links[0].delay.max");
  c = base;
  c.nodes[2].addresses.push_back(testing::kMasterLo);
  expect_field(c, "nodes[2].addresses[1]");
  c = base;
  c.sessions[0].session.detection_time = 1ms;
  expect_field(c, "sessions[0].detection_time");
  c = base;
  c.stress["Z"] = {default_user_space_stress()};
  expect_field(c, "stress.Z");
  c = base;
  c.frr[0].repair.segments.clear();
  expect_field(c, "frr[0].repair");
  c = base;
  c.traffic[0].rate_pps = 0;
  expect_field(c, "traffic[0].rate_pps");
  c = base;
  c.links[0].failures = {{at(1s), at(3s)}, {at(2s), at(4s)}};
  EXPECT_THROW(c.validate(), OverlappingWindow);
}

TEST(Trace, HexLinesDecodeAsProbes) {
  auto c = two_node_ms(10, 3, 1, 100ms);
  c.record_trace = true;
  const auto r = run(c);
  ASSERT_EQ(r.trace.size(), 20u);
  std::istringstream in(format_trace(r.trace));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::int64_t ts;
    std::string dir, hex;
    fields >> ts >> dir >> hex;
    EXPECT_TRUE(dir == "A->B" || dir == "B->A");
    const auto bytes = wire::from_hex(hex);
    ASSERT_TRUE(bytes);
    EXPECT_EQ(*bytes, r.trace[n].bytes);
    EXPECT_NO_THROW(wire::decode_probe(*bytes));
    ++n;
  }
  EXPECT_EQ(n, r.trace.size());
}

TEST(StressProfiles, Defaults) {
  const auto u = default_user_space_stress();
  EXPECT_EQ(u.applies_to, Placement::kUserSpace);
  EXPECT_DOUBLE_EQ(u.hit_probability, 0.3);
  EXPECT_EQ(u.delay.max, 60ms);
  const auto d = default_datapath_stress();
  EXPECT_EQ(d.applies_to, Placement::kDatapath);
  EXPECT_DOUBLE_EQ(d.hit_probability, 0.05);
  EXPECT_EQ(d.delay.max, 1ms);
}

}  // namespace
}  // namespace srv6pulse::netsim
