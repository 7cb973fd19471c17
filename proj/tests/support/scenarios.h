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

#ifndef SRV6PULSE_TESTS_SUPPORT_SCENARIOS_H_
#define SRV6PULSE_TESTS_SUPPORT_SCENARIOS_H_

// Canned simulator topologies shared by unit and acceptance tests.

#include <chrono>

#include "srv6pulse/netsim.h"

namespace srv6pulse::testing {

using namespace std::chrono_literals;

inline const Ipv6Address kMasterLo = Ipv6Address::from_string("2001:db8::a");
inline const Ipv6Address kSlaveLo = Ipv6Address::from_string("2001:db8::b");
inline const Ipv6Address kSlaveSegment = Ipv6Address::from_string("2001:db8::b5");
inline const Ipv6Address kThirdLo = Ipv6Address::from_string("2001:db8::c");

inline constexpr LinkId kLinkAB{1};
inline constexpr LinkId kLinkAC{2};
inline constexpr LinkId kLinkBC{3};

inline Timestamp at(Duration d) { return Timestamp{} + d; }

// Master on A probing the reflector segment on B over one 100 us link.
inline netsim::SimConfig two_node(Duration interval, int multiplier, std::uint64_t seed,
                                  Duration duration = 900s) {
  netsim::SimConfig c;
  c.seed = seed;
  c.duration = duration;
  c.nodes = {{"A", {kMasterLo}}, {"B", {kSlaveLo, kSlaveSegment}}};
  netsim::LinkSpec ab;
  ab.a = "A";
  ab.b = "B";
  ab.link_id = kLinkAB;
  c.links = {ab};
  netsim::SessionSpec s;
  s.master_node = "A";
  s.session.session_id = 1;
  s.session.self_addr = kMasterLo;
  s.session.slave_addr = kSlaveSegment;
  s.session.interval = interval;
  s.session.detection_time = multiplier * interval;
  s.session.link_id = kLinkAB;
  c.sessions = {s};
  c.reflectors = {{"B", kSlaveSegment}};
  return c;
}

inline netsim::SimConfig two_node_ms(int interval_ms, int multiplier, std::uint64_t seed,
                                     Duration duration = 900s) {
  return two_node(std::chrono::milliseconds(interval_ms), multiplier, seed, duration);
}

// Stress on one host: user-space components get the overload profile and
// the datapath on the same host gets interrupt latency.
inline void stress_host(netsim::SimConfig& c, const std::string& node) {
  c.stress[node] = {netsim::default_user_space_stress(), netsim::default_datapath_stress()};
}

// Triangle A-B-C. A protects A-B with the map filter, B protects B-A with
// the timestamp filter; both repair via C. Traffic flows both ways across
// the protected link.
inline netsim::SimConfig triangle_frr(Duration duration = 60s, double rate_pps = 100.0) {
  auto c = two_node(10ms, 3, 1, duration);
  c.nodes.push_back({"C", {kThirdLo}});
  netsim::LinkSpec ac;
  ac.a = "A";
  ac.b = "C";
  ac.link_id = kLinkAC;
  netsim::LinkSpec bc;
  bc.a = "B";
  bc.b = "C";
  bc.link_id = kLinkBC;
  c.links.push_back(ac);
  c.links.push_back(bc);

  netsim::FrrSpec map;
  map.node = "A";
  map.variant = netsim::FrrVariant::kMap;
  map.repair = {kLinkAB, {kThirdLo, kSlaveLo}};
  netsim::FrrSpec ts;
  ts.node = "B";
  ts.variant = netsim::FrrVariant::kTimestamp;
  ts.repair = {kLinkAB, {kThirdLo, kMasterLo}};
  ts.session_id = 1;
  c.frr = {map, ts};

  netsim::TrafficSpec ab;
  ab.source = "A";
  ab.destination = kSlaveLo;
  ab.rate_pps = rate_pps;
  netsim::TrafficSpec ba;
  ba.source = "B";
  ba.destination = kMasterLo;
  ba.rate_pps = rate_pps;
  c.traffic = {ab, ba};
  return c;
}

}  // namespace srv6pulse::testing

#endif  // SRV6PULSE_TESTS_SUPPORT_SCENARIOS_H_
