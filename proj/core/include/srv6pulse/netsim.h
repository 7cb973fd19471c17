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

#ifndef SRV6PULSE_NETSIM_H_
#define SRV6PULSE_NETSIM_H_

// Deterministic discrete-event simulation of master/slave liveness
// sessions over lossy, failure-prone links, with a scheduling-jitter model
// for components running in user space.
//
// A run is a pure function of its SimConfig (seed included). Events with
// equal timestamps execute in insertion order.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srv6pulse/frr.h"
#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/monitor.h"
#include "srv6pulse/types.h"

namespace srv6pulse::netsim {

using namespace std::chrono_literals;

// Uniform on [min, max]; min == max is a constant delay.
struct DelayRange {
  Duration min{0};
  Duration max{0};
};

struct FailureWindow {
  Timestamp start;
  Timestamp end;  // exclusive
};

struct NodeSpec {
  std::string name;
  std::vector<Ipv6Address> addresses;
};

struct LinkSpec {
  std::string a;
  std::string b;
  LinkId link_id;
  DelayRange one_way_delay{100us, 100us};
  double loss = 0.0;
  std::vector<FailureWindow> failures;
};

enum class Placement { kUserSpace, kDatapath };

const char* to_string(Placement p);

// Each action of a component with this placement is, with probability
// hit_probability, held back by a delay drawn uniformly from `delay`.
struct StressProfile {
  Placement applies_to = Placement::kUserSpace;
  double hit_probability = 0.0;
  DelayRange delay;
};

// Calibrated profile for an overloaded host: p = 0.3, U[0, 60 ms].
StressProfile default_user_space_stress();
// Interrupt latency on the same host: p = 0.05, U[0, 1 ms].
StressProfile default_datapath_stress();

struct SessionSpec {
  std::string master_node;
  monitor::SessionConfig session;
  // Offset of the first probe tick.
  Duration phase{0};
};

struct ReflectorSpec {
  std::string node;
  Ipv6Address segment;
};

enum class FrrVariant { kMap, kTimestamp };

const char* to_string(FrrVariant v);

struct FrrSpec {
  std::string node;
  FrrVariant variant = FrrVariant::kMap;
  frr::RepairList repair;
  // kTimestamp: the session whose slave-side record drives the filter.
  std::uint32_t session_id = 0;
  // kTimestamp: defaults to the session's detection time.
  std::optional<Duration> detection_time;
};

struct TrafficSpec {
  std::string source;
  Ipv6Address destination;
  double rate_pps = 100.0;
  Timestamp start{};
  std::optional<Timestamp> end;
  std::size_t payload_size = 64;
};

struct SimConfig {
  std::uint64_t seed = 1;
  Duration duration{900s};
  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<SessionSpec> sessions;
  std::vector<ReflectorSpec> reflectors;
  std::map<std::string, std::vector<StressProfile>> stress;
  std::vector<FrrSpec> frr;
  std::vector<TrafficSpec> traffic;
  bool record_trace = false;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

class OverlappingWindow : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Copy of `config` with `window` added to the link carrying `link`.
SimConfig inject_failure(const SimConfig& config, LinkId link, FailureWindow window);

struct RoleStats {
  std::uint64_t false_positives = 0;
  std::uint64_t true_detections = 0;
  // Failure start to the first Down inside each window.
  std::vector<Duration> detection_latencies;
  // Window end to the first Up after it.
  std::vector<Duration> recovery_latencies;
  std::vector<Transition> transitions;

  std::optional<Duration> mean_detection_latency() const;
  std::optional<Duration> max_detection_latency() const;
};

struct PacketCounters {
  std::uint64_t injected = 0;
  std::uint64_t delivered = 0;
  std::uint64_t lost_by_link = 0;
  std::uint64_t dropped_by_failure = 0;
  std::uint64_t dropped_by_node = 0;
  std::uint64_t in_flight_at_end = 0;

  bool reconciles() const {
    return injected == delivered + lost_by_link + dropped_by_failure + dropped_by_node + in_flight_at_end;
  }
};

struct FrrRecord {
  Timestamp at;
  std::string node;
  FrrVariant variant;
  bool rerouted;
  // Pass: output identical to input. Reroute: output decodes, is addressed
  // to the repair-list head and decapsulates to the input.
  bool verified;
  wire::Bytes output;
};

struct TraceRecord {
  Timestamp at;
  std::string direction;  // "A->B"
  wire::Bytes bytes;
};

struct CampaignReport {
  // Transitions declared by the master sessions.
  RoleStats master;
  // Liveness as seen by the slave-side filter: Down whenever the reflector
  // record is at least detection_time old.
  RoleStats slave;
  std::uint64_t rerouted_packets = 0;
  std::uint64_t passed_packets = 0;
  std::uint64_t frr_verification_failures = 0;
  std::vector<FrrRecord> frr_log;
  PacketCounters packets;
  std::vector<TraceRecord> trace;
};

CampaignReport run(const SimConfig& config);

// run() for a config that carries traffic across a protected link.
CampaignReport verify_frr(const SimConfig& config);

// One line per packet: "<timestamp_ns> <direction> <hex>".
std::string format_trace(const std::vector<TraceRecord>& trace);

}  // namespace srv6pulse::netsim

#endif  // SRV6PULSE_NETSIM_H_
