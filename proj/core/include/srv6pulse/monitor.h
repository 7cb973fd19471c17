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

#ifndef SRV6PULSE_MONITOR_H_
#define SRV6PULSE_MONITOR_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "srv6pulse/frr.h"
#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/types.h"
#include "srv6pulse/wire.h"

namespace srv6pulse::monitor {

using srv6pulse::Transition;

struct SessionConfig {
  std::uint32_t session_id = 1;
  Ipv6Address self_addr;
  Ipv6Address slave_addr;
  Duration interval{std::chrono::milliseconds(10)};
  // Defaults to 3 x interval.
  std::optional<Duration> detection_time;
  LinkId link_id;
  std::uint8_t hop_limit = wire::kDefaultHopLimit;

  Duration effective_detection_time() const { return detection_time.value_or(3 * interval); }
  // Throws ConfigError.
  void validate() const;
};

enum class ReturnOutcome {
  kAccepted,
  kRecovered,     // accepted and the session went Down -> Up
  kNotForMe,      // destination is not self_addr
  kWrongSession,  // session_id mismatch, ignored
  kMissingTlv,
};

struct SessionCounters {
  std::uint64_t probes_sent = 0;
  std::uint64_t loopbacks = 0;
  std::uint64_t reset_loopbacks = 0;  // returned (0, 0) probes
  std::uint64_t wrong_session = 0;
  std::uint64_t not_for_me = 0;
  std::uint64_t missing_tlv = 0;
};

// Master-side liveness session. Starts Down and comes Up on the first probe
// that loops back. While Down every probe carries SEQ = ACK = 0.
//
// Not internally synchronized: send_probe, on_probe_return and
// check_timeout on one session must be mutually exclusive.
class MonitorSession {
 public:
  explicit MonitorSession(SessionConfig config);

  wire::ProbePacket send_probe(Timestamp now);
  ReturnOutcome on_probe_return(const wire::ProbePacket& pkt, Timestamp now, frr::LinkStatusStore& store);
  // Returns true when this call moved the session Up -> Down.
  bool check_timeout(Timestamp now, frr::LinkStatusStore& store);

  const SessionConfig& config() const { return config_; }
  LinkState state() const { return state_; }
  std::uint32_t next_seq() const { return next_seq_; }
  std::uint32_t highest_looped() const { return highest_looped_; }
  Timestamp last_loopback() const { return last_loopback_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const SessionCounters& counters() const { return counters_; }

  // Called synchronously on every state change, after it is logged.
  void set_transition_listener(std::function<void(const Transition&)> listener) { listener_ = std::move(listener); }

  // Test hook: place the session in an arbitrary Up state.
  void restore(LinkState state, std::uint32_t next_seq, std::uint32_t highest_looped, Timestamp last_loopback);

 private:
  void transition(Timestamp now, LinkState to, frr::LinkStatusStore& store);

  SessionConfig config_;
  Duration detection_time_;
  LinkState state_ = LinkState::kDown;
  std::uint32_t next_seq_ = 1;
  std::uint32_t highest_looped_ = 0;
  Timestamp last_loopback_{};
  std::vector<Transition> transitions_;
  SessionCounters counters_;
  std::function<void(const Transition&)> listener_;
};

}  // namespace srv6pulse::monitor

#endif  // SRV6PULSE_MONITOR_H_
