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

#ifndef SRV6PULSE_TUNNEL_H_
#define SRV6PULSE_TUNNEL_H_

// Live master/slave over UDP. Each datagram carries one complete IPv6 + SRH
// probe, byte-for-byte what the simulator emits, with no extra framing.

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/types.h"

namespace srv6pulse::tunnel {

enum class Role { kMaster, kSlave };

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  // "host:port", "[v6]:port".
  static Endpoint parse(const std::string& text);
  std::string to_string() const;
};

struct TunnelOptions {
  Role role = Role::kMaster;
  Endpoint listen;
  Endpoint peer;
  Duration interval{std::chrono::milliseconds(10)};
  std::uint32_t multiplier = 3;
  std::uint32_t session_id = 1;
  Ipv6Address self_addr = Ipv6Address::from_string("2001:db8::a");
  Ipv6Address slave_addr = Ipv6Address::from_string("2001:db8::b5");

  Duration detection_time() const { return interval * multiplier; }
  // Throws ConfigError; live mode rejects detection times below 1 ms.
  void validate() const;
};

struct TunnelSummary {
  std::uint64_t probes_sent = 0;
  std::uint64_t probes_received = 0;
  std::uint64_t malformed = 0;
  std::uint64_t transitions = 0;
  std::optional<LinkState> final_state;
};

class SocketError : public Error {
 public:
  using Error::Error;
};

// Runs until `stop` becomes true. Transition lines
// "<ts_ns> <old> <new> <session_id>" go to `log`. Throws SocketError when
// the local endpoint cannot be bound.
TunnelSummary run(const TunnelOptions& options, const std::atomic<bool>& stop, std::ostream& log);

// Called with every transition the running tunnel logs (test hook).
using TransitionSink = std::function<void(const Transition&)>;
TunnelSummary run(const TunnelOptions& options, const std::atomic<bool>& stop, std::ostream& log,
                  const TransitionSink& sink);

}  // namespace srv6pulse::tunnel

#endif  // SRV6PULSE_TUNNEL_H_
