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

#ifndef SRV6PULSE_FRR_H_
#define SRV6PULSE_FRR_H_

// TI-LFA fast-reroute filters. A filter never rewrites the packet itself:
// it returns the action and the caller applies wire::push_encap.

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/types.h"
#include "srv6pulse/wire.h"

namespace srv6pulse::frr {

// Repair lists longer than this are accepted but flagged by
// RepairList::exceeds_guarantee().
inline constexpr std::size_t kGuaranteedRepairSegments = 4;

struct RepairList {
  LinkId link_id;
  std::vector<Ipv6Address> segments;  // travel order

  // Throws ConfigError on an empty list.
  void validate() const;
  bool exceeds_guarantee() const { return segments.size() > kGuaranteedRepairSegments; }
};

struct Pass {};
struct Encapsulate {
  const RepairList* policy;
};
using FrrAction = std::variant<Pass, Encapsulate>;

inline bool is_pass(const FrrAction& a) { return std::holds_alternative<Pass>(a); }

// Per-link status flags shared between one detector (writer) and any number
// of forwarding paths (readers). Links never written read as Up.
class LinkStatusStore {
 public:
  LinkState get(LinkId link) const;
  void set(LinkId link, LinkState state);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<LinkId, std::unique_ptr<std::atomic<std::uint8_t>>> status_;
};

inline void set_link_status(LinkStatusStore& store, LinkId link, LinkState state) { store.set(link, state); }

// Map-driven filter used next to the master: reroute iff the detector has
// marked the policy's link Down.
FrrAction evaluate_master_frr(wire::ByteView pkt, const RepairList& policy, const LinkStatusStore& store);

class ClockSkew : public Error {
 public:
  using Error::Error;
};

// Timestamp-driven filter used on the slave, which has no timers: the link
// is Down once the last liveness refresh is at least detection_time old.
FrrAction evaluate_slave_frr(wire::ByteView pkt, const RepairList& policy, Timestamp last_rx, Timestamp now,
                             Duration detection_time);

// Applies an action: Pass returns the input bytes untouched.
wire::Bytes apply(const FrrAction& action, wire::ByteView pkt, const Ipv6Address& outer_src);

}  // namespace srv6pulse::frr

#endif  // SRV6PULSE_FRR_H_
