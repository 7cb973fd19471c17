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

#ifndef SRV6PULSE_REFLECTOR_H_
#define SRV6PULSE_REFLECTOR_H_

// The slave network function. It has no timers: every piece of liveness
// state is refreshed by a probe arriving at its segment, and every valid
// probe is forwarded to its next segment regardless of that state.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/serial.h"
#include "srv6pulse/types.h"
#include "srv6pulse/wire.h"

namespace srv6pulse::reflector {

// True iff `candidate` acknowledges something newer than `stored`. Zero is
// the master's failure-reset value and never counts as new.
constexpr bool is_new_ack(std::uint32_t candidate, std::uint32_t stored) {
  if (candidate == 0) return false;
  if (stored == 0) return true;
  return serial_ahead(candidate, stored);
}

// Canonical identity of a monitored path: source, segments in travel order,
// then the session id.
class PathKey {
 public:
  PathKey() = default;
  PathKey(const Ipv6Address& source, std::span<const Ipv6Address> travel_order, std::uint32_t session_id);
  static PathKey of(const wire::ProbePacket& pkt, std::uint32_t session_id);

  std::vector<Ipv6Address> path() const;
  std::uint32_t session_id() const;
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  friend auto operator<=>(const PathKey&, const PathKey&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct PathRecord {
  std::vector<Ipv6Address> path;
  Timestamp created{};
  Timestamp last_update{};  // last liveness refresh
  Timestamp last_seen{};    // last probe of any kind; drives eviction
  std::uint32_t last_ack = 0;
  std::uint64_t probes_seen = 0;
  std::uint64_t stale_acks_seen = 0;
};

enum class Verdict {
  kRefreshed,
  kStale,
  kNotMySegment,
  kMissingTlv,
  kNoMoreSegments,
};

const char* to_string(Verdict v);

struct ProbeResult {
  Verdict verdict;
  // Set for kRefreshed and kStale only.
  std::optional<wire::ProbePacket> forwarded;
  std::optional<PathKey> key;

  bool accepted() const { return forwarded.has_value(); }
};

struct Counters {
  std::uint64_t refreshed = 0;
  std::uint64_t stale = 0;
  std::uint64_t not_my_segment = 0;
  std::uint64_t missing_tlv = 0;
  std::uint64_t no_more_segments = 0;
  std::uint64_t evicted = 0;
};

// Liveness of one path as the timestamp-driven filter sees it: Down from
// last_update + detection_time until the next refresh. Fed with successive
// snapshots of the path's record; emits the implied transitions.
class LivenessView {
 public:
  LivenessView(std::uint32_t session_id, Duration detection_time)
      : session_id_(session_id), detection_time_(detection_time) {}

  // Returns the transitions implied since the previous observation. The
  // first observation brings the view Up at the record's creation.
  std::vector<Transition> observe(const PathRecord& record);
  // Closes the view at `now`: reports the pending Down, if any.
  std::optional<Transition> finish(Timestamp now) const;

  bool up() const { return up_; }

 private:
  std::uint32_t session_id_;
  Duration detection_time_;
  bool seen_ = false;
  bool up_ = false;
  Timestamp last_update_{};
};

class Reflector {
 public:
  // Records whose last probe is older than `eviction_horizon` are dropped;
  // zero disables eviction.
  explicit Reflector(Ipv6Address own_segment, Duration eviction_horizon = Duration::zero());

  ProbeResult process_probe(const wire::ProbePacket& pkt, Timestamp now);

  // Consistent copy of one record; (last_ack, last_update) are never torn.
  std::optional<PathRecord> record(const PathKey& key) const;
  std::optional<Timestamp> last_update(const PathKey& key) const;
  std::size_t size() const;
  Counters counters() const;
  const Ipv6Address& segment() const { return segment_; }

 private:
  void evict_idle(Timestamp now);

  Ipv6Address segment_;
  Duration eviction_horizon_;
  Timestamp next_sweep_{};
  mutable std::mutex mu_;
  std::map<PathKey, PathRecord> records_;
  Counters counters_;
};

}  // namespace srv6pulse::reflector

#endif  // SRV6PULSE_REFLECTOR_H_
