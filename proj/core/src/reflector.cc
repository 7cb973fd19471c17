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

#include "srv6pulse/reflector.h"

#include <algorithm>

namespace srv6pulse::reflector {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kRefreshed: return "Refreshed";
    case Verdict::kStale: return "Stale";
    case Verdict::kNotMySegment: return "NotMySegment";
    case Verdict::kMissingTlv: return "MissingTlv";
    case Verdict::kNoMoreSegments: return "NoMoreSegments";
  }
  return "Unknown";
}

PathKey::PathKey(const Ipv6Address& source, std::span<const Ipv6Address> travel_order, std::uint32_t session_id) {
  bytes_.reserve(16 * (1 + travel_order.size()) + 4);
  auto append = [this](const Ipv6Address& a) { bytes_.insert(bytes_.end(), a.octets().begin(), a.octets().end()); };
  append(source);
  for (const auto& a : travel_order) append(a);
  for (int shift = 24; shift >= 0; shift -= 8) bytes_.push_back(static_cast<std::uint8_t>(session_id >> shift));
}

PathKey PathKey::of(const wire::ProbePacket& pkt, std::uint32_t session_id) {
  std::vector<Ipv6Address> travel(pkt.srh.segments.rbegin(), pkt.srh.segments.rend());
  return PathKey(pkt.outer.source, travel, session_id);
}

std::vector<Ipv6Address> PathKey::path() const {
  std::vector<Ipv6Address> out;
  const std::size_t n = (bytes_.size() - 4) / 16;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Ipv6Address::from_bytes(std::span(bytes_).subspan(16 * i, 16)));
  return out;
}

std::uint32_t PathKey::session_id() const {
  std::uint32_t id = 0;
  for (std::size_t i = bytes_.size() - 4; i < bytes_.size(); ++i) id = (id << 8) | bytes_[i];
  return id;
}

std::vector<Transition> LivenessView::observe(const PathRecord& record) {
  std::vector<Transition> out;
  if (!seen_) {
    seen_ = true;
    up_ = true;
    last_update_ = record.last_update;
    out.push_back({record.last_update, session_id_, LinkState::kDown, LinkState::kUp});
    return out;
  }
  if (record.last_update == last_update_) return out;
  if (up_ && record.last_update - last_update_ >= detection_time_) {
    out.push_back({last_update_ + detection_time_, session_id_, LinkState::kUp, LinkState::kDown});
    up_ = false;
  }
  if (!up_) {
    out.push_back({record.last_update, session_id_, LinkState::kDown, LinkState::kUp});
    up_ = true;
  }
  last_update_ = record.last_update;
  return out;
}

std::optional<Transition> LivenessView::finish(Timestamp now) const {
  if (!seen_ || !up_ || now - last_update_ < detection_time_) return std::nullopt;
  return Transition{last_update_ + detection_time_, session_id_, LinkState::kUp, LinkState::kDown};
}

Reflector::Reflector(Ipv6Address own_segment, Duration eviction_horizon)
    : segment_(own_segment), eviction_horizon_(eviction_horizon) {}

ProbeResult Reflector::process_probe(const wire::ProbePacket& pkt, Timestamp now) {
  std::lock_guard lock(mu_);
  if (pkt.outer.destination != segment_) {
    ++counters_.not_my_segment;
    return {Verdict::kNotMySegment, std::nullopt, std::nullopt};
  }
  const auto tlv = pkt.probe();
  if (!tlv) {
    ++counters_.missing_tlv;
    return {Verdict::kMissingTlv, std::nullopt, std::nullopt};
  }
  if (pkt.srh.segments_left == 0) {
    ++counters_.no_more_segments;
    return {Verdict::kNoMoreSegments, std::nullopt, std::nullopt};
  }

  evict_idle(now);

  PathKey key = PathKey::of(pkt, tlv->session_id);
  auto [it, inserted] = records_.try_emplace(key);
  PathRecord& rec = it->second;
  if (inserted) {
    rec.path = key.path();
    rec.created = now;
    rec.last_update = now;
  }
  rec.last_seen = now;
  ++rec.probes_seen;

  Verdict verdict;
  if (is_new_ack(tlv->ack, rec.last_ack)) {
    rec.last_ack = tlv->ack;
    rec.last_update = now;
    verdict = Verdict::kRefreshed;
    ++counters_.refreshed;
  } else {
    ++rec.stale_acks_seen;
    verdict = Verdict::kStale;
    ++counters_.stale;
  }
  return {verdict, wire::advance_segment(pkt), std::move(key)};
}

void Reflector::evict_idle(Timestamp now) {
  if (eviction_horizon_ <= Duration::zero() || now < next_sweep_) return;
  next_sweep_ = now + eviction_horizon_ / 4;
  const auto before = records_.size();
  std::erase_if(records_, [&](const auto& kv) { return now - kv.second.last_seen > eviction_horizon_; });
  counters_.evicted += before - records_.size();
}

std::optional<PathRecord> Reflector::record(const PathKey& key) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::optional<Timestamp> Reflector::last_update(const PathKey& key) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  return it->second.last_update;
}

std::size_t Reflector::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

Counters Reflector::counters() const {
  std::lock_guard lock(mu_);
  return counters_;
}

}  // namespace srv6pulse::reflector
