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

#include "srv6pulse/frr.h"

#include <mutex>

namespace srv6pulse::frr {

void RepairList::validate() const {
  if (segments.empty()) throw ConfigError("repair", "repair list for link " + std::to_string(link_id.value) + " is empty");
}

LinkState LinkStatusStore::get(LinkId link) const {
  std::shared_lock lock(mu_);
  auto it = status_.find(link);
  if (it == status_.end()) return LinkState::kUp;
  return static_cast<LinkState>(it->second->load(std::memory_order_acquire));
}

void LinkStatusStore::set(LinkId link, LinkState state) {
  const auto raw = static_cast<std::uint8_t>(state);
  {
    std::shared_lock lock(mu_);
    auto it = status_.find(link);
    if (it != status_.end()) {
      it->second->store(raw, std::memory_order_release);
      return;
    }
  }
  std::unique_lock lock(mu_);
  auto& slot = status_[link];
  if (!slot) slot = std::make_unique<std::atomic<std::uint8_t>>();
  slot->store(raw, std::memory_order_release);
}

std::size_t LinkStatusStore::size() const {
  std::shared_lock lock(mu_);
  return status_.size();
}

FrrAction evaluate_master_frr(wire::ByteView /*pkt*/, const RepairList& policy, const LinkStatusStore& store) {
  if (store.get(policy.link_id) == LinkState::kUp) return Pass{};
  return Encapsulate{&policy};
}

FrrAction evaluate_slave_frr(wire::ByteView /*pkt*/, const RepairList& policy, Timestamp last_rx, Timestamp now,
                             Duration detection_time) {
  if (now < last_rx) {
    throw ClockSkew("now (" + std::to_string(to_ns(now)) + ") precedes last reception (" +
                    std::to_string(to_ns(last_rx)) + ")");
  }
  if (now - last_rx < detection_time) return Pass{};
  return Encapsulate{&policy};
}

wire::Bytes apply(const FrrAction& action, wire::ByteView pkt, const Ipv6Address& outer_src) {
  if (const auto* enc = std::get_if<Encapsulate>(&action)) {
    return wire::push_encap(pkt, enc->policy->segments, outer_src);
  }
  return wire::Bytes(pkt.begin(), pkt.end());
}

}  // namespace srv6pulse::frr
