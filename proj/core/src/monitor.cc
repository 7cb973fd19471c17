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

#include "srv6pulse/monitor.h"

#include "srv6pulse/serial.h"

namespace srv6pulse::monitor {

void SessionConfig::validate() const {
  if (interval <= Duration::zero()) throw ConfigError("interval", "must be positive");
  if (effective_detection_time() < interval) throw ConfigError("detection_time", "must be at least one interval");
}

MonitorSession::MonitorSession(SessionConfig config)
    : config_(std::move(config)), detection_time_(config_.effective_detection_time()) {
  config_.validate();
}

wire::ProbePacket MonitorSession::send_probe(Timestamp /*now*/) {
  wire::ProbeTlv tlv;
  tlv.session_id = config_.session_id;
  tlv.interval_ms = static_cast<std::uint32_t>(std::chrono::duration_cast<std::chrono::milliseconds>(config_.interval).count());
  if (state_ == LinkState::kUp) {
    tlv.seq = next_seq_;
    tlv.ack = highest_looped_;
    next_seq_ = next_seq_ == UINT32_MAX ? 1 : next_seq_ + 1;
  }
  ++counters_.probes_sent;
  return wire::build_probe(config_.self_addr, config_.slave_addr, config_.self_addr, tlv, config_.hop_limit);
}

ReturnOutcome MonitorSession::on_probe_return(const wire::ProbePacket& pkt, Timestamp now, frr::LinkStatusStore& store) {
  if (pkt.outer.destination != config_.self_addr) {
    ++counters_.not_for_me;
    return ReturnOutcome::kNotForMe;
  }
  const auto tlv = pkt.probe();
  if (!tlv) {
    ++counters_.missing_tlv;
    return ReturnOutcome::kMissingTlv;
  }
  if (tlv->session_id != config_.session_id) {
    ++counters_.wrong_session;
    return ReturnOutcome::kWrongSession;
  }

  ++counters_.loopbacks;
  // Any loop-back, including a late duplicate or a reset probe, proves the
  // path in both directions.
  last_loopback_ = now;
  if (tlv->seq == 0) {
    ++counters_.reset_loopbacks;
  } else {
    highest_looped_ = highest_looped_ == 0 ? tlv->seq : serial_max(highest_looped_, tlv->seq);
  }
  if (state_ == LinkState::kDown) {
    transition(now, LinkState::kUp, store);
    return ReturnOutcome::kRecovered;
  }
  return ReturnOutcome::kAccepted;
}

bool MonitorSession::check_timeout(Timestamp now, frr::LinkStatusStore& store) {
  if (state_ != LinkState::kUp || now - last_loopback_ < detection_time_) return false;
  transition(now, LinkState::kDown, store);
  return true;
}

void MonitorSession::restore(LinkState state, std::uint32_t next_seq, std::uint32_t highest_looped,
                             Timestamp last_loopback) {
  state_ = state;
  next_seq_ = next_seq == 0 ? 1 : next_seq;
  highest_looped_ = highest_looped;
  last_loopback_ = last_loopback;
}

void MonitorSession::transition(Timestamp now, LinkState to, frr::LinkStatusStore& store) {
  const Transition t{now, config_.session_id, state_, to};
  state_ = to;
  frr::set_link_status(store, config_.link_id, to);
  transitions_.push_back(t);
  if (listener_) listener_(t);
}

}  // namespace srv6pulse::monitor
