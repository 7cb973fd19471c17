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

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "srv6pulse/reflector.h"
#include "srv6pulse/wire.h"

namespace srv6pulse::netsim {

const char* to_string(Placement p) { return p == Placement::kUserSpace ? "user_space" : "datapath"; }

const char* to_string(FrrVariant v) { return v == FrrVariant::kMap ? "map" : "timestamp"; }

StressProfile default_user_space_stress() { return {Placement::kUserSpace, 0.3, {0ms, 60ms}}; }

StressProfile default_datapath_stress() { return {Placement::kDatapath, 0.05, {0ms, 1ms}}; }

namespace {

std::string idx(const char* field, std::size_t i) { return std::string(field) + "[" + std::to_string(i) + "]"; }

void check_range(const DelayRange& d, const std::string& field) {
  if (d.min < Duration::zero()) throw ConfigError(field + ".min", "delay must be >= 0");
  if (d.max < d.min) throw ConfigError(field + ".max", "max below min");
}

void check_windows(const std::vector<FailureWindow>& windows, Duration duration, const std::string& field) {
  std::vector<FailureWindow> sorted = windows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const auto& w = windows[i];
    if (w.start >= w.end) throw ConfigError(idx((field + ".failures").c_str(), i), "window start must precede end");
    if (w.start < Timestamp{} || w.end > Timestamp{duration}) {
      throw ConfigError(idx((field + ".failures").c_str(), i), "window lies outside the simulated duration");
    }
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start < sorted[i - 1].end) throw OverlappingWindow(field + ".failures", "failure windows overlap");
  }
}

// SplitMix64 finalizer; derives independent per-stream seeds.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, const std::string& stream) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : stream) h = (h ^ c) * 0x100000001B3ULL;
  return mix(seed ^ mix(h));
}

__extension__ using Uint128 = unsigned __int128;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Duration uniform_duration(std::mt19937_64& rng, const DelayRange& r) {
  if (r.max <= r.min) return r.min;
  const auto span = static_cast<Uint128>(r.max.count() - r.min.count() + 1);
  const auto offset = static_cast<std::int64_t>((span * rng()) >> 64);
  return r.min + Duration{offset};
}

}  // namespace

void SimConfig::validate() const {
  if (duration <= Duration::zero()) throw ConfigError("duration", "must be positive");

  std::set<std::string> names;
  std::map<Ipv6Address, std::string> owner;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name.empty()) throw ConfigError(idx("nodes", i) + ".name", "empty node name");
    if (!names.insert(nodes[i].name).second) throw ConfigError(idx("nodes", i) + ".name", "duplicate node name");
    for (std::size_t j = 0; j < nodes[i].addresses.size(); ++j) {
      if (!owner.emplace(nodes[i].addresses[j], nodes[i].name).second) {
        throw ConfigError(idx("nodes", i) + idx(".addresses", j), "address assigned twice");
      }
    }
  }
  auto require_node = [&](const std::string& name, const std::string& field) {
    if (!names.count(name)) throw ConfigError(field, "unknown node '" + name + "'");
  };
  auto owner_of = [&](const Ipv6Address& a, const std::string& field) -> const std::string& {
    auto it = owner.find(a);
    if (it == owner.end()) throw ConfigError(field, "address " + a.to_string() + " is not assigned to any node");
    return it->second;
  };

  std::set<std::pair<std::string, std::string>> adjacent;
  std::set<LinkId> link_ids;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto field = idx("links", i);
    const auto& l = links[i];
    require_node(l.a, field + ".a");
    require_node(l.b, field + ".b");
    if (l.a == l.b) throw ConfigError(field, "link endpoints must differ");
    if (!adjacent.insert(std::minmax(l.a, l.b)).second) throw ConfigError(field, "duplicate link between nodes");
    if (!link_ids.insert(l.link_id).second) throw ConfigError(field + ".link_id", "duplicate link id");
    check_range(l.one_way_delay, field + ".delay");
    if (!(l.loss >= 0.0 && l.loss <= 1.0)) throw ConfigError(field + ".loss", "must lie in [0, 1]");
    check_windows(l.failures, duration, field);
  }
  auto linked = [&](const std::string& a, const std::string& b) { return adjacent.count(std::minmax(a, b)) > 0; };

  std::set<Ipv6Address> reflector_segments;
  for (std::size_t i = 0; i < reflectors.size(); ++i) {
    const auto field = idx("reflectors", i);
    require_node(reflectors[i].node, field + ".node");
    if (owner_of(reflectors[i].segment, field + ".segment") != reflectors[i].node) {
      throw ConfigError(field + ".segment", "segment is not an address of node " + reflectors[i].node);
    }
    if (!reflector_segments.insert(reflectors[i].segment).second) throw ConfigError(field, "duplicate reflector");
  }

  std::set<std::uint32_t> session_ids;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    const auto field = idx("sessions", i);
    const auto& s = sessions[i];
    require_node(s.master_node, field + ".master");
    try {
      s.session.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(field + "." + e.field(), e.what());
    }
    if (!session_ids.insert(s.session.session_id).second) throw ConfigError(field + ".session_id", "duplicate session id");
    if (owner_of(s.session.self_addr, field + ".self_addr") != s.master_node) {
      throw ConfigError(field + ".self_addr", "not an address of node " + s.master_node);
    }
    const auto& slave = owner_of(s.session.slave_addr, field + ".slave_addr");
    if (!linked(s.master_node, slave)) throw ConfigError(field + ".slave_addr", "no link between master and slave");
    if (s.phase < Duration::zero()) throw ConfigError(field + ".phase", "must be >= 0");
  }

  for (const auto& [node, profiles] : stress) {
    const auto field = "stress." + node;
    require_node(node, field);
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const auto& p = profiles[i];
      if (!(p.hit_probability >= 0.0 && p.hit_probability <= 1.0)) {
        throw ConfigError(idx(field.c_str(), i) + ".hit_probability", "must lie in [0, 1]");
      }
      check_range(p.delay, idx(field.c_str(), i) + ".delay");
    }
  }

  for (std::size_t i = 0; i < frr.size(); ++i) {
    const auto field = idx("frr", i);
    const auto& f = frr[i];
    require_node(f.node, field + ".node");
    if (f.repair.segments.empty()) throw ConfigError(field + ".repair", "repair list is empty");
    if (!link_ids.count(f.repair.link_id)) throw ConfigError(field + ".link_id", "unknown link id");
    const auto& head = owner_of(f.repair.segments.front(), field + ".repair[0]");
    if (!linked(f.node, head)) throw ConfigError(field + ".repair[0]", "repair head is not adjacent to " + f.node);
    if (f.variant == FrrVariant::kTimestamp) {
      auto it = std::find_if(sessions.begin(), sessions.end(),
                             [&](const SessionSpec& s) { return s.session.session_id == f.session_id; });
      if (it == sessions.end()) throw ConfigError(field + ".session_id", "unknown session");
      if (!reflector_segments.count(it->session.slave_addr) || owner.at(it->session.slave_addr) != f.node) {
        throw ConfigError(field + ".session_id", "session's slave segment is not a reflector on " + f.node);
      }
      if (f.detection_time && *f.detection_time <= Duration::zero()) {
        throw ConfigError(field + ".detection_time", "must be positive");
      }
    }
  }

  for (std::size_t i = 0; i < traffic.size(); ++i) {
    const auto field = idx("traffic", i);
    const auto& t = traffic[i];
    require_node(t.source, field + ".source");
    const auto& dst = owner_of(t.destination, field + ".destination");
    if (dst != t.source && !linked(t.source, dst)) throw ConfigError(field + ".destination", "not adjacent to source");
    if (!(t.rate_pps > 0.0)) throw ConfigError(field + ".rate_pps", "must be positive");
    if (t.payload_size > 1400) throw ConfigError(field + ".payload_size", "at most 1400 octets");
  }
}

SimConfig inject_failure(const SimConfig& config, LinkId link, FailureWindow window) {
  SimConfig out = config;
  auto it = std::find_if(out.links.begin(), out.links.end(), [&](const LinkSpec& l) { return l.link_id == link; });
  if (it == out.links.end()) throw ConfigError("links", "no link with id " + std::to_string(link.value));
  const auto field = idx("links", static_cast<std::size_t>(it - out.links.begin()));
  if (window.start >= window.end || window.start < Timestamp{} || window.end > Timestamp{config.duration}) {
    throw OverlappingWindow(field + ".failures", "window lies outside the simulated duration");
  }
  for (const auto& w : it->failures) {
    if (window.start < w.end && w.start < window.end) throw OverlappingWindow(field + ".failures", "failure windows overlap");
  }
  it->failures.push_back(window);
  return out;
}

std::optional<Duration> RoleStats::mean_detection_latency() const {
  if (detection_latencies.empty()) return std::nullopt;
  Duration sum{0};
  for (auto d : detection_latencies) sum += d;
  return sum / static_cast<std::int64_t>(detection_latencies.size());
}

std::optional<Duration> RoleStats::max_detection_latency() const {
  if (detection_latencies.empty()) return std::nullopt;
  return *std::max_element(detection_latencies.begin(), detection_latencies.end());
}

std::string format_trace(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  for (const auto& r : trace) os << to_ns(r.at) << ' ' << r.direction << ' ' << wire::to_hex(r.bytes) << '\n';
  return os.str();
}

namespace {

enum class PacketKind { kProbe, kTraffic };

// A serial execution context (a user-space thread or a datapath queue).
// Actions run in submission order; stress may hold each one back.
struct Worker {
  std::optional<StressProfile> profile;
  std::mt19937_64 rng;
  Timestamp ready_at{};

  Timestamp admit(Timestamp nominal) {
    Timestamp exec = nominal;
    if (profile && profile->hit_probability > 0.0 && uniform01(rng) < profile->hit_probability) {
      exec += uniform_duration(rng, profile->delay);
    }
    exec = std::max(exec, ready_at);
    ready_at = exec;
    return exec;
  }
};

struct LinkRt {
  const LinkSpec* spec;
  std::size_t a;
  std::size_t b;
  std::mt19937_64 rng;

  bool failed_at(Timestamp t) const {
    return std::any_of(spec->failures.begin(), spec->failures.end(),
                       [t](const FailureWindow& w) { return t >= w.start && t < w.end; });
  }
};

struct SessionRt {
  const SessionSpec* spec;
  std::unique_ptr<monitor::MonitorSession> session;
  std::size_t node;
  std::size_t slave_node;
  std::size_t link;
  Worker timer;
  Worker rx;
  Duration detection_time;
  reflector::PathKey slave_key;
  std::optional<reflector::LivenessView> slave_view;
  std::vector<Transition> slave_transitions;
};

struct ReflectorRt {
  std::unique_ptr<reflector::Reflector> reflector;
  std::size_t node;
  Worker datapath;
};

struct NodeRt {
  const NodeSpec* spec;
  std::unique_ptr<frr::LinkStatusStore> store;
  std::vector<std::size_t> frr_policies;
};

struct Event {
  Timestamp at;
  std::uint64_t seq;
  bool carries_packet;
  std::function<void()> action;
};

struct EventAfter {
  bool operator()(const Event& x, const Event& y) const { return x.at != y.at ? x.at > y.at : x.seq > y.seq; }
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& config) : cfg_(config), end_(Timestamp{config.duration}) {
    config.validate();
    build();
  }

  CampaignReport execute() {
    for (std::size_t i = 0; i < sessions_.size(); ++i) {
      schedule_tick(i, Timestamp{sessions_[i].spec->phase});
    }
    for (std::size_t i = 0; i < cfg_.traffic.size(); ++i) schedule_traffic(i, 0);

    while (!queue_.empty() && queue_.top().at < end_) {
      Event ev = std::move(const_cast<Event&>(queue_.top()));
      queue_.pop();
      now_ = ev.at;
      if (ev.carries_packet) --in_flight_;
      ev.action();
    }
    report_.packets.in_flight_at_end = in_flight_;
    finish();
    return std::move(report_);
  }

 private:
  void build() {
    for (std::size_t i = 0; i < cfg_.nodes.size(); ++i) {
      nodes_.push_back({&cfg_.nodes[i], std::make_unique<frr::LinkStatusStore>(), {}});
      node_index_[cfg_.nodes[i].name] = i;
      for (const auto& a : cfg_.nodes[i].addresses) owner_[a] = i;
    }
    for (std::size_t i = 0; i < cfg_.links.size(); ++i) {
      const auto& l = cfg_.links[i];
      const std::size_t a = node_index_.at(l.a), b = node_index_.at(l.b);
      links_.push_back({&l, a, b, std::mt19937_64(stream_seed(cfg_.seed, "link/" + l.a + "/" + l.b))});
      link_between_[std::minmax(a, b)] = i;
    }
    std::map<std::size_t, Duration> horizon;
    for (const auto& s : cfg_.sessions) {
      auto& h = horizon[owner_.at(s.session.slave_addr)];
      h = std::max(h, 10 * s.session.effective_detection_time());
    }
    for (const auto& r : cfg_.reflectors) {
      const std::size_t node = node_index_.at(r.node);
      ReflectorRt rt;
      rt.reflector = std::make_unique<reflector::Reflector>(r.segment, horizon.count(node) ? horizon[node] : Duration{0});
      rt.node = node;
      rt.datapath = make_worker(r.node, Placement::kDatapath, "reflector/" + r.segment.to_string());
      reflector_by_segment_[r.segment] = reflectors_.size();
      reflectors_.push_back(std::move(rt));
    }
    for (const auto& s : cfg_.sessions) {
      SessionRt rt;
      rt.spec = &s;
      rt.session = std::make_unique<monitor::MonitorSession>(s.session);
      rt.node = node_index_.at(s.master_node);
      rt.slave_node = owner_.at(s.session.slave_addr);
      rt.link = link_between_.at(std::minmax(rt.node, rt.slave_node));
      const auto sid = std::to_string(s.session.session_id);
      rt.timer = make_worker(s.master_node, Placement::kUserSpace, "session/" + sid + "/timer");
      rt.rx = make_worker(s.master_node, Placement::kUserSpace, "session/" + sid + "/rx");
      rt.detection_time = s.session.effective_detection_time();
      const std::vector<Ipv6Address> travel{s.session.slave_addr, s.session.self_addr};
      rt.slave_key = reflector::PathKey(s.session.self_addr, travel, s.session.session_id);
      rt.slave_view.emplace(s.session.session_id, rt.detection_time);
      session_by_id_[s.session.session_id] = sessions_.size();
      sessions_.push_back(std::move(rt));
    }
    for (std::size_t i = 0; i < cfg_.frr.size(); ++i) nodes_[node_index_.at(cfg_.frr[i].node)].frr_policies.push_back(i);
  }

  Worker make_worker(const std::string& node, Placement placement, const std::string& stream) {
    Worker w;
    w.rng.seed(stream_seed(cfg_.seed, "stress/" + node + "/" + stream));
    if (auto it = cfg_.stress.find(node); it != cfg_.stress.end()) {
      for (const auto& p : it->second) {
        if (p.applies_to == placement) {
          w.profile = p;
          break;
        }
      }
    }
    return w;
  }

  void push(Timestamp at, bool carries_packet, std::function<void()> action) {
    if (carries_packet) ++in_flight_;
    queue_.push({at, next_seq_++, carries_packet, std::move(action)});
  }

  // ---- master timers ----------------------------------------------------

  void schedule_tick(std::size_t s, Timestamp at) {
    push(at, false, [this, s] {
      auto& rt = sessions_[s];
      const Timestamp tick = now_;
      push(rt.timer.admit(tick), false, [this, s] {
        auto& rt = sessions_[s];
        rt.session->check_timeout(now_, *nodes_[rt.node].store);
      });
      push(rt.timer.admit(tick), false, [this, s] {
        auto& rt = sessions_[s];
        auto pkt = rt.session->send_probe(now_);
        ++report_.packets.injected;
        transmit(rt.node, wire::encode_probe(pkt), PacketKind::kProbe);
      });
      schedule_tick(s, tick + rt.session->config().interval);
    });
  }

  // ---- links --------------------------------------------------------------

  void transmit(std::size_t from, wire::Bytes bytes, PacketKind kind) {
    const auto dst = Ipv6Address::from_bytes(std::span(bytes).subspan(24, 16));
    auto own = owner_.find(dst);
    if (own == owner_.end()) {
      ++report_.packets.dropped_by_node;
      return;
    }
    const std::size_t to = own->second;
    if (to == from) {
      deliver(to, std::move(bytes), kind);
      return;
    }
    auto li = link_between_.find(std::minmax(from, to));
    if (li == link_between_.end()) {
      ++report_.packets.dropped_by_node;
      return;
    }
    auto& link = links_[li->second];
    if (cfg_.record_trace) {
      report_.trace.push_back({now_, nodes_[from].spec->name + "->" + nodes_[to].spec->name, bytes});
    }
    if (link.failed_at(now_)) {
      ++report_.packets.dropped_by_failure;
      return;
    }
    if (link.spec->loss > 0.0 && uniform01(link.rng) < link.spec->loss) {
      ++report_.packets.lost_by_link;
      return;
    }
    const Timestamp arrival = now_ + uniform_duration(link.rng, link.spec->one_way_delay);
    const std::size_t link_index = li->second;
    push(arrival, true, [this, to, link_index, kind, b = std::move(bytes)]() mutable {
      if (links_[link_index].failed_at(now_)) {
        ++report_.packets.dropped_by_failure;
        return;
      }
      deliver(to, std::move(b), kind);
    });
  }

  void deliver(std::size_t node, wire::Bytes bytes, PacketKind kind) {
    if (kind == PacketKind::kTraffic) {
      ++report_.packets.delivered;
      return;
    }
    const auto dst = Ipv6Address::from_bytes(std::span(bytes).subspan(24, 16));
    if (auto r = reflector_by_segment_.find(dst); r != reflector_by_segment_.end() && reflectors_[r->second].node == node) {
      const std::size_t ri = r->second;
      push(reflectors_[ri].datapath.admit(now_), true, [this, ri, b = std::move(bytes)] { reflect(ri, b); });
      return;
    }
    wire::ProbePacket pkt;
    try {
      pkt = wire::decode_probe(bytes);
    } catch (const wire::CodecError&) {
      ++report_.packets.dropped_by_node;
      return;
    }
    const auto tlv = pkt.probe();
    auto s = tlv ? session_by_id_.find(tlv->session_id) : session_by_id_.end();
    if (s == session_by_id_.end() || sessions_[s->second].node != node) {
      ++report_.packets.dropped_by_node;
      return;
    }
    ++report_.packets.delivered;
    const std::size_t si = s->second;
    push(sessions_[si].rx.admit(now_), false, [this, si, p = std::move(pkt)] {
      auto& rt = sessions_[si];
      rt.session->on_probe_return(p, now_, *nodes_[rt.node].store);
    });
  }

  // ---- slave --------------------------------------------------------------

  void reflect(std::size_t ri, const wire::Bytes& bytes) {
    auto& rt = reflectors_[ri];
    wire::ProbePacket pkt;
    try {
      pkt = wire::decode_probe(bytes);
    } catch (const wire::CodecError&) {
      ++report_.packets.dropped_by_node;
      return;
    }
    auto result = rt.reflector->process_probe(pkt, now_);
    if (!result.accepted()) {
      ++report_.packets.dropped_by_node;
      return;
    }
    if (auto s = session_by_id_.find(result.key->session_id()); s != session_by_id_.end()) {
      auto& srt = sessions_[s->second];
      if (srt.slave_key == *result.key) observe_slave(srt, *rt.reflector->record(*result.key));
    }
    transmit(rt.node, wire::encode_probe(*result.forwarded), PacketKind::kProbe);
  }

  void observe_slave(SessionRt& rt, const reflector::PathRecord& rec) {
    for (const auto& t : rt.slave_view->observe(rec)) rt.slave_transitions.push_back(t);
  }

  // ---- traffic and FRR -----------------------------------------------------

  void schedule_traffic(std::size_t ti, std::uint64_t k) {
    const auto& t = cfg_.traffic[ti];
    const auto offset = Duration{static_cast<std::int64_t>(static_cast<double>(k) * 1e9 / t.rate_pps)};
    const Timestamp at = t.start + offset;
    if (at >= end_ || (t.end && at >= *t.end)) return;
    push(at, false, [this, ti, k] {
      originate(ti, k);
      schedule_traffic(ti, k + 1);
    });
  }

  wire::Bytes make_traffic_packet(const TrafficSpec& t, std::size_t src, std::uint64_t k) const {
    wire::Ipv6Header h;
    h.source = nodes_[src].spec->addresses.front();
    h.destination = t.destination;
    h.flow_label = static_cast<std::uint32_t>(k & 0xFFFFF);
    h.payload_length = static_cast<std::uint16_t>(t.payload_size);
    wire::Bytes out;
    wire::encode_ipv6_header(h, out);
    for (std::size_t i = 0; i < t.payload_size; ++i) out.push_back(static_cast<std::uint8_t>((k + i) & 0xFF));
    return out;
  }

  void originate(std::size_t ti, std::uint64_t k) {
    const auto& t = cfg_.traffic[ti];
    const std::size_t src = node_index_.at(t.source);
    wire::Bytes pkt = make_traffic_packet(t, src, k);
    ++report_.packets.injected;

    const std::size_t dst = owner_.at(t.destination);
    const FrrSpec* policy = nullptr;
    if (auto li = link_between_.find(std::minmax(src, dst)); li != link_between_.end()) {
      for (std::size_t fi : nodes_[src].frr_policies) {
        if (cfg_.frr[fi].repair.link_id == links_[li->second].spec->link_id) {
          policy = &cfg_.frr[fi];
          break;
        }
      }
    }
    if (!policy) {
      transmit(src, std::move(pkt), PacketKind::kTraffic);
      return;
    }

    frr::FrrAction action = frr::Pass{};
    if (policy->variant == FrrVariant::kMap) {
      action = frr::evaluate_master_frr(pkt, policy->repair, *nodes_[src].store);
    } else {
      const auto& srt = sessions_[session_by_id_.at(policy->session_id)];
      const auto& rrt = reflectors_[reflector_by_segment_.at(srt.spec->session.slave_addr)];
      if (auto last = rrt.reflector->last_update(srt.slave_key)) {
        action = frr::evaluate_slave_frr(pkt, policy->repair, *last, now_,
                                         policy->detection_time.value_or(srt.detection_time));
      }
    }
    wire::Bytes out = frr::apply(action, pkt, nodes_[src].spec->addresses.front());
    const bool rerouted = !frr::is_pass(action);
    bool verified = false;
    if (!rerouted) {
      verified = out == pkt;
      ++report_.passed_packets;
    } else {
      ++report_.rerouted_packets;
      try {
        auto d = wire::strip_encap(out);
        verified = d.inner == pkt && d.outer.destination == policy->repair.segments.front() &&
                   d.srh.active_segment() == policy->repair.segments.front();
      } catch (const wire::CodecError&) {
        verified = false;
      }
    }
    if (!verified) ++report_.frr_verification_failures;
    report_.frr_log.push_back({now_, t.source, policy->variant, rerouted, verified, out});
    transmit(src, std::move(out), PacketKind::kTraffic);
  }

  // ---- classification -----------------------------------------------------

  void classify(const SessionRt& rt, const std::vector<Transition>& log, RoleStats& stats) const {
    const auto& link = *links_[rt.link].spec;
    const Duration guard = link.one_way_delay.max;
    const Duration tail = rt.detection_time + rt.spec->session.interval + guard;
    std::vector<bool> detected(link.failures.size(), false);
    std::vector<bool> recovered(link.failures.size(), false);
    for (const auto& t : log) {
      stats.transitions.push_back(t);
      if (t.to == LinkState::kDown) {
        bool inside = false;
        for (std::size_t w = 0; w < link.failures.size(); ++w) {
          const auto& win = link.failures[w];
          if (t.at >= win.start - guard && t.at < win.end + tail) {
            inside = true;
            if (!detected[w]) {
              detected[w] = true;
              stats.detection_latencies.push_back(std::max(Duration{0}, t.at - win.start));
            }
          }
        }
        inside ? ++stats.true_detections : ++stats.false_positives;
      } else {
        for (std::size_t w = 0; w < link.failures.size(); ++w) {
          const auto& win = link.failures[w];
          if (detected[w] && !recovered[w] && t.at >= win.end) {
            recovered[w] = true;
            stats.recovery_latencies.push_back(t.at - win.end);
          }
        }
      }
    }
  }

  void finish() {
    for (auto& rt : sessions_) {
      if (auto t = rt.slave_view->finish(end_)) rt.slave_transitions.push_back(*t);
      classify(rt, rt.session->transitions(), report_.master);
      classify(rt, rt.slave_transitions, report_.slave);
    }
    auto by_time = [](const Transition& a, const Transition& b) { return a.at < b.at; };
    std::stable_sort(report_.master.transitions.begin(), report_.master.transitions.end(), by_time);
    std::stable_sort(report_.slave.transitions.begin(), report_.slave.transitions.end(), by_time);
  }

  const SimConfig& cfg_;
  const Timestamp end_;
  Timestamp now_{};
  std::uint64_t next_seq_ = 0;
  std::uint64_t in_flight_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;

  std::vector<NodeRt> nodes_;
  std::map<std::string, std::size_t> node_index_;
  std::map<Ipv6Address, std::size_t> owner_;
  std::vector<LinkRt> links_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> link_between_;
  std::vector<SessionRt> sessions_;
  std::map<std::uint32_t, std::size_t> session_by_id_;
  std::vector<ReflectorRt> reflectors_;
  std::map<Ipv6Address, std::size_t> reflector_by_segment_;

  CampaignReport report_;
};

}  // namespace

CampaignReport run(const SimConfig& config) { return Simulator(config).execute(); }

CampaignReport verify_frr(const SimConfig& config) {
  if (config.traffic.empty()) throw ConfigError("traffic", "FRR verification needs at least one traffic flow");
  if (config.frr.empty()) throw ConfigError("frr", "FRR verification needs at least one installed policy");
  return run(config);
}

}  // namespace srv6pulse::netsim
