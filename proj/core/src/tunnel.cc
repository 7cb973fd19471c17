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

#include "srv6pulse/tunnel.h"

#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "srv6pulse/frr.h"
#include "srv6pulse/monitor.h"
#include "srv6pulse/reflector.h"
#include "srv6pulse/wire.h"

namespace srv6pulse::tunnel {
namespace {

Timestamp mono_now() {
  return std::chrono::time_point_cast<Duration>(std::chrono::steady_clock::now());
}

struct Resolved {
  sockaddr_storage addr{};
  socklen_t len = 0;
  int family = AF_UNSPEC;
};

Resolved resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_DGRAM;
  hints.ai_flags = passive ? AI_PASSIVE : 0;
  addrinfo* res = nullptr;
  const auto port = std::to_string(ep.port);
  const int rc = getaddrinfo(ep.host.empty() ? nullptr : ep.host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0 || !res) throw SocketError("cannot resolve " + ep.to_string() + ": " + gai_strerror(rc));
  Resolved r;
  std::memcpy(&r.addr, res->ai_addr, res->ai_addrlen);
  r.len = res->ai_addrlen;
  r.family = res->ai_family;
  freeaddrinfo(res);
  return r;
}

class UdpSocket {
 public:
  explicit UdpSocket(const Endpoint& local) {
    const auto addr = resolve(local, true);
    fd_ = ::socket(addr.family, SOCK_DGRAM, 0);
    if (fd_ < 0) throw SocketError(std::string("socket: ") + std::strerror(errno));
    if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr.addr), addr.len) != 0) {
      const std::string err = std::strerror(errno);
      ::close(fd_);
      throw SocketError("bind " + local.to_string() + ": " + err);
    }
  }
  ~UdpSocket() {
    if (fd_ >= 0) ::close(fd_);
  }
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;

  void send_to(const Resolved& peer, wire::ByteView bytes) const {
    // Send failures (peer down, ICMP unreachable) are expected while the
    // peer restarts; liveness logic handles the silence.
    (void)::sendto(fd_, bytes.data(), bytes.size(), 0, reinterpret_cast<const sockaddr*>(&peer.addr), peer.len);
  }

  // Waits up to `timeout`; returns nullopt on timeout or transient error.
  std::optional<wire::Bytes> receive(std::chrono::milliseconds timeout) const {
    pollfd pfd{fd_, POLLIN, 0};
    if (::poll(&pfd, 1, static_cast<int>(timeout.count())) <= 0) return std::nullopt;
    wire::Bytes buf(65536);
    const auto n = ::recv(fd_, buf.data(), buf.size(), 0);
    if (n < 0) return std::nullopt;
    buf.resize(static_cast<std::size_t>(n));
    return buf;
  }

 private:
  int fd_ = -1;
};

void log_transition(std::ostream& log, std::mutex& log_mu, const Transition& t) {
  std::lock_guard lock(log_mu);
  log << to_ns(t.at) << ' ' << to_string(t.from) << ' ' << to_string(t.to) << ' ' << t.session_id << '\n';
  log.flush();
}

TunnelSummary run_master(const TunnelOptions& opt, const std::atomic<bool>& stop, std::ostream& log,
                         const TransitionSink& sink) {
  UdpSocket sock(opt.listen);
  const auto peer = resolve(opt.peer, false);

  monitor::SessionConfig cfg;
  cfg.session_id = opt.session_id;
  cfg.self_addr = opt.self_addr;
  cfg.slave_addr = opt.slave_addr;
  cfg.interval = opt.interval;
  cfg.detection_time = opt.detection_time();
  monitor::MonitorSession session(cfg);
  frr::LinkStatusStore store;
  std::mutex session_mu;  // serializes timer and receive paths
  std::mutex log_mu;
  TunnelSummary summary;
  session.set_transition_listener([&](const Transition& t) {
    ++summary.transitions;
    log_transition(log, log_mu, t);
    if (sink) sink(t);
  });

  std::thread receiver([&] {
    while (!stop.load()) {
      auto bytes = sock.receive(std::chrono::milliseconds(20));
      if (!bytes) continue;
      const Timestamp now = mono_now();
      wire::ProbePacket pkt;
      try {
        pkt = wire::decode_probe(*bytes);
      } catch (const wire::CodecError&) {
        std::lock_guard lock(session_mu);
        ++summary.malformed;
        continue;
      }
      std::lock_guard lock(session_mu);
      ++summary.probes_received;
      session.on_probe_return(pkt, now, store);
    }
  });

  auto next = std::chrono::steady_clock::now();
  while (!stop.load()) {
    wire::Bytes out;
    {
      std::lock_guard lock(session_mu);
      const Timestamp now = mono_now();
      session.check_timeout(now, store);
      out = wire::encode_probe(session.send_probe(now));
      ++summary.probes_sent;
    }
    sock.send_to(peer, out);
    next += opt.interval;
    std::this_thread::sleep_until(next);
  }
  receiver.join();
  std::lock_guard lock(session_mu);
  summary.final_state = session.state();
  return summary;
}

TunnelSummary run_slave(const TunnelOptions& opt, const std::atomic<bool>& stop, std::ostream& log,
                        const TransitionSink& sink) {
  UdpSocket sock(opt.listen);
  const auto peer = resolve(opt.peer, false);
  reflector::Reflector refl(opt.slave_addr, 10 * opt.detection_time());
  const std::vector<Ipv6Address> travel{opt.slave_addr, opt.self_addr};
  const reflector::PathKey key(opt.self_addr, travel, opt.session_id);
  reflector::LivenessView view(opt.session_id, opt.detection_time());
  std::mutex log_mu;
  TunnelSummary summary;

  while (!stop.load()) {
    auto bytes = sock.receive(std::chrono::milliseconds(20));
    if (!bytes) continue;
    const Timestamp now = mono_now();
    wire::ProbePacket pkt;
    try {
      pkt = wire::decode_probe(*bytes);
    } catch (const wire::CodecError&) {
      ++summary.malformed;
      continue;
    }
    ++summary.probes_received;
    auto result = refl.process_probe(pkt, now);
    if (!result.accepted()) {
      ++summary.malformed;
      continue;
    }
    sock.send_to(peer, wire::encode_probe(*result.forwarded));
    ++summary.probes_sent;
    if (*result.key == key) {
      for (const auto& t : view.observe(*refl.record(key))) {
        ++summary.transitions;
        log_transition(log, log_mu, t);
        if (sink) sink(t);
      }
    }
  }
  summary.final_state = view.up() ? LinkState::kUp : LinkState::kDown;
  return summary;
}

}  // namespace

Endpoint Endpoint::parse(const std::string& text) {
  Endpoint ep;
  std::string port;
  if (!text.empty() && text.front() == '[') {
    const auto close = text.find(']');
    if (close == std::string::npos || close + 1 >= text.size() || text[close + 1] != ':') {
      throw ConfigError("endpoint", "expected [addr]:port, got '" + text + "'");
    }
    ep.host = text.substr(1, close - 1);
    port = text.substr(close + 2);
  } else {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw ConfigError("endpoint", "expected host:port, got '" + text + "'");
    ep.host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(port, &used);
    if (used != port.size() || v > 65535) throw std::out_of_range("port");
    ep.port = static_cast<std::uint16_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("endpoint", "bad port in '" + text + "'");
  }
  return ep;
}

std::string Endpoint::to_string() const {
  return (host.find(':') != std::string::npos ? "[" + host + "]" : host) + ":" + std::to_string(port);
}

void TunnelOptions::validate() const {
  if (interval <= Duration::zero()) throw ConfigError("interval_ms", "must be positive");
  if (multiplier == 0) throw ConfigError("multiplier", "must be positive");
  if (detection_time() < std::chrono::milliseconds(1)) {
    throw ConfigError("multiplier", "detection time below 1 ms is not supported in live mode");
  }
}

TunnelSummary run(const TunnelOptions& options, const std::atomic<bool>& stop, std::ostream& log) {
  return run(options, stop, log, nullptr);
}

TunnelSummary run(const TunnelOptions& options, const std::atomic<bool>& stop, std::ostream& log,
                  const TransitionSink& sink) {
  options.validate();
  return options.role == Role::kMaster ? run_master(options, stop, log, sink) : run_slave(options, stop, log, sink);
}

}  // namespace srv6pulse::tunnel
