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

// Acceptance suite. Prints one "PASS|FAIL <n> <title> -- <detail>" line per
// criterion and exits non-zero when a gating criterion fails. Pass criterion
// numbers as arguments to run a subset.
//
// Environment:
//   SRV6PULSE_SMOKE_SECONDS  length of the live tunnel smoke test (default 5)

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "shell/campaign.h"
#include "shell/config_json.h"
#include "srv6pulse/netsim.h"
#include "srv6pulse/tunnel.h"
#include "srv6pulse/wire.h"
#include "support/generators.h"
#include "support/protocol_reference.h"
#include "support/scenarios.h"

namespace {

using namespace srv6pulse;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  const char* title;
  bool gating;
  std::function<Outcome()> check;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string ms(Duration d) {
  std::ostringstream os;
  os << static_cast<double>(d.count()) / 1e6 << "ms";
  return os.str();
}

// ---- 1 -------------------------------------------------------------------

Outcome codec_soundness() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(0x5EED);
  std::size_t mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto pkt = testing::random_probe_packet(rng);
    const auto bytes = wire::encode_probe(pkt);
    const auto back = wire::decode_probe(bytes);
    if (!(back == pkt) || wire::encode_probe(back) != bytes) ++mismatches;
  }

  std::size_t decoded = 0, rejected = 0, other = 0;
  wire::Bytes buf;
  for (int i = 0; i < 100000; ++i) {
    if (i % 4 == 0) {
      // Mutated valid packet: bit flips plus a random cut.
      buf = wire::encode_probe(testing::random_probe_packet(rng));
      for (int f = 0; f < 1 + static_cast<int>(rng() % 4); ++f) buf[rng() % buf.size()] ^= 1u << (rng() % 8);
      buf.resize(rng() % (buf.size() + 1));
    } else {
      buf.resize(rng() % (9 * 1024 + 1));
      for (std::size_t k = 0; k < buf.size(); k += 8) {
        const auto r = rng();
        for (std::size_t b = 0; b < 8 && k + b < buf.size(); ++b) buf[k + b] = static_cast<std::uint8_t>(r >> (8 * b));
      }
      if (buf.size() > 2 && i % 2) buf[2] = wire::kRoutingTypeSrh;  // get past the type check more often
    }
    for (int layer = 0; layer < 2; ++layer) {
      try {
        if (layer == 0) {
          (void)wire::decode_srh(buf);
        } else {
          (void)wire::decode_probe(buf);
        }
        ++decoded;
      } catch (const wire::CodecError&) {
        ++rejected;
      } catch (...) {
        ++other;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "10000 round trips, " << mismatches << " mismatches; 100000 fuzz inputs: " << decoded << " decoded, "
    << rejected << " typed errors, " << other << " other; " << secs << "s";
  return {mismatches == 0 && other == 0 && secs < 60.0, d.str()};
}

// ---- 2 -------------------------------------------------------------------

Outcome ideal_zero_fp() {
  std::ostringstream d;
  bool ok = true;
  double worst = 0;
  std::uint64_t fp = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    for (int iv : {5, 10, 20, 40}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = netsim::run(testing::two_node_ms(iv, 3, seed));
      worst = std::max(worst, seconds_since(t0));
      fp += r.master.false_positives + r.slave.false_positives;
      if (r.master.false_positives || r.slave.false_positives || !r.packets.reconciles()) {
        ok = false;
        d << "[seed " << seed << " 3x" << iv << "ms master=" << r.master.false_positives
          << " slave=" << r.slave.false_positives << "] ";
      }
    }
  }
  d << "900s runs, 4 intervals x 3 seeds, total false positives " << fp << ", slowest point " << worst << "s";
  return {ok && worst < 30.0, d.str()};
}

// ---- 3 and 4 -------------------------------------------------------------

constexpr int kIntervals[] = {5, 10, 20, 40};
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

struct StressGrid {
  // [seed index][interval index]
  std::uint64_t master[5][4]{};
  std::uint64_t slave[5][4]{};
  double seconds = 0;
};

const StressGrid& stress_grid() {
  static const StressGrid grid = [] {
    StressGrid g;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t s = 0; s < 5; ++s) {
      for (std::size_t i = 0; i < 4; ++i) {
        auto on_master = testing::two_node_ms(kIntervals[i], 3, kSeeds[s]);
        testing::stress_host(on_master, "A");
        g.master[s][i] = netsim::run(on_master).master.false_positives;
        auto on_slave = testing::two_node_ms(kIntervals[i], 3, kSeeds[s]);
        testing::stress_host(on_slave, "B");
        g.slave[s][i] = netsim::run(on_slave).slave.false_positives;
      }
    }
    g.seconds = seconds_since(t0);
    return g;
  }();
  return grid;
}

std::string row(const std::uint64_t (&v)[4]) {
  std::ostringstream os;
  os << v[0] << '/' << v[1] << '/' << v[2] << '/' << v[3];
  return os.str();
}

Outcome fig_shape() {
  const auto& g = stress_grid();
  bool ok = true;
  std::ostringstream d;
  d << "master-stressed master FP 3x{5,10,20,40}ms per seed:";
  for (std::size_t s = 0; s < 5; ++s) {
    const auto& m = g.master[s];
    const bool monotone = m[0] >= m[1] && m[1] >= m[2] && m[2] >= m[3];
    const bool ratio = m[0] >= 100 * m[3] && m[0] > 0;
    ok = ok && monotone && ratio;
    d << ' ' << row(m) << (monotone && ratio ? "" : "(!)");
  }
  d << "; " << g.seconds << "s for the stressed grid";
  return {ok && g.seconds < 300.0, d.str()};
}

Outcome slave_robustness() {
  const auto& g = stress_grid();
  bool ok = true;
  std::ostringstream d;
  d << "slave-stressed slave FP 3x{5,10,20,40}ms per seed:";
  for (std::size_t s = 0; s < 5; ++s) {
    const auto& sl = g.slave[s];
    bool good = sl[0] <= 10 && sl[1] == 0 && sl[2] == 0 && sl[3] == 0;
    for (std::size_t i = 0; i < 4; ++i) good = good && sl[i] <= g.master[s][i];
    ok = ok && good;
    d << ' ' << row(sl) << (good ? "" : "(!)");
  }
  return {ok, d.str()};
}

// ---- 5 -------------------------------------------------------------------

Outcome detection_bound() {
  const Duration one_way = 100us;
  std::size_t detected = 0, recovered = 0, clean = 0;
  Duration worst_margin_det = Duration::max(), worst_margin_rec = Duration::max();
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int iv = kIntervals[trial % 4];
    const auto interval = std::chrono::milliseconds(iv);
    const auto det = 3 * interval;
    auto c = testing::two_node_ms(iv, 3, 1000 + trial, 6s);
    c.sessions[0].phase = Duration(static_cast<std::int64_t>(rng() % interval.count()));
    const auto start = testing::at(2s + Duration(static_cast<std::int64_t>(rng() % 100'000'000)));
    const auto end = start + 1s + Duration(static_cast<std::int64_t>(rng() % 100'000'000));
    c = netsim::inject_failure(c, testing::kLinkAB, {start, end});
    const auto r = netsim::run(c);

    // Oracle: first Down at or after the failure start, first Up after the end.
    std::optional<Timestamp> down, up;
    for (const auto& t : r.master.transitions) {
      if (!down && t.to == LinkState::kDown && t.at >= start) down = t.at;
      if (!up && t.to == LinkState::kUp && t.at >= end) up = t.at;
    }
    if (down && *down - start <= det + interval + 2 * one_way) {
      ++detected;
      worst_margin_det = std::min(worst_margin_det, det + interval + 2 * one_way - (*down - start));
    }
    if (up && *up - end <= interval + 2 * one_way) {
      ++recovered;
      worst_margin_rec = std::min(worst_margin_rec, interval + 2 * one_way - (*up - end));
    }
    if (r.master.false_positives == 0 && r.master.true_detections == 1) ++clean;
  }
  std::ostringstream d;
  d << "detected within bound " << detected << "/100, recovered within bound " << recovered
    << "/100, classified as exactly one true detection " << clean << "/100; tightest margins "
    << ms(worst_margin_det) << " / " << ms(worst_margin_rec);
  return {detected == 100 && recovered == 100 && clean == 100, d.str()};
}

// ---- 6 -------------------------------------------------------------------

Outcome frr_integration() {
  const auto start = testing::at(20s), end = testing::at(30s);
  const auto c = netsim::inject_failure(testing::triangle_frr(60s), testing::kLinkAB, {start, end});
  const auto r = netsim::verify_frr(c);

  // Reroute window per variant, taken from the detector that drives it.
  auto window = [&](const std::vector<Transition>& log) {
    std::optional<Timestamp> down, up;
    for (const auto& t : log) {
      if (!down && t.to == LinkState::kDown && t.at >= start) down = t.at;
      else if (down && !up && t.to == LinkState::kUp) up = t.at;
    }
    return std::make_pair(down.value_or(Timestamp::max()), up.value_or(Timestamp::max()));
  };
  const auto map_w = window(r.master.transitions);
  const auto ts_w = window(r.slave.transitions);

  std::map<netsim::FrrVariant, std::uint64_t> rerouted, passed, wrong_side, bad_bytes;
  for (const auto& rec : r.frr_log) {
    const auto [down, up] = rec.variant == netsim::FrrVariant::kMap ? map_w : ts_w;
    const bool inside = rec.at > down && rec.at < up;
    const bool outside = rec.at < down || rec.at > up;
    if ((inside && !rec.rerouted) || (outside && rec.rerouted)) ++wrong_side[rec.variant];
    if (rec.rerouted) {
      ++rerouted[rec.variant];
      try {
        const auto d = wire::strip_encap(rec.output);
        const auto inner = wire::decode_ipv6_header(d.inner);
        const auto head = rec.variant == netsim::FrrVariant::kMap ? c.frr[0].repair.segments.front()
                                                                  : c.frr[1].repair.segments.front();
        if (d.outer.destination != head || d.srh.active_segment() != head || inner.next_header == wire::kProtoRouting) {
          ++bad_bytes[rec.variant];
        }
      } catch (const wire::CodecError&) {
        ++bad_bytes[rec.variant];
      }
    } else {
      ++passed[rec.variant];
      const auto h = wire::decode_ipv6_header(rec.output);
      if (h.next_header == wire::kProtoRouting || rec.output.size() != 40 + 64) ++bad_bytes[rec.variant];
    }
  }

  bool ok = r.frr_verification_failures == 0 && r.packets.reconciles();
  std::ostringstream d;
  for (auto v : {netsim::FrrVariant::kMap, netsim::FrrVariant::kTimestamp}) {
    const bool good = wrong_side[v] == 0 && bad_bytes[v] == 0 && rerouted[v] >= 990 && rerouted[v] <= 1010 && passed[v] > 0;
    ok = ok && good;
    d << netsim::to_string(v) << ": rerouted " << rerouted[v] << ", passed " << passed[v] << ", misplaced "
      << wrong_side[v] << ", bad bytes " << bad_bytes[v] << "; ";
  }
  d << "simulator self-check failures " << r.frr_verification_failures;
  return {ok, d.str()};
}

// ---- 7 -------------------------------------------------------------------

Outcome seq_ack_oracle() {
  constexpr std::int64_t kI = 10'000'000;
  const std::pair<testing::ReferenceStart, std::int64_t> starts[] = {
      {{}, 2 * kI},
      {{}, 3 * kI},
      {{true, 100, 99}, 2 * kI},
      {{true, 0xFFFFFFFEu, 0xFFFFFFFDu}, 2 * kI},
      {{true, 1, 0}, 3 * kI},
  };
  std::size_t sequences = 0, disagreements = 0;
  std::string first;
  for (const auto& [start, det] : starts) {
    testing::for_each_sequence(6, [&](const std::vector<testing::ProbeFate>& fates) {
      ++sequences;
      if (auto diff = testing::replay(fates, start, kI, det)) {
        if (disagreements++ == 0) first = *diff;
      }
    });
  }
  std::ostringstream d;
  d << sequences << " event sequences (5 fates, length 1..6, 5 start states), " << disagreements << " disagreements";
  if (!first.empty()) d << "; first: " << first;
  return {disagreements == 0, d.str()};
}

// ---- 8 -------------------------------------------------------------------

Outcome determinism() {
  const fs::path configs = SRV6PULSE_CONFIG_DIR;
  const auto work = fs::temp_directory_path() / ("srv6pulse_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(work);
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{work};

  std::ostringstream d;
  bool ok = true;
  const std::pair<const char*, const char*> cases[] = {
      {"stressed.manifest.json", R"(, "duration_ms": 120000)"},
      {"frr.manifest.json", ""},
  };
  for (const auto& [name, extra] : cases) {
    auto text = shell::read_file(configs / name);
    const auto brace = text.rfind('}');
    text.insert(brace, extra);
    text.replace(text.find("\"config\": \"") + 11, 0, (configs.string() + "/"));
    std::ofstream(work / name) << text;
    std::string csv[3];
    const unsigned jobs[3] = {1, 1, 4};
    for (int k = 0; k < 3; ++k) {
      std::ostringstream out, err;
      const auto dir = work / (std::string(name) + std::to_string(k));
      if (shell::cmd_simulate({work / name, dir, jobs[k]}, out, err) != 0) {
        return {false, std::string(name) + ": " + err.str()};
      }
      csv[k] = shell::read_file(dir / "results.csv");
    }
    const bool same = csv[0] == csv[1] && csv[1] == csv[2];
    ok = ok && same && !csv[0].empty();
    d << name << ": 3 runs (jobs 1,1,4) " << (same ? "byte-identical" : "DIFFER") << " (" << csv[0].size()
      << " bytes); ";
  }
  return {ok, d.str()};
}

// ---- 9 -------------------------------------------------------------------

Outcome live_smoke() {
  long secs = 5;
  if (const char* env = std::getenv("SRV6PULSE_SMOKE_SECONDS")) secs = std::max(1L, std::strtol(env, nullptr, 10));
  const auto port = static_cast<std::uint16_t>(40000 + ::getpid() % 10000);
  auto opts = [&](tunnel::Role role, std::uint16_t listen, std::uint16_t peer) {
    tunnel::TunnelOptions o;
    o.role = role;
    o.listen = {"127.0.0.1", listen};
    o.peer = {"127.0.0.1", peer};
    return o;
  };
  std::atomic<bool> stop{false};
  std::ostringstream mlog, slog;
  std::mutex mu;
  std::vector<Transition> seen;
  std::string error;
  const auto started = std::chrono::time_point_cast<Duration>(std::chrono::steady_clock::now());
  tunnel::TunnelSummary ms_sum, sl_sum;
  std::thread slave([&] {
    try {
      sl_sum = tunnel::run(opts(tunnel::Role::kSlave, port + 1, port), stop, slog);
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      error = e.what();
    }
  });
  std::thread master([&] {
    try {
      ms_sum = tunnel::run(opts(tunnel::Role::kMaster, port, port + 1), stop, mlog, [&](const Transition& t) {
        std::lock_guard lock(mu);
        seen.push_back(t);
      });
    } catch (const std::exception& e) {
      std::lock_guard lock(mu);
      error = e.what();
    }
  });
  std::this_thread::sleep_for(std::chrono::seconds(secs));
  stop = true;
  master.join();
  slave.join();
  if (!error.empty()) return {false, "tunnel error: " + error};

  const bool up_fast = !seen.empty() && seen[0].to == LinkState::kUp && seen[0].at - started <= 30ms + 20ms;
  std::ostringstream d;
  d << secs << "s at 10ms/3x over loopback: " << seen.size() << " transitions, probes sent " << ms_sum.probes_sent
    << ", looped back " << ms_sum.probes_received;
  if (!seen.empty()) d << ", first Up after " << ms(seen[0].at - started);
  d << " (set SRV6PULSE_SMOKE_SECONDS=60 for the full run)";
  return {seen.size() == 1 && up_fast && ms_sum.final_state == LinkState::kUp, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "codec soundness", true, codec_soundness},
      {2, "ideal conditions give zero false positives", true, ideal_zero_fp},
      {3, "stressed master false positives fall with the threshold", true, fig_shape},
      {4, "stressed slave stays clean from 3x10ms", true, slave_robustness},
      {5, "detection and recovery latency bounds", true, detection_bound},
      {6, "fast reroute integration, both variants", true, frr_integration},
      {7, "SEQ/ACK reference model agreement", true, seq_ack_oracle},
      {8, "campaign CSV determinism", true, determinism},
      {9, "live tunnel smoke test (non-gating)", false, live_smoke},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int gating_failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.number)) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << c.number << ' ' << c.title << " -- " << o.detail << std::endl;
    if (!o.pass && c.gating) ++gating_failures;
  }
  return gating_failures == 0 ? 0 : 1;
}
