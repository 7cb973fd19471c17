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

#include "shell/campaign.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>

#include "shell/config_json.h"
#include "shell/json_util.h"

namespace srv6pulse::shell {

using namespace json_util;

const char* to_string(StressedRole r) { return r == StressedRole::kMaster ? "master" : "slave"; }

void Manifest::validate() const {
  if (intervals_ms.empty()) throw ConfigError("intervals_ms", "sweep is empty");
  if (multipliers.empty()) throw ConfigError("multipliers", "sweep is empty");
  if (seeds.empty()) throw ConfigError("seeds", "no seeds given");
  if (roles.empty()) throw ConfigError("roles", "no roles given");
  for (std::size_t i = 0; i < intervals_ms.size(); ++i) {
    if (!(intervals_ms[i] > 0)) throw ConfigError(at_index("intervals_ms", i), "must be positive");
  }
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    if (multipliers[i] == 0) throw ConfigError(at_index("multipliers", i), "must be positive");
  }
  if (run_count() > max_runs) {
    throw ConfigError("max_runs", std::to_string(run_count()) + " runs exceed the cap of " + std::to_string(max_runs));
  }
  if (duration && *duration <= Duration::zero()) throw ConfigError("duration_ms", "must be positive");
}

Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  Manifest m;
  std::filesystem::path cfg = string(require(root, "config", ""), "config");
  m.config_path = cfg.is_absolute() ? cfg : base_dir / cfg;

  const auto& iv = array(require(root, "intervals_ms", ""), "intervals_ms");
  for (std::size_t i = 0; i < iv.size(); ++i) m.intervals_ms.push_back(number(iv[i], at_index("intervals_ms", i)));
  const auto& mu = array(require(root, "multipliers", ""), "multipliers");
  for (std::size_t i = 0; i < mu.size(); ++i) m.multipliers.push_back(integer<std::uint32_t>(mu[i], at_index("multipliers", i)));
  if (const auto* s = optional_field(root, "seeds")) {
    array(*s, "seeds");
    for (std::size_t i = 0; i < s->size(); ++i) m.seeds.push_back(integer<std::uint64_t>((*s)[i], at_index("seeds", i)));
  } else {
    m.seeds = {1};
  }
  if (const auto* r = optional_field(root, "roles")) {
    array(*r, "roles");
    m.roles.clear();
    for (std::size_t i = 0; i < r->size(); ++i) {
      const auto name = string((*r)[i], at_index("roles", i));
      if (name == "master") {
        m.roles.push_back(StressedRole::kMaster);
      } else if (name == "slave") {
        m.roles.push_back(StressedRole::kSlave);
      } else {
        throw ConfigError(at_index("roles", i), "expected \"master\" or \"slave\"");
      }
    }
  }
  if (const auto* st = optional_field(root, "stress")) {
    std::vector<netsim::StressProfile> profiles;
    if (st->is_string()) {
      if (st->get<std::string>() != "default") throw ConfigError("stress", "expected \"default\", a list or null");
      profiles = {netsim::default_user_space_stress(), netsim::default_datapath_stress()};
    } else {
      array(*st, "stress");
      for (std::size_t i = 0; i < st->size(); ++i) profiles.push_back(stress_profile((*st)[i], at_index("stress", i)));
    }
    m.stress = std::move(profiles);
  }
  if (const auto* d = optional_field(root, "duration_ms")) m.duration = duration(*d, "duration_ms", 1e6);
  if (const auto* c = optional_field(root, "max_runs")) m.max_runs = integer<std::size_t>(*c, "max_runs");
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.parent_path());
}

void apply_seed_override(Manifest& manifest, const char* env_value) {
  if (!env_value || !*env_value) return;
  std::vector<std::uint64_t> seeds;
  std::string_view rest(env_value);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ConfigError("SRV6PULSE_SEED", "expected comma-separated unsigned integers");
    }
    seeds.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  manifest.seeds = std::move(seeds);
}

netsim::SimConfig point_config(const netsim::SimConfig& base, const Manifest& manifest, double interval_ms,
                               std::uint32_t multiplier, std::uint64_t seed, StressedRole role) {
  netsim::SimConfig c = base;
  c.seed = seed;
  if (manifest.duration) c.duration = *manifest.duration;
  const auto interval = Duration{static_cast<std::int64_t>(std::llround(interval_ms * 1e6))};
  for (auto& s : c.sessions) {
    s.session.interval = interval;
    s.session.detection_time = interval * multiplier;
  }
  for (auto& f : c.frr) f.detection_time.reset();
  if (manifest.stress) {
    c.stress.clear();
    for (const auto& s : c.sessions) {
      std::string host = s.master_node;
      if (role == StressedRole::kSlave) {
        for (const auto& n : c.nodes) {
          if (std::find(n.addresses.begin(), n.addresses.end(), s.session.slave_addr) != n.addresses.end()) host = n.name;
        }
      }
      c.stress[host] = *manifest.stress;
    }
  }
  return c;
}

namespace {

CampaignRow summarize(const netsim::CampaignReport& report, double interval_ms, std::uint32_t multiplier,
                      std::uint64_t seed, StressedRole role) {
  const auto& stats = role == StressedRole::kMaster ? report.master : report.slave;
  CampaignRow row;
  row.interval_ms = interval_ms;
  row.multiplier = multiplier;
  row.detection_ms = interval_ms * multiplier;
  row.seed = seed;
  row.role = role;
  row.false_positives = stats.false_positives;
  row.true_detections = stats.true_detections;
  auto to_ms = [](Duration d) { return static_cast<double>(d.count()) / 1e6; };
  if (auto m = stats.mean_detection_latency()) row.mean_latency_ms = to_ms(*m);
  if (auto m = stats.max_detection_latency()) row.max_latency_ms = to_ms(*m);
  row.rerouted_packets = report.rerouted_packets;
  return row;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(v);
}

std::string fixed3(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", *v);
  return buf;
}

}  // namespace

std::vector<CampaignRow> run_campaign(const Manifest& manifest, const netsim::SimConfig& base, unsigned jobs) {
  manifest.validate();
  struct Point {
    double interval_ms;
    std::uint32_t multiplier;
    std::uint64_t seed;
    StressedRole role;
  };
  std::vector<Point> points;
  for (double iv : manifest.intervals_ms) {
    for (auto mult : manifest.multipliers) {
      for (auto seed : manifest.seeds) {
        for (auto role : manifest.roles) points.push_back({iv, mult, seed, role});
      }
    }
  }
  // Validate every point up front so a bad sweep fails before any work.
  std::vector<netsim::SimConfig> configs;
  configs.reserve(points.size());
  for (const auto& p : points) {
    configs.push_back(point_config(base, manifest, p.interval_ms, p.multiplier, p.seed, p.role));
    configs.back().validate();
  }

  std::vector<CampaignRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const auto& p = points[i];
        rows[i] = summarize(netsim::run(configs[i]), p.interval_ms, p.multiplier, p.seed, p.role);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_csv(const std::vector<CampaignRow>& rows, std::ostream& out) {
  out << kCsvVersionLine << '\n' << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << shortest(r.interval_ms) << ',' << r.multiplier << ',' << shortest(r.detection_ms) << ',' << r.seed << ','
        << to_string(r.role) << ',' << r.false_positives << ',' << r.true_detections << ',' << fixed3(r.mean_latency_ms)
        << ',' << fixed3(r.max_latency_ms) << ',' << r.rerouted_packets << '\n';
  }
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Manifest manifest = load_manifest(args.manifest);
    apply_seed_override(manifest, std::getenv("SRV6PULSE_SEED"));
    manifest.validate();
    const auto base = load_sim_config(manifest.config_path);
    const auto rows = run_campaign(manifest, base, args.jobs);

    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create " + args.out_dir.string() + ": " + ec.message());
    const auto path = args.out_dir / "results.csv";
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + path.string());
    write_csv(rows, file);
    file.close();
    if (!file) throw IoError("failed writing " + path.string());
    out << "wrote " << rows.size() << " rows to " << path.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace srv6pulse::shell
