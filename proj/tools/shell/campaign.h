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

#ifndef SRV6PULSE_SHELL_CAMPAIGN_H_
#define SRV6PULSE_SHELL_CAMPAIGN_H_

// Parameter sweeps over the simulator and their CSV export.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "srv6pulse/netsim.h"

namespace srv6pulse::shell {

// Which host the manifest's stress profile lands on, and whose
// false-positive count the row reports.
enum class StressedRole { kMaster, kSlave };

const char* to_string(StressedRole r);

struct Manifest {
  std::filesystem::path config_path;
  std::vector<double> intervals_ms;
  std::vector<std::uint32_t> multipliers;
  std::vector<std::uint64_t> seeds;
  std::vector<StressedRole> roles{StressedRole::kMaster};
  // When set, replaces the config's stress map for every run: the profiles
  // go to the stressed role's host and nothing else is stressed.
  std::optional<std::vector<netsim::StressProfile>> stress;
  std::optional<Duration> duration;
  std::size_t max_runs = 1024;

  std::size_t run_count() const { return intervals_ms.size() * multipliers.size() * seeds.size(); }
  // Throws ConfigError (empty sweep, cap exceeded, bad values).
  void validate() const;
};

// `base_dir` resolves a relative "config" path.
Manifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);
Manifest load_manifest(const std::filesystem::path& path);

// SRV6PULSE_SEED: comma-separated seeds replacing the manifest's list.
void apply_seed_override(Manifest& manifest, const char* env_value);

struct CampaignRow {
  double interval_ms = 0;
  std::uint32_t multiplier = 0;
  double detection_ms = 0;
  std::uint64_t seed = 0;
  StressedRole role = StressedRole::kMaster;
  std::uint64_t false_positives = 0;
  std::uint64_t true_detections = 0;
  std::optional<double> mean_latency_ms;
  std::optional<double> max_latency_ms;
  std::uint64_t rerouted_packets = 0;
};

// The simulation config for one sweep point.
netsim::SimConfig point_config(const netsim::SimConfig& base, const Manifest& manifest, double interval_ms,
                               std::uint32_t multiplier, std::uint64_t seed, StressedRole role);

// Rows come back in sweep order (interval, multiplier, seed, role) whatever
// the number of worker threads.
std::vector<CampaignRow> run_campaign(const Manifest& manifest, const netsim::SimConfig& base, unsigned jobs = 1);

inline constexpr const char* kCsvVersionLine = "# srv6pulse-results v1";
inline constexpr const char* kCsvHeader =
    "interval_ms,multiplier,detection_ms,seed,role,false_positives,true_detections,mean_latency_ms,max_latency_ms,"
    "rerouted_packets";

void write_csv(const std::vector<CampaignRow>& rows, std::ostream& out);

struct SimulateArgs {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  unsigned jobs = 1;
};

// Writes <out_dir>/results.csv. Returns 0, 2 on configuration errors or 3 on
// I/O failures; diagnostics go to `err`.
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);

}  // namespace srv6pulse::shell

#endif  // SRV6PULSE_SHELL_CAMPAIGN_H_
