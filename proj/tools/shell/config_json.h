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

#ifndef SRV6PULSE_SHELL_CONFIG_JSON_H_
#define SRV6PULSE_SHELL_CONFIG_JSON_H_

#include <filesystem>
#include <string>

#include "srv6pulse/netsim.h"

namespace srv6pulse::shell {

// Thrown when a file cannot be read or written (exit code 3).
class IoError : public Error {
 public:
  using Error::Error;
};

// Parses a JSON simulation config. Times carry their unit in the key
// (duration_ms, interval_ms, delay_us, ...). Throws ConfigError with the
// field path on any problem, including SimConfig::validate() failures.
netsim::SimConfig parse_sim_config(const std::string& json_text);
netsim::SimConfig load_sim_config(const std::filesystem::path& path);

// Parses "user_space"/"datapath" stress profiles, e.g.
// {"applies_to": "user_space", "hit_probability": 0.3, "delay_us": {"min": 0, "max": 60000}}.
netsim::StressProfile parse_stress_profile(const std::string& json_text, const std::string& field);

std::string read_file(const std::filesystem::path& path);

}  // namespace srv6pulse::shell

#endif  // SRV6PULSE_SHELL_CONFIG_JSON_H_
