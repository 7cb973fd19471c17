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

#ifndef SRV6PULSE_SHELL_JSON_UTIL_H_
#define SRV6PULSE_SHELL_JSON_UTIL_H_

// Field-path aware accessors over nlohmann::json. Internal to the shell.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "json.hpp"
#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/netsim.h"
#include "srv6pulse/types.h"

namespace srv6pulse::shell::json_util {

using nlohmann::json;

inline std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
inline std::string at_index(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

inline const json& require(const json& obj, const std::string& key, const std::string& base) {
  if (!obj.is_object()) throw ConfigError(base, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(base, key), "missing required field");
  return *it;
}

inline const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

inline double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "expected a finite number");
  return d;
}

template <typename T>
T integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) throw ConfigError(field, "out of range");
    return static_cast<T>(u);
  }
  const auto s = v.get<std::int64_t>();
  if (s < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
      (s > 0 && static_cast<std::uint64_t>(s) > static_cast<std::uint64_t>(std::numeric_limits<T>::max()))) {
    throw ConfigError(field, "out of range");
  }
  return static_cast<T>(s);
}

inline std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

inline bool boolean(const json& v, const std::string& field) {
  if (!v.is_boolean()) throw ConfigError(field, "expected true or false");
  return v.get<bool>();
}

inline Ipv6Address address(const json& v, const std::string& field) {
  auto a = Ipv6Address::parse(string(v, field));
  if (!a) throw ConfigError(field, "malformed IPv6 address");
  return *a;
}

// Converts a value expressed in `unit_ns` nanoseconds, rounding to the
// nearest nanosecond.
inline Duration duration(const json& v, const std::string& field, double unit_ns) {
  const double ns = number(v, field) * unit_ns;
  if (ns < 0 || ns > 9.2e18) throw ConfigError(field, "duration out of range");
  return Duration{static_cast<std::int64_t>(std::llround(ns))};
}

inline const json& array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array");
  return v;
}

netsim::StressProfile stress_profile(const json& v, const std::string& field);

}  // namespace srv6pulse::shell::json_util

#endif  // SRV6PULSE_SHELL_JSON_UTIL_H_
