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

#ifndef SRV6PULSE_TYPES_H_
#define SRV6PULSE_TYPES_H_

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace srv6pulse {

using Duration = std::chrono::nanoseconds;

// Monotonic timestamps. The simulator counts from zero; live mode uses
// std::chrono::steady_clock. Wall-clock time never enters liveness logic.
using Timestamp = std::chrono::time_point<std::chrono::steady_clock, Duration>;

constexpr Timestamp at_ns(std::int64_t ns) { return Timestamp{Duration{ns}}; }
constexpr std::int64_t to_ns(Timestamp t) { return t.time_since_epoch().count(); }

// Key into a LinkStatusStore. Opaque to everything but the configuration.
struct LinkId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(LinkId, LinkId) = default;
};

enum class LinkState : std::uint8_t { kDown = 0, kUp = 1 };

inline const char* to_string(LinkState s) { return s == LinkState::kUp ? "Up" : "Down"; }

// A liveness state change for one session.
struct Transition {
  Timestamp at;
  std::uint32_t session_id;
  LinkState from;
  LinkState to;
};

// Base class for every error this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration. field() names the offending field path, e.g.
// "links[1].failures[0].end_ms".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace srv6pulse

template <>
struct std::hash<srv6pulse::LinkId> {
  std::size_t operator()(srv6pulse::LinkId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

#endif  // SRV6PULSE_TYPES_H_
