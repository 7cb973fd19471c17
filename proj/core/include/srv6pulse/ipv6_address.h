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

#ifndef SRV6PULSE_IPV6_ADDRESS_H_
#define SRV6PULSE_IPV6_ADDRESS_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace srv6pulse {

// 128-bit IPv6 address in network byte order, totally ordered bytewise.
class Ipv6Address {
 public:
  static constexpr std::size_t kSize = 16;
  using Bytes = std::array<std::uint8_t, kSize>;

  constexpr Ipv6Address() = default;
  constexpr explicit Ipv6Address(const Bytes& octets) : octets_(octets) {}

  // Parses textual notation (RFC 4291). Returns nullopt on malformed input.
  static std::optional<Ipv6Address> parse(std::string_view text);
  // Like parse() but throws srv6pulse::Error.
  static Ipv6Address from_string(std::string_view text);
  static Ipv6Address from_bytes(std::span<const std::uint8_t> bytes);

  const Bytes& octets() const { return octets_; }
  std::string to_string() const;

  friend constexpr auto operator<=>(const Ipv6Address&, const Ipv6Address&) = default;

 private:
  Bytes octets_{};
};

}  // namespace srv6pulse

#endif  // SRV6PULSE_IPV6_ADDRESS_H_
