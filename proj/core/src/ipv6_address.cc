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

#include "srv6pulse/ipv6_address.h"

#include <arpa/inet.h>

#include <algorithm>

#include "srv6pulse/types.h"

namespace srv6pulse {

std::optional<Ipv6Address> Ipv6Address::parse(std::string_view text) {
  std::string buf(text);
  Bytes octets{};
  if (inet_pton(AF_INET6, buf.c_str(), octets.data()) != 1) return std::nullopt;
  return Ipv6Address(octets);
}

Ipv6Address Ipv6Address::from_string(std::string_view text) {
  auto addr = parse(text);
  if (!addr) throw Error("malformed IPv6 address '" + std::string(text) + "'");
  return *addr;
}

Ipv6Address Ipv6Address::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSize) throw Error("IPv6 address needs 16 octets");
  Bytes octets{};
  std::copy_n(bytes.begin(), kSize, octets.begin());
  return Ipv6Address(octets);
}

std::string Ipv6Address::to_string() const {
  char buf[INET6_ADDRSTRLEN] = {};
  inet_ntop(AF_INET6, octets_.data(), buf, sizeof(buf));
  return buf;
}

}  // namespace srv6pulse
