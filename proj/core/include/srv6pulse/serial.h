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

#ifndef SRV6PULSE_SERIAL_H_
#define SRV6PULSE_SERIAL_H_

#include <concepts>
#include <type_traits>

namespace srv6pulse {

// Serial-number arithmetic (RFC 1982 style) with a half-range window:
// true iff `a` is strictly ahead of `b` modulo 2^N, N = bit width of T.
template <std::unsigned_integral T>
constexpr bool serial_ahead(T a, T b) {
  using S = std::make_signed_t<T>;
  return static_cast<S>(static_cast<T>(a - b)) > 0;
}

// Later of the two in serial order; ties and exact half-range return `a`.
template <std::unsigned_integral T>
constexpr T serial_max(T a, T b) {
  return serial_ahead(b, a) ? b : a;
}

}  // namespace srv6pulse

#endif  // SRV6PULSE_SERIAL_H_
