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

// Per-packet cost of the FRR filter: pass-through versus repair-list
// encapsulation, for both variants.

#include <benchmark/benchmark.h>

#include "srv6pulse/frr.h"

namespace {

using namespace srv6pulse;
using namespace std::chrono_literals;

wire::Bytes packet(std::size_t payload) {
  wire::Ipv6Header h;
  h.source = Ipv6Address::from_string("2001:db8::a");
  h.destination = Ipv6Address::from_string("2001:db8::b");
  h.next_header = 17;
  h.payload_length = static_cast<std::uint16_t>(payload);
  wire::Bytes out;
  wire::encode_ipv6_header(h, out);
  out.resize(out.size() + payload, 0xab);
  return out;
}

frr::RepairList repair(std::size_t n) {
  frr::RepairList r{LinkId{1}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Ipv6Address::Bytes b{0x20, 0x01, 0x0d, 0xb8};
    b[15] = static_cast<std::uint8_t>(i + 1);
    r.segments.emplace_back(b);
  }
  return r;
}

void BM_MasterFrr(benchmark::State& state) {
  const auto pkt = packet(64);
  const auto policy = repair(static_cast<std::size_t>(state.range(1)));
  frr::LinkStatusStore store;
  store.set(LinkId{1}, state.range(0) ? LinkState::kDown : LinkState::kUp);
  const auto src = Ipv6Address::from_string("2001:db8::a");
  for (auto _ : state) {
    auto out = frr::apply(frr::evaluate_master_frr(pkt, policy, store), pkt, src);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(state.range(0) ? "reroute" : "pass");
}
BENCHMARK(BM_MasterFrr)->Args({0, 2})->Args({1, 1})->Args({1, 2})->Args({1, 4});

void BM_SlaveFrr(benchmark::State& state) {
  const auto pkt = packet(64);
  const auto policy = repair(2);
  const auto src = Ipv6Address::from_string("2001:db8::b");
  const Timestamp now = Timestamp{} + 1s;
  const Timestamp last_rx = now - (state.range(0) ? 40ms : 5ms);
  for (auto _ : state) {
    auto out = frr::apply(frr::evaluate_slave_frr(pkt, policy, last_rx, now, 30ms), pkt, src);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(state.range(0) ? "reroute" : "pass");
}
BENCHMARK(BM_SlaveFrr)->Arg(0)->Arg(1);

}  // namespace
