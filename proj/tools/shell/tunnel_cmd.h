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

#ifndef SRV6PULSE_SHELL_TUNNEL_CMD_H_
#define SRV6PULSE_SHELL_TUNNEL_CMD_H_

#include <atomic>
#include <optional>
#include <ostream>

#include "srv6pulse/tunnel.h"

namespace srv6pulse::shell {

struct TunnelArgs {
  tunnel::TunnelOptions options;
  // Stop on our own after this long; otherwise run until `stop` is set.
  std::optional<Duration> run_for;
};

// Transition lines go to `out`, the final summary too. Returns 0, 2 on bad
// options, 3 when the socket cannot be bound.
int cmd_tunnel(const TunnelArgs& args, std::atomic<bool>& stop, std::ostream& out, std::ostream& err);

}  // namespace srv6pulse::shell

#endif  // SRV6PULSE_SHELL_TUNNEL_CMD_H_
