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

#include "shell/tunnel_cmd.h"

#include <condition_variable>
#include <mutex>
#include <thread>

namespace srv6pulse::shell {

int cmd_tunnel(const TunnelArgs& args, std::atomic<bool>& stop, std::ostream& out, std::ostream& err) {
  try {
    args.options.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }

  std::thread timer;
  if (args.run_for) {
    timer = std::thread([&stop, deadline = std::chrono::steady_clock::now() + *args.run_for] {
      while (!stop.load() && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
      }
      stop.store(true);
    });
  }

  int code = 0;
  try {
    const auto summary = tunnel::run(args.options, stop, out);
    out << "summary role=" << (args.options.role == tunnel::Role::kMaster ? "master" : "slave")
        << " session_id=" << args.options.session_id << " probes_sent=" << summary.probes_sent
        << " probes_received=" << summary.probes_received << " malformed=" << summary.malformed
        << " transitions=" << summary.transitions
        << " final_state=" << (summary.final_state ? to_string(*summary.final_state) : "none") << '\n';
  } catch (const tunnel::SocketError& e) {
    err << "socket error: " << e.what() << '\n';
    code = 3;
  }
  stop.store(true);
  if (timer.joinable()) timer.join();
  return code;
}

}  // namespace srv6pulse::shell
