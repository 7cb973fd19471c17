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

// srv6pulse: campaign simulator, packet codec and live UDP tunnel.

#include <csignal>
#include <iostream>
#include <iterator>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "shell/campaign.h"
#include "shell/codec_cmd.h"
#include "shell/config_json.h"
#include "shell/tunnel_cmd.h"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

std::string slurp_stdin() { return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()}; }

}  // namespace

int main(int argc, char** argv) {
  using namespace srv6pulse;

  CLI::App app{"SRv6 liveness monitoring and fast-reroute toolkit"};
  app.require_subcommand(1);

  // simulate
  shell::SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a simulated campaign sweep and write results.csv");
  simulate->add_option("--manifest", sim.manifest, "Manifest JSON")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_option("--jobs", sim.jobs, "Parallel runs")->default_val(std::max(1u, std::thread::hardware_concurrency()));

  // codec
  auto* codec = app.add_subcommand("codec", "Encode or decode IPv6/SRH probe packets");
  codec->require_subcommand(1);
  std::string hex, in_file, layer = "auto";
  auto* decode = codec->add_subcommand("decode", "Hex to field dump");
  decode->add_option("--hex", hex, "Hex bytes");
  decode->add_option("--in", in_file, "File holding hex ('-' for stdin)");
  decode->add_option("--layer", layer, "auto|packet|srh")->check(CLI::IsMember({"auto", "packet", "srh"}));
  auto* encode = codec->add_subcommand("encode", "Field dump (JSON) to hex");
  encode->add_option("--in", in_file, "Field file ('-' for stdin)")->required();

  // tunnel
  shell::TunnelArgs tun;
  std::string role, listen, peer, self_addr, slave_addr;
  double interval_ms = 10;
  double duration_s = 0;
  auto* tunnel = app.add_subcommand("tunnel", "Run a live master or slave over UDP");
  tunnel->add_option("--role", role, "master|slave")->required()->check(CLI::IsMember({"master", "slave"}));
  tunnel->add_option("--listen", listen, "Local addr:port")->required();
  tunnel->add_option("--peer", peer, "Peer addr:port")->required();
  tunnel->add_option("--interval-ms", interval_ms, "Probe interval")->default_val(10);
  tunnel->add_option("--multiplier", tun.options.multiplier, "Detection time multiplier")->default_val(3);
  tunnel->add_option("--session-id", tun.options.session_id, "Session id")->default_val(1);
  tunnel->add_option("--self-addr", self_addr, "Master IPv6 address carried in probes");
  tunnel->add_option("--slave-addr", slave_addr, "Slave segment IPv6 address");
  tunnel->add_option("--duration-s", duration_s, "Stop after this many seconds (0 = until SIGINT)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every usage error is a configuration error.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (simulate->parsed()) return shell::cmd_simulate(sim, std::cout, std::cerr);

  if (codec->parsed()) {
    shell::CodecArgs args;
    args.encode = encode->parsed();
    args.layer = layer == "packet" ? shell::CodecLayer::kPacket
                 : layer == "srh"  ? shell::CodecLayer::kSrh
                                   : shell::CodecLayer::kAuto;
    try {
      if (!in_file.empty()) {
        args.input = in_file == "-" ? slurp_stdin() : shell::read_file(in_file);
      } else if (!hex.empty()) {
        args.input = hex;
      } else {
        std::cerr << "decode needs --hex or --in\n";
        return 2;
      }
    } catch (const shell::IoError& e) {
      std::cerr << "i/o error: " << e.what() << '\n';
      return 3;
    }
    return shell::cmd_codec(args, std::cout, std::cerr);
  }

  // tunnel
  try {
    tun.options.role = role == "master" ? tunnel::Role::kMaster : tunnel::Role::kSlave;
    tun.options.listen = tunnel::Endpoint::parse(listen);
    tun.options.peer = tunnel::Endpoint::parse(peer);
    tun.options.interval = Duration{static_cast<std::int64_t>(interval_ms * 1e6)};
    if (!self_addr.empty()) tun.options.self_addr = Ipv6Address::from_string(self_addr);
    if (!slave_addr.empty()) tun.options.slave_addr = Ipv6Address::from_string(slave_addr);
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  if (duration_s > 0) tun.run_for = Duration{static_cast<std::int64_t>(duration_s * 1e9)};
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  return shell::cmd_tunnel(tun, g_stop, std::cout, std::cerr);
}
