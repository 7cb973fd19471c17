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

#include "shell/config_json.h"

#include <fstream>
#include <sstream>

#include "shell/json_util.h"

namespace srv6pulse::shell {

using namespace json_util;

namespace {

constexpr double kMs = 1e6;
constexpr double kUs = 1e3;

netsim::DelayRange delay_range(const json& v, const std::string& field) {
  netsim::DelayRange r;
  if (v.is_number()) {
    r.min = r.max = duration(v, field, kUs);
  } else {
    r.min = duration(require(v, "min", field), join(field, "min"), kUs);
    r.max = duration(require(v, "max", field), join(field, "max"), kUs);
  }
  return r;
}

netsim::NodeSpec node(const json& v, const std::string& field) {
  netsim::NodeSpec n;
  n.name = string(require(v, "name", field), join(field, "name"));
  const auto& addrs = array(require(v, "addresses", field), join(field, "addresses"));
  for (std::size_t i = 0; i < addrs.size(); ++i) n.addresses.push_back(address(addrs[i], at_index(join(field, "addresses"), i)));
  if (n.addresses.empty()) throw ConfigError(join(field, "addresses"), "a node needs at least one address");
  return n;
}

netsim::LinkSpec link(const json& v, const std::string& field) {
  netsim::LinkSpec l;
  l.a = string(require(v, "a", field), join(field, "a"));
  l.b = string(require(v, "b", field), join(field, "b"));
  l.link_id.value = integer<std::uint32_t>(require(v, "link_id", field), join(field, "link_id"));
  if (const auto* d = optional_field(v, "delay_us")) l.one_way_delay = delay_range(*d, join(field, "delay_us"));
  if (const auto* loss = optional_field(v, "loss")) l.loss = number(*loss, join(field, "loss"));
  if (const auto* f = optional_field(v, "failures")) {
    const auto base = join(field, "failures");
    array(*f, base);
    for (std::size_t i = 0; i < f->size(); ++i) {
      const auto wf = at_index(base, i);
      netsim::FailureWindow w;
      w.start = Timestamp{duration(require((*f)[i], "start_ms", wf), join(wf, "start_ms"), kMs)};
      w.end = Timestamp{duration(require((*f)[i], "end_ms", wf), join(wf, "end_ms"), kMs)};
      l.failures.push_back(w);
    }
  }
  return l;
}

netsim::SessionSpec session(const json& v, const std::string& field) {
  netsim::SessionSpec s;
  s.master_node = string(require(v, "master", field), join(field, "master"));
  auto& c = s.session;
  c.session_id = integer<std::uint32_t>(require(v, "session_id", field), join(field, "session_id"));
  c.self_addr = address(require(v, "self_addr", field), join(field, "self_addr"));
  c.slave_addr = address(require(v, "slave_addr", field), join(field, "slave_addr"));
  c.interval = duration(require(v, "interval_ms", field), join(field, "interval_ms"), kMs);
  if (const auto* d = optional_field(v, "detection_ms")) c.detection_time = duration(*d, join(field, "detection_ms"), kMs);
  if (const auto* m = optional_field(v, "multiplier")) {
    if (c.detection_time) throw ConfigError(join(field, "multiplier"), "give either detection_ms or multiplier");
    c.detection_time = c.interval * integer<std::uint32_t>(*m, join(field, "multiplier"));
  }
  c.link_id.value = integer<std::uint32_t>(require(v, "link_id", field), join(field, "link_id"));
  if (const auto* h = optional_field(v, "hop_limit")) c.hop_limit = integer<std::uint8_t>(*h, join(field, "hop_limit"));
  if (const auto* p = optional_field(v, "phase_us")) s.phase = duration(*p, join(field, "phase_us"), kUs);
  return s;
}

netsim::FrrSpec frr_policy(const json& v, const std::string& field) {
  netsim::FrrSpec f;
  f.node = string(require(v, "node", field), join(field, "node"));
  const auto variant = string(require(v, "variant", field), join(field, "variant"));
  if (variant == "map") {
    f.variant = netsim::FrrVariant::kMap;
  } else if (variant == "timestamp") {
    f.variant = netsim::FrrVariant::kTimestamp;
    f.session_id = integer<std::uint32_t>(require(v, "session_id", field), join(field, "session_id"));
  } else {
    throw ConfigError(join(field, "variant"), "expected \"map\" or \"timestamp\"");
  }
  f.repair.link_id.value = integer<std::uint32_t>(require(v, "link_id", field), join(field, "link_id"));
  const auto& rep = array(require(v, "repair", field), join(field, "repair"));
  for (std::size_t i = 0; i < rep.size(); ++i) f.repair.segments.push_back(address(rep[i], at_index(join(field, "repair"), i)));
  if (const auto* d = optional_field(v, "detection_ms")) f.detection_time = duration(*d, join(field, "detection_ms"), kMs);
  return f;
}

netsim::TrafficSpec traffic(const json& v, const std::string& field) {
  netsim::TrafficSpec t;
  t.source = string(require(v, "source", field), join(field, "source"));
  t.destination = address(require(v, "destination", field), join(field, "destination"));
  t.rate_pps = number(require(v, "rate_pps", field), join(field, "rate_pps"));
  if (const auto* s = optional_field(v, "start_ms")) t.start = Timestamp{duration(*s, join(field, "start_ms"), kMs)};
  if (const auto* e = optional_field(v, "end_ms")) t.end = Timestamp{duration(*e, join(field, "end_ms"), kMs)};
  if (const auto* p = optional_field(v, "payload_size")) t.payload_size = integer<std::size_t>(*p, join(field, "payload_size"));
  return t;
}

template <typename F>
void each(const json& root, const char* key, F&& fn) {
  const auto* v = optional_field(root, key);
  if (!v) return;
  array(*v, key);
  for (std::size_t i = 0; i < v->size(); ++i) fn((*v)[i], at_index(key, i));
}

}  // namespace

namespace json_util {

netsim::StressProfile stress_profile(const json& v, const std::string& field) {
  netsim::StressProfile p;
  const auto where = string(require(v, "applies_to", field), join(field, "applies_to"));
  if (where == "user_space") {
    p.applies_to = netsim::Placement::kUserSpace;
  } else if (where == "datapath") {
    p.applies_to = netsim::Placement::kDatapath;
  } else {
    throw ConfigError(join(field, "applies_to"), "expected \"user_space\" or \"datapath\"");
  }
  p.hit_probability = number(require(v, "hit_probability", field), join(field, "hit_probability"));
  p.delay = delay_range(require(v, "delay_us", field), join(field, "delay_us"));
  return p;
}

}  // namespace json_util

netsim::SimConfig parse_sim_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "config must be a JSON object");

  netsim::SimConfig c;
  if (const auto* s = optional_field(root, "seed")) c.seed = integer<std::uint64_t>(*s, "seed");
  if (const auto* d = optional_field(root, "duration_ms")) c.duration = duration(*d, "duration_ms", kMs);
  if (const auto* t = optional_field(root, "record_trace")) c.record_trace = boolean(*t, "record_trace");
  each(root, "nodes", [&](const json& v, const std::string& f) { c.nodes.push_back(node(v, f)); });
  each(root, "links", [&](const json& v, const std::string& f) { c.links.push_back(link(v, f)); });
  each(root, "sessions", [&](const json& v, const std::string& f) { c.sessions.push_back(session(v, f)); });
  each(root, "reflectors", [&](const json& v, const std::string& f) {
    c.reflectors.push_back({string(require(v, "node", f), join(f, "node")), address(require(v, "segment", f), join(f, "segment"))});
  });
  if (const auto* st = optional_field(root, "stress")) {
    if (!st->is_object()) throw ConfigError("stress", "expected an object keyed by node name");
    for (const auto& [name, profiles] : st->items()) {
      const auto base = join("stress", name);
      array(profiles, base);
      for (std::size_t i = 0; i < profiles.size(); ++i) c.stress[name].push_back(stress_profile(profiles[i], at_index(base, i)));
    }
  }
  each(root, "frr", [&](const json& v, const std::string& f) { c.frr.push_back(frr_policy(v, f)); });
  each(root, "traffic", [&](const json& v, const std::string& f) { c.traffic.push_back(traffic(v, f)); });

  c.validate();
  return c;
}

netsim::SimConfig load_sim_config(const std::filesystem::path& path) { return parse_sim_config(read_file(path)); }

netsim::StressProfile parse_stress_profile(const std::string& json_text, const std::string& field) {
  try {
    return stress_profile(json::parse(json_text), field);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

}  // namespace srv6pulse::shell
