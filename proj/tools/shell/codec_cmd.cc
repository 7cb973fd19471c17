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

#include "shell/codec_cmd.h"

#include <algorithm>

#include "shell/json_util.h"

namespace srv6pulse::shell {

using namespace json_util;

namespace {

json tlv_fields(const wire::RawTlv& raw) {
  json t;
  t["type"] = raw.type;
  if (raw.type == 0) return t;
  t["length"] = raw.value.size();
  const bool reserved_zero = raw.value.size() == wire::ProbeTlv::kLength &&
                             std::all_of(raw.value.begin() + 16, raw.value.end(), [](auto b) { return b == 0; });
  if (auto probe = wire::ProbeTlv::from_raw(raw); probe && reserved_zero) {
    t["probe"] = {{"session_id", probe->session_id},
                  {"seq", probe->seq},
                  {"ack", probe->ack},
                  {"interval_ms", probe->interval_ms}};
  } else {
    t["value"] = wire::to_hex(raw.value);
  }
  return t;
}

json srh_fields(const wire::SegmentRoutingHeader& srh) {
  json s;
  s["next_header"] = srh.next_header;
  s["hdr_ext_len"] = srh.hdr_ext_len();
  s["routing_type"] = srh.routing_type;
  s["segments_left"] = srh.segments_left;
  s["last_entry"] = srh.last_entry();
  s["flags"] = srh.flags;
  s["tag"] = srh.tag;
  s["segments"] = json::array();
  for (const auto& seg : srh.segments) s["segments"].push_back(seg.to_string());
  s["tlvs"] = json::array();
  for (const auto& t : srh.tlvs) s["tlvs"].push_back(tlv_fields(t));
  return s;
}

json ipv6_fields(const wire::Ipv6Header& h) {
  return {{"traffic_class", h.traffic_class}, {"flow_label", h.flow_label}, {"payload_length", h.payload_length},
          {"next_header", h.next_header},     {"hop_limit", h.hop_limit},   {"source", h.source.to_string()},
          {"destination", h.destination.to_string()}};
}

void check_derived(const json& obj, const char* key, std::uint64_t actual, const std::string& field) {
  if (const auto* v = optional_field(obj, key)) {
    if (integer<std::uint64_t>(*v, join(field, key)) != actual) {
      throw ConfigError(join(field, key), "inconsistent with the encoded value " + std::to_string(actual));
    }
  }
}

wire::RawTlv parse_tlv(const json& v, const std::string& field) {
  wire::RawTlv raw;
  raw.type = integer<std::uint8_t>(require(v, "type", field), join(field, "type"));
  if (raw.type == 0) return raw;
  if (const auto* p = optional_field(v, "probe")) {
    const auto pf = join(field, "probe");
    wire::ProbeTlv probe;
    probe.session_id = integer<std::uint32_t>(require(*p, "session_id", pf), join(pf, "session_id"));
    probe.seq = integer<std::uint32_t>(require(*p, "seq", pf), join(pf, "seq"));
    probe.ack = integer<std::uint32_t>(require(*p, "ack", pf), join(pf, "ack"));
    probe.interval_ms = integer<std::uint32_t>(require(*p, "interval_ms", pf), join(pf, "interval_ms"));
    raw = probe.to_raw();
    raw.type = integer<std::uint8_t>(v["type"], join(field, "type"));
  } else {
    auto bytes = wire::from_hex(string(require(v, "value", field), join(field, "value")));
    if (!bytes) throw ConfigError(join(field, "value"), "malformed hex");
    raw.value = std::move(*bytes);
  }
  check_derived(v, "length", raw.value.size(), field);
  return raw;
}

wire::SegmentRoutingHeader parse_srh(const json& v, const std::string& field) {
  wire::SegmentRoutingHeader srh;
  srh.next_header = integer<std::uint8_t>(require(v, "next_header", field), join(field, "next_header"));
  if (const auto* rt = optional_field(v, "routing_type")) srh.routing_type = integer<std::uint8_t>(*rt, join(field, "routing_type"));
  srh.segments_left = integer<std::uint8_t>(require(v, "segments_left", field), join(field, "segments_left"));
  if (const auto* f = optional_field(v, "flags")) srh.flags = integer<std::uint8_t>(*f, join(field, "flags"));
  if (const auto* t = optional_field(v, "tag")) srh.tag = integer<std::uint16_t>(*t, join(field, "tag"));
  const auto& segs = array(require(v, "segments", field), join(field, "segments"));
  for (std::size_t i = 0; i < segs.size(); ++i) srh.segments.push_back(address(segs[i], at_index(join(field, "segments"), i)));
  if (const auto* tl = optional_field(v, "tlvs")) {
    array(*tl, join(field, "tlvs"));
    for (std::size_t i = 0; i < tl->size(); ++i) srh.tlvs.push_back(parse_tlv((*tl)[i], at_index(join(field, "tlvs"), i)));
  }
  wire::validate(srh);
  check_derived(v, "hdr_ext_len", srh.hdr_ext_len(), field);
  check_derived(v, "last_entry", srh.last_entry(), field);
  return srh;
}

bool looks_like_packet(wire::ByteView bytes) { return !bytes.empty() && (bytes[0] >> 4) == 6; }

}  // namespace

std::string dump_fields(wire::ByteView bytes, CodecLayer layer) {
  if (layer == CodecLayer::kAuto) layer = looks_like_packet(bytes) ? CodecLayer::kPacket : CodecLayer::kSrh;
  json out;
  if (layer == CodecLayer::kSrh) {
    out = srh_fields(wire::decode_srh(bytes));
  } else {
    const auto h = wire::decode_ipv6_header(bytes);
    if (h.next_header != wire::kProtoRouting) {
      throw wire::CodecError(wire::CodecErrc::kInvariantViolation, 6, "next header is not a routing header");
    }
    if (bytes.size() - wire::kIpv6HeaderSize < h.payload_length) {
      throw wire::CodecError(wire::CodecErrc::kTruncated, bytes.size(), "payload_length " + std::to_string(h.payload_length));
    }
    const auto srh = wire::decode_srh(bytes.subspan(wire::kIpv6HeaderSize), wire::kIpv6HeaderSize);
    out["ipv6"] = ipv6_fields(h);
    out["srh"] = srh_fields(srh);
    const std::size_t rest = wire::kIpv6HeaderSize + srh.encoded_size();
    if (rest < bytes.size()) out["payload"] = wire::to_hex(bytes.subspan(rest));
  }
  return out.dump(2) + "\n";
}

wire::Bytes encode_fields(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "expected a JSON object");
  if (!root.contains("ipv6")) return wire::encode_srh(parse_srh(root, ""));

  const auto srh = parse_srh(require(root, "srh", ""), "srh");
  wire::Bytes payload;
  if (const auto* p = optional_field(root, "payload")) {
    auto bytes = wire::from_hex(string(*p, "payload"));
    if (!bytes) throw ConfigError("payload", "malformed hex");
    payload = std::move(*bytes);
  }
  const auto& v = root["ipv6"];
  wire::Ipv6Header h;
  if (const auto* tc = optional_field(v, "traffic_class")) h.traffic_class = integer<std::uint8_t>(*tc, "ipv6.traffic_class");
  if (const auto* fl = optional_field(v, "flow_label")) h.flow_label = integer<std::uint32_t>(*fl, "ipv6.flow_label");
  if (h.flow_label > 0xFFFFF) throw ConfigError("ipv6.flow_label", "exceeds 20 bits");
  h.next_header = wire::kProtoRouting;
  check_derived(v, "next_header", h.next_header, "ipv6");
  if (const auto* hl = optional_field(v, "hop_limit")) h.hop_limit = integer<std::uint8_t>(*hl, "ipv6.hop_limit");
  h.source = address(require(v, "source", "ipv6"), "ipv6.source");
  h.destination = address(require(v, "destination", "ipv6"), "ipv6.destination");
  const std::size_t payload_length = srh.encoded_size() + payload.size();
  if (payload_length > 0xFFFF) throw ConfigError("payload", "packet exceeds 65535 payload octets");
  h.payload_length = static_cast<std::uint16_t>(payload_length);
  check_derived(v, "payload_length", h.payload_length, "ipv6");

  wire::Bytes out;
  wire::encode_ipv6_header(h, out);
  wire::encode_srh(srh, out);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

int cmd_codec(const CodecArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.encode) {
      out << wire::to_hex(encode_fields(args.input)) << '\n';
    } else {
      auto bytes = wire::from_hex(args.input);
      if (!bytes) {
        err << "malformed hex input\n";
        return 2;
      }
      out << dump_fields(*bytes, args.layer);
    }
    return 0;
  } catch (const wire::CodecError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "field error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace srv6pulse::shell
