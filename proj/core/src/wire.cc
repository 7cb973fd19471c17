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

#include "srv6pulse/wire.h"

#include <algorithm>
#include <cctype>

namespace srv6pulse::wire {
namespace {

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_addr(Bytes& out, const Ipv6Address& a) { out.insert(out.end(), a.octets().begin(), a.octets().end()); }

std::uint16_t get_u16(ByteView b, std::size_t off) {
  return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

std::uint32_t get_u32(ByteView b, std::size_t off) {
  return (std::uint32_t{b[off]} << 24) | (std::uint32_t{b[off + 1]} << 16) | (std::uint32_t{b[off + 2]} << 8) |
         std::uint32_t{b[off + 3]};
}

[[noreturn]] void fail(CodecErrc code, std::size_t offset, const std::string& detail) {
  throw CodecError(code, offset, detail);
}

}  // namespace

const char* to_string(CodecErrc code) {
  switch (code) {
    case CodecErrc::kTruncated: return "Truncated";
    case CodecErrc::kBadRoutingType: return "BadRoutingType";
    case CodecErrc::kBadEntryCount: return "BadEntryCount";
    case CodecErrc::kInvariantViolation: return "InvariantViolation";
    case CodecErrc::kNoMoreSegments: return "NoMoreSegments";
    case CodecErrc::kNotIpv6: return "NotIpv6";
    case CodecErrc::kEmptyRepairList: return "EmptyRepairList";
    case CodecErrc::kBadTlv: return "BadTlv";
    case CodecErrc::kLengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

CodecError::CodecError(CodecErrc code, std::size_t offset, const std::string& detail)
    : Error(std::string(to_string(code)) + " at offset " + std::to_string(offset) + ": " + detail),
      code_(code),
      offset_(offset) {}

// ---------------------------------------------------------------------------
// IPv6 fixed header

void encode_ipv6_header(const Ipv6Header& h, Bytes& out) {
  if (h.flow_label > 0xFFFFF) fail(CodecErrc::kInvariantViolation, 0, "flow label exceeds 20 bits");
  const std::uint32_t word0 = (6u << 28) | (std::uint32_t{h.traffic_class} << 20) | h.flow_label;
  put_u32(out, word0);
  put_u16(out, h.payload_length);
  out.push_back(h.next_header);
  out.push_back(h.hop_limit);
  put_addr(out, h.source);
  put_addr(out, h.destination);
}

Ipv6Header decode_ipv6_header(ByteView bytes) {
  if (bytes.empty()) fail(CodecErrc::kTruncated, 0, "empty packet");
  if ((bytes[0] >> 4) != 6) fail(CodecErrc::kNotIpv6, 0, "version nibble is not 6");
  if (bytes.size() < kIpv6HeaderSize) fail(CodecErrc::kTruncated, bytes.size(), "IPv6 header needs 40 octets");
  const std::uint32_t word0 = get_u32(bytes, 0);
  Ipv6Header h;
  h.traffic_class = static_cast<std::uint8_t>(word0 >> 20);
  h.flow_label = word0 & 0xFFFFF;
  h.payload_length = get_u16(bytes, 4);
  h.next_header = bytes[6];
  h.hop_limit = bytes[7];
  h.source = Ipv6Address::from_bytes(bytes.subspan(8, 16));
  h.destination = Ipv6Address::from_bytes(bytes.subspan(24, 16));
  return h;
}

// ---------------------------------------------------------------------------
// Segment Routing Header

std::size_t SegmentRoutingHeader::encoded_size() const {
  std::size_t size = kSrhFixedSize + 16 * segments.size();
  for (const auto& t : tlvs) size += t.encoded_size();
  return size;
}

void validate(const SegmentRoutingHeader& srh) {
  if (srh.routing_type != kRoutingTypeSrh) fail(CodecErrc::kInvariantViolation, 0, "routing type must be 4");
  if (srh.segments.empty()) fail(CodecErrc::kInvariantViolation, 0, "segment list is empty");
  if (srh.segments.size() > 256) fail(CodecErrc::kInvariantViolation, 0, "more than 256 segments");
  if (srh.segments_left > srh.last_entry()) fail(CodecErrc::kInvariantViolation, 0, "segments_left exceeds last_entry");
  for (const auto& t : srh.tlvs) {
    if (t.type == 0 && !t.value.empty()) fail(CodecErrc::kInvariantViolation, 0, "Pad1 TLV cannot carry a value");
    if (t.value.size() > 255) fail(CodecErrc::kInvariantViolation, 0, "TLV value longer than 255 octets");
  }
  const std::size_t size = srh.encoded_size();
  if (size % 8 != 0) fail(CodecErrc::kInvariantViolation, 0, "SRH size " + std::to_string(size) + " is not 8-aligned");
  if ((size - 8) / 8 > 255) fail(CodecErrc::kInvariantViolation, 0, "SRH exceeds 2048 octets");
}

void encode_srh(const SegmentRoutingHeader& srh, Bytes& out) {
  validate(srh);
  out.reserve(out.size() + srh.encoded_size());
  out.push_back(srh.next_header);
  out.push_back(srh.hdr_ext_len());
  out.push_back(srh.routing_type);
  out.push_back(srh.segments_left);
  out.push_back(srh.last_entry());
  out.push_back(srh.flags);
  put_u16(out, srh.tag);
  for (const auto& seg : srh.segments) put_addr(out, seg);
  for (const auto& t : srh.tlvs) {
    out.push_back(t.type);
    if (t.type == 0) continue;
    out.push_back(static_cast<std::uint8_t>(t.value.size()));
    out.insert(out.end(), t.value.begin(), t.value.end());
  }
}

Bytes encode_srh(const SegmentRoutingHeader& srh) {
  Bytes out;
  encode_srh(srh, out);
  return out;
}

SegmentRoutingHeader decode_srh(ByteView bytes, std::size_t base_offset) {
  if (bytes.size() < kSrhFixedSize) fail(CodecErrc::kTruncated, base_offset + bytes.size(), "SRH needs 8 octets");
  if (bytes[2] != kRoutingTypeSrh) {
    fail(CodecErrc::kBadRoutingType, base_offset + 2, "routing type " + std::to_string(bytes[2]));
  }
  const std::size_t total = kSrhFixedSize + 8 * std::size_t{bytes[1]};
  if (bytes.size() < total) {
    fail(CodecErrc::kTruncated, base_offset + bytes.size(),
         "hdr_ext_len implies " + std::to_string(total) + " octets");
  }
  const std::size_t count = std::size_t{bytes[4]} + 1;
  const std::size_t seg_end = kSrhFixedSize + 16 * count;
  if (seg_end > total) {
    fail(CodecErrc::kBadEntryCount, base_offset + 4,
         "last_entry " + std::to_string(bytes[4]) + " does not fit in " + std::to_string(total) + " octets");
  }
  if (bytes[3] > bytes[4]) fail(CodecErrc::kBadEntryCount, base_offset + 3, "segments_left exceeds last_entry");

  SegmentRoutingHeader srh;
  srh.next_header = bytes[0];
  srh.routing_type = bytes[2];
  srh.segments_left = bytes[3];
  srh.flags = bytes[5];
  srh.tag = get_u16(bytes, 6);
  srh.segments.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    srh.segments.push_back(Ipv6Address::from_bytes(bytes.subspan(kSrhFixedSize + 16 * i, 16)));
  }
  std::size_t off = seg_end;
  while (off < total) {
    RawTlv tlv;
    tlv.type = bytes[off];
    if (tlv.type == 0) {
      srh.tlvs.push_back(std::move(tlv));
      off += 1;
      continue;
    }
    if (off + 2 > total) fail(CodecErrc::kBadTlv, base_offset + off, "TLV header overruns SRH");
    const std::size_t len = bytes[off + 1];
    if (off + 2 + len > total) fail(CodecErrc::kBadTlv, base_offset + off, "TLV value overruns SRH");
    tlv.value.assign(bytes.begin() + static_cast<std::ptrdiff_t>(off + 2),
                     bytes.begin() + static_cast<std::ptrdiff_t>(off + 2 + len));
    srh.tlvs.push_back(std::move(tlv));
    off += 2 + len;
  }
  return srh;
}

// ---------------------------------------------------------------------------
// Probe TLV and packets

RawTlv ProbeTlv::to_raw() const {
  RawTlv raw;
  raw.type = kType;
  raw.value.reserve(kLength);
  put_u32(raw.value, session_id);
  put_u32(raw.value, seq);
  put_u32(raw.value, ack);
  put_u32(raw.value, interval_ms);
  raw.value.resize(kLength, 0);
  return raw;
}

std::optional<ProbeTlv> ProbeTlv::from_raw(const RawTlv& raw) {
  if (raw.type != kType || raw.value.size() != kLength) return std::nullopt;
  ByteView v(raw.value);
  ProbeTlv tlv;
  tlv.session_id = get_u32(v, 0);
  tlv.seq = get_u32(v, 4);
  tlv.ack = get_u32(v, 8);
  tlv.interval_ms = get_u32(v, 12);
  return tlv;
}

std::optional<ProbeTlv> ProbePacket::probe() const {
  for (const auto& raw : srh.tlvs) {
    if (auto tlv = ProbeTlv::from_raw(raw)) return tlv;
  }
  return std::nullopt;
}

ProbePacket build_probe(const Ipv6Address& src, const Ipv6Address& slave_segment, const Ipv6Address& return_segment,
                        const ProbeTlv& tlv, std::uint8_t hop_limit) {
  if (tlv.seq == 0 && tlv.ack != 0) fail(CodecErrc::kInvariantViolation, 0, "reset probe must carry ack = 0");
  ProbePacket pkt;
  pkt.srh.next_header = kProtoNoNextHeader;
  pkt.srh.segments = {return_segment, slave_segment};
  pkt.srh.segments_left = 1;
  pkt.srh.tlvs.push_back(tlv.to_raw());
  pkt.outer.next_header = kProtoRouting;
  pkt.outer.hop_limit = hop_limit;
  pkt.outer.source = src;
  pkt.outer.destination = slave_segment;
  pkt.outer.payload_length = static_cast<std::uint16_t>(pkt.srh.encoded_size());
  return pkt;
}

Bytes encode_probe(const ProbePacket& pkt) {
  Bytes out;
  out.reserve(pkt.encoded_size());
  encode_ipv6_header(pkt.outer, out);
  encode_srh(pkt.srh, out);
  return out;
}

ProbePacket decode_probe(ByteView bytes) {
  ProbePacket pkt;
  pkt.outer = decode_ipv6_header(bytes);
  if (pkt.outer.next_header != kProtoRouting) fail(CodecErrc::kInvariantViolation, 6, "next header is not a routing header");
  const std::size_t available = bytes.size() - kIpv6HeaderSize;
  if (available < pkt.outer.payload_length) {
    fail(CodecErrc::kTruncated, bytes.size(), "payload_length " + std::to_string(pkt.outer.payload_length));
  }
  if (available > pkt.outer.payload_length) {
    fail(CodecErrc::kLengthMismatch, kIpv6HeaderSize + pkt.outer.payload_length, "trailing octets after payload");
  }
  pkt.srh = decode_srh(bytes.subspan(kIpv6HeaderSize), kIpv6HeaderSize);
  const std::size_t srh_size = pkt.srh.encoded_size();
  if (srh_size != pkt.outer.payload_length) {
    fail(CodecErrc::kLengthMismatch, kIpv6HeaderSize + srh_size, "probe carries octets after the SRH");
  }
  return pkt;
}

ProbePacket advance_segment(const ProbePacket& pkt) {
  if (pkt.srh.segments_left == 0) fail(CodecErrc::kNoMoreSegments, 0, "segments_left is 0");
  ProbePacket next = pkt;
  --next.srh.segments_left;
  next.outer.destination = next.srh.segments.at(next.srh.segments_left);
  return next;
}

// ---------------------------------------------------------------------------
// Encapsulation

Bytes push_encap(ByteView inner, std::span<const Ipv6Address> repair, const Ipv6Address& outer_src) {
  if (inner.empty() || (inner[0] >> 4) != 6) fail(CodecErrc::kNotIpv6, 0, "inner packet is not IPv6");
  if (repair.empty()) fail(CodecErrc::kEmptyRepairList, 0, "repair list is empty");

  SegmentRoutingHeader srh;
  srh.next_header = kProtoIpv6;
  srh.segments.assign(repair.rbegin(), repair.rend());
  srh.segments_left = srh.last_entry();

  Ipv6Header outer;
  outer.next_header = kProtoRouting;
  outer.source = outer_src;
  outer.destination = repair.front();
  const std::size_t payload = srh.encoded_size() + inner.size();
  if (payload > 0xFFFF) fail(CodecErrc::kInvariantViolation, 0, "encapsulated packet exceeds 65535 payload octets");
  outer.payload_length = static_cast<std::uint16_t>(payload);

  Bytes out;
  out.reserve(kIpv6HeaderSize + payload);
  encode_ipv6_header(outer, out);
  encode_srh(srh, out);
  out.insert(out.end(), inner.begin(), inner.end());
  return out;
}

Decapsulated strip_encap(ByteView bytes) {
  Decapsulated d;
  d.outer = decode_ipv6_header(bytes);
  if (d.outer.next_header != kProtoRouting) fail(CodecErrc::kInvariantViolation, 6, "no routing header to strip");
  if (bytes.size() - kIpv6HeaderSize < d.outer.payload_length) {
    fail(CodecErrc::kTruncated, bytes.size(), "payload_length " + std::to_string(d.outer.payload_length));
  }
  auto payload = bytes.subspan(kIpv6HeaderSize, d.outer.payload_length);
  d.srh = decode_srh(payload, kIpv6HeaderSize);
  const std::size_t srh_size = 8 + 8 * std::size_t{payload[1]};
  d.inner.assign(payload.begin() + static_cast<std::ptrdiff_t>(srh_size), payload.end());
  return d;
}

// ---------------------------------------------------------------------------
// Hex helpers

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view text) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  int pending = -1;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    const int v = nibble(c);
    if (v < 0) return std::nullopt;
    if (pending < 0) {
      pending = v;
    } else {
      out.push_back(static_cast<std::uint8_t>((pending << 4) | v));
      pending = -1;
    }
  }
  if (pending >= 0) return std::nullopt;
  return out;
}

}  // namespace srv6pulse::wire
