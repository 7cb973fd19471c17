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

#ifndef SRV6PULSE_WIRE_H_
#define SRV6PULSE_WIRE_H_

// Bit-exact codec for IPv6 + Segment Routing Header packets and the
// liveness probe TLV. Field order follows RFC 8200 / RFC 8754; all
// multi-octet integers are big-endian.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srv6pulse/ipv6_address.h"
#include "srv6pulse/types.h"

namespace srv6pulse::wire {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr std::uint8_t kProtoIpv6 = 41;
inline constexpr std::uint8_t kProtoRouting = 43;
inline constexpr std::uint8_t kProtoNoNextHeader = 59;
inline constexpr std::uint8_t kRoutingTypeSrh = 4;
inline constexpr std::size_t kIpv6HeaderSize = 40;
inline constexpr std::size_t kSrhFixedSize = 8;
inline constexpr std::uint8_t kDefaultHopLimit = 64;

enum class CodecErrc {
  kTruncated,
  kBadRoutingType,
  kBadEntryCount,
  kInvariantViolation,
  kNoMoreSegments,
  kNotIpv6,
  kEmptyRepairList,
  kBadTlv,
  kLengthMismatch,
};

const char* to_string(CodecErrc code);

class CodecError : public Error {
 public:
  CodecError(CodecErrc code, std::size_t offset, const std::string& detail);
  CodecErrc code() const { return code_; }
  // Byte offset into the decoded buffer where the problem was found; 0 for
  // errors raised while encoding.
  std::size_t offset() const { return offset_; }

 private:
  CodecErrc code_;
  std::size_t offset_;
};

struct Ipv6Header {
  std::uint8_t traffic_class = 0;
  std::uint32_t flow_label = 0;  // 20 bits
  std::uint16_t payload_length = 0;
  std::uint8_t next_header = kProtoNoNextHeader;
  std::uint8_t hop_limit = kDefaultHopLimit;
  Ipv6Address source;
  Ipv6Address destination;

  friend bool operator==(const Ipv6Header&, const Ipv6Header&) = default;
};

void encode_ipv6_header(const Ipv6Header& h, Bytes& out);
// Reads the fixed 40-byte header. Throws kTruncated / kNotIpv6.
Ipv6Header decode_ipv6_header(ByteView bytes);

// A TLV kept exactly as found on the wire. type 0 is Pad1, a single octet
// with no length or value.
struct RawTlv {
  std::uint8_t type = 0;
  Bytes value;

  std::size_t encoded_size() const { return type == 0 ? 1 : 2 + value.size(); }
  friend bool operator==(const RawTlv&, const RawTlv&) = default;
};

struct SegmentRoutingHeader {
  std::uint8_t next_header = kProtoNoNextHeader;
  std::uint8_t routing_type = kRoutingTypeSrh;
  std::uint8_t segments_left = 0;
  std::uint8_t flags = 0;
  std::uint16_t tag = 0;
  // Wire order: index 0 is the final segment.
  std::vector<Ipv6Address> segments;
  std::vector<RawTlv> tlvs;

  std::uint8_t last_entry() const { return static_cast<std::uint8_t>(segments.size() - 1); }
  std::size_t encoded_size() const;
  std::uint8_t hdr_ext_len() const { return static_cast<std::uint8_t>((encoded_size() - 8) / 8); }
  const Ipv6Address& active_segment() const { return segments.at(segments_left); }

  friend bool operator==(const SegmentRoutingHeader&, const SegmentRoutingHeader&) = default;
};

// Throws kInvariantViolation when the header cannot be encoded.
void validate(const SegmentRoutingHeader& srh);
Bytes encode_srh(const SegmentRoutingHeader& srh);
void encode_srh(const SegmentRoutingHeader& srh, Bytes& out);
// Decodes the SRH at the start of `bytes`; trailing bytes are ignored.
// `base_offset` is added to offsets reported in errors.
SegmentRoutingHeader decode_srh(ByteView bytes, std::size_t base_offset = 0);

// Liveness probe TLV: 24 octets on the wire, so an SRH carrying it stays
// 8-aligned without padding.
struct ProbeTlv {
  static constexpr std::uint8_t kType = 0x81;
  static constexpr std::uint8_t kLength = 22;
  static constexpr std::size_t kEncodedSize = 2 + kLength;

  std::uint32_t session_id = 0;
  std::uint32_t seq = 0;
  std::uint32_t ack = 0;
  std::uint32_t interval_ms = 0;

  bool is_reset() const { return seq == 0 && ack == 0; }

  RawTlv to_raw() const;
  // nullopt unless `raw` has the probe type and length.
  static std::optional<ProbeTlv> from_raw(const RawTlv& raw);

  friend bool operator==(const ProbeTlv&, const ProbeTlv&) = default;
};

// An IPv6 packet whose only extension header is an SRH. Probes carry no
// upper-layer payload (SRH next_header = 59).
struct ProbePacket {
  Ipv6Header outer;
  SegmentRoutingHeader srh;

  // First probe TLV in the SRH, if any.
  std::optional<ProbeTlv> probe() const;
  std::size_t encoded_size() const { return kIpv6HeaderSize + srh.encoded_size(); }

  friend bool operator==(const ProbePacket&, const ProbePacket&) = default;
};

ProbePacket build_probe(const Ipv6Address& src, const Ipv6Address& slave_segment,
                        const Ipv6Address& return_segment, const ProbeTlv& tlv,
                        std::uint8_t hop_limit = kDefaultHopLimit);

Bytes encode_probe(const ProbePacket& pkt);
// Expects exactly one IPv6 header followed by an SRH and nothing else.
ProbePacket decode_probe(ByteView bytes);

// SRv6 End behaviour on the cursor: decrement segments_left and rewrite the
// destination. Throws kNoMoreSegments when segments_left is already 0.
ProbePacket advance_segment(const ProbePacket& pkt);

// Outer IPv6 + SRH encapsulation of `inner`. `repair` is in travel order;
// the packet is addressed to repair.front().
Bytes push_encap(ByteView inner, std::span<const Ipv6Address> repair, const Ipv6Address& outer_src);

struct Decapsulated {
  Ipv6Header outer;
  SegmentRoutingHeader srh;
  Bytes inner;
};
// Inverse of push_encap.
Decapsulated strip_encap(ByteView bytes);

std::string to_hex(ByteView bytes);
// Accepts upper/lower case and ignores whitespace; nullopt on bad input.
std::optional<Bytes> from_hex(std::string_view text);

}  // namespace srv6pulse::wire

#endif  // SRV6PULSE_WIRE_H_
