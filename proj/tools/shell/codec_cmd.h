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

#ifndef SRV6PULSE_SHELL_CODEC_CMD_H_
#define SRV6PULSE_SHELL_CODEC_CMD_H_

#include <ostream>
#include <string>

#include "srv6pulse/wire.h"

namespace srv6pulse::shell {

enum class CodecLayer { kAuto, kPacket, kSrh };

// Field dump format shared by `codec decode` (output) and `codec encode`
// (input): {"ipv6": {...}, "srh": {...}} for a packet, or just the SRH
// object when the input is a bare SRH. Derived fields (hdr_ext_len,
// last_entry, TLV length, payload_length) are printed on decode and, when
// present, checked on encode.
std::string dump_fields(wire::ByteView bytes, CodecLayer layer = CodecLayer::kAuto);
wire::Bytes encode_fields(const std::string& json_text);

struct CodecArgs {
  bool encode = false;
  std::string input;  // hex (decode) or field JSON (encode)
  CodecLayer layer = CodecLayer::kAuto;
};

// 0 on success; 2 on malformed input or codec errors ("<Errc> at offset N").
int cmd_codec(const CodecArgs& args, std::ostream& out, std::ostream& err);

}  // namespace srv6pulse::shell

#endif  // SRV6PULSE_SHELL_CODEC_CMD_H_
