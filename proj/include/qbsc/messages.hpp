//------------------------------------------------------------------------------
//
//   Copyright 2026 The qbsc Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
//
// Wire messages exchanged by the commit/reveal state machines, their binary
// codec, and the JSON Lines transcript mirror.
//
// Binary layout (little-endian throughout):
//   COMMIT_PULSE  kind tag 0x01, 16-byte session id, f64 mean photons, f64 angle
//   REVEAL        kind tag 0x02, 16-byte session id, u32 choice index
//   VERDICT       kind tag 0x03, 16-byte session id, u8 accepted, u8 reason

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qbsc {

enum class MessageKind : std::uint8_t {
  CommitPulse = 1,
  Reveal = 2,
  Verdict = 3,
};

enum class VerdictReason : std::uint8_t {
  Confirmed = 0,     ///< main detector clicked, SPD silent
  SpdClick = 1,      ///< the guard detector fired: revealed state is wrong
  NoDetection = 2,   ///< nothing fired; rejected under the minimal-power rule
  Underpowered = 3,  ///< reserved: commit power below the agreed minimum
};

using SessionId = std::array<std::uint8_t, 16>;

struct CommitPulsePayload {
  double mean_photons = 0.0;
  double angle = 0.0;
  bool operator==(const CommitPulsePayload&) const = default;
};

struct RevealPayload {
  std::uint32_t choice_index = 0;
  bool operator==(const RevealPayload&) const = default;
};

struct VerdictPayload {
  bool accepted = false;
  VerdictReason reason = VerdictReason::NoDetection;
  bool operator==(const VerdictPayload&) const = default;
};

/// One protocol message; the kind is implied by the payload alternative.
class ProtocolMessage {
 public:
  static ProtocolMessage commit_pulse(const SessionId& session,
                                      double mean_photons, double angle);
  static ProtocolMessage reveal(const SessionId& session,
                                std::uint32_t choice_index);
  static ProtocolMessage verdict(const SessionId& session, bool accepted,
                                 VerdictReason reason);

  MessageKind kind() const;
  const SessionId& session_id() const { return session_id_; }

  /// Typed payload accessors; throw std::logic_error on a kind mismatch.
  const CommitPulsePayload& commit() const;
  const RevealPayload& reveal_payload() const;
  const VerdictPayload& verdict_payload() const;

  bool operator==(const ProtocolMessage&) const = default;

 private:
  using Payload =
      std::variant<CommitPulsePayload, RevealPayload, VerdictPayload>;
  ProtocolMessage(const SessionId& session, Payload payload)
      : session_id_(session), payload_(std::move(payload)) {}

  SessionId session_id_{};
  Payload payload_;
};

/// Malformed bytes or JSON fed to the decoder.
class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> encode(const ProtocolMessage& message);

/// Decodes one message; rejects unknown tags, truncated input, trailing
/// bytes, non-finite reals and out-of-range enums with CodecError.
ProtocolMessage decode(std::span<const std::uint8_t> bytes);

std::string to_hex(const SessionId& session);
SessionId session_id_from_hex(const std::string& hex);

/// One-line JSON form: {"kind":..., "session_id":hex, "payload":{...}}.
std::string to_json_line(const ProtocolMessage& message);
ProtocolMessage from_json_line(const std::string& line);

/// JSON Lines transcript, one message per line.
void write_transcript(std::ostream& out,
                      std::span<const ProtocolMessage> transcript);
std::vector<ProtocolMessage> read_transcript(std::istream& in);

std::string to_string(MessageKind kind);
std::string to_string(VerdictReason reason);

}  // namespace qbsc
