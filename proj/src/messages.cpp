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

#include "qbsc/messages.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace qbsc {

namespace {

constexpr std::size_t kHeaderSize = 1 + 16;  // kind tag + session id

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

void put_f64(std::vector<std::uint8_t>& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  }
  return value;
}

double get_f64(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(bytes[at + i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

void require_size(std::span<const std::uint8_t> bytes, std::size_t expected) {
  if (bytes.size() != expected) {
    throw CodecError("message has " + std::to_string(bytes.size()) +
                     " bytes, expected " + std::to_string(expected));
  }
}

}  // namespace

ProtocolMessage ProtocolMessage::commit_pulse(const SessionId& session,
                                              double mean_photons,
                                              double angle) {
  return ProtocolMessage(session, CommitPulsePayload{mean_photons, angle});
}

ProtocolMessage ProtocolMessage::reveal(const SessionId& session,
                                        std::uint32_t choice_index) {
  return ProtocolMessage(session, RevealPayload{choice_index});
}

ProtocolMessage ProtocolMessage::verdict(const SessionId& session,
                                         bool accepted, VerdictReason reason) {
  return ProtocolMessage(session, VerdictPayload{accepted, reason});
}

MessageKind ProtocolMessage::kind() const {
  switch (payload_.index()) {
    case 0: return MessageKind::CommitPulse;
    case 1: return MessageKind::Reveal;
    default: return MessageKind::Verdict;
  }
}

const CommitPulsePayload& ProtocolMessage::commit() const {
  if (const auto* p = std::get_if<CommitPulsePayload>(&payload_)) return *p;
  throw std::logic_error("message is not a COMMIT_PULSE");
}

const RevealPayload& ProtocolMessage::reveal_payload() const {
  if (const auto* p = std::get_if<RevealPayload>(&payload_)) return *p;
  throw std::logic_error("message is not a REVEAL");
}

const VerdictPayload& ProtocolMessage::verdict_payload() const {
  if (const auto* p = std::get_if<VerdictPayload>(&payload_)) return *p;
  throw std::logic_error("message is not a VERDICT");
}

std::vector<std::uint8_t> encode(const ProtocolMessage& message) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 16);
  out.push_back(static_cast<std::uint8_t>(message.kind()));
  out.insert(out.end(), message.session_id().begin(),
             message.session_id().end());
  switch (message.kind()) {
    case MessageKind::CommitPulse:
      put_f64(out, message.commit().mean_photons);
      put_f64(out, message.commit().angle);
      break;
    case MessageKind::Reveal:
      put_u32(out, message.reveal_payload().choice_index);
      break;
    case MessageKind::Verdict:
      out.push_back(message.verdict_payload().accepted ? 1 : 0);
      out.push_back(static_cast<std::uint8_t>(message.verdict_payload().reason));
      break;
  }
  return out;
}

ProtocolMessage decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw CodecError("message shorter than its header");
  }
  SessionId session;
  std::memcpy(session.data(), bytes.data() + 1, session.size());

  switch (bytes[0]) {
    case static_cast<std::uint8_t>(MessageKind::CommitPulse): {
      require_size(bytes, kHeaderSize + 16);
      const double mean_photons = get_f64(bytes, kHeaderSize);
      const double angle = get_f64(bytes, kHeaderSize + 8);
      if (!std::isfinite(mean_photons) || !std::isfinite(angle)) {
        throw CodecError("commit payload contains non-finite reals");
      }
      return ProtocolMessage::commit_pulse(session, mean_photons, angle);
    }
    case static_cast<std::uint8_t>(MessageKind::Reveal): {
      require_size(bytes, kHeaderSize + 4);
      return ProtocolMessage::reveal(session, get_u32(bytes, kHeaderSize));
    }
    case static_cast<std::uint8_t>(MessageKind::Verdict): {
      require_size(bytes, kHeaderSize + 2);
      const std::uint8_t accepted = bytes[kHeaderSize];
      const std::uint8_t reason = bytes[kHeaderSize + 1];
      if (accepted > 1) throw CodecError("verdict accepted flag must be 0 or 1");
      if (reason > static_cast<std::uint8_t>(VerdictReason::Underpowered)) {
        throw CodecError("unknown verdict reason " + std::to_string(reason));
      }
      return ProtocolMessage::verdict(session, accepted == 1,
                                      static_cast<VerdictReason>(reason));
    }
    default:
      throw CodecError("unknown message kind tag " + std::to_string(bytes[0]));
  }
}

std::string to_hex(const SessionId& session) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(32);
  for (std::uint8_t byte : session) {
    hex.push_back(kDigits[byte >> 4]);
    hex.push_back(kDigits[byte & 0xF]);
  }
  return hex;
}

SessionId session_id_from_hex(const std::string& hex) {
  if (hex.size() != 32) {
    throw CodecError("session id hex must be 32 characters");
  }
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw CodecError("invalid hex digit in session id");
  };
  SessionId session;
  for (std::size_t i = 0; i < session.size(); ++i) {
    session[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) |
                                           nibble(hex[2 * i + 1]));
  }
  return session;
}

std::string to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::CommitPulse: return "COMMIT_PULSE";
    case MessageKind::Reveal: return "REVEAL";
    case MessageKind::Verdict: return "VERDICT";
  }
  return "UNKNOWN";
}

std::string to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::Confirmed: return "CONFIRMED";
    case VerdictReason::SpdClick: return "SPD_CLICK";
    case VerdictReason::NoDetection: return "NO_DETECTION";
    case VerdictReason::Underpowered: return "UNDERPOWERED";
  }
  return "UNKNOWN";
}

namespace {

VerdictReason reason_from_string(const std::string& name) {
  if (name == "CONFIRMED") return VerdictReason::Confirmed;
  if (name == "SPD_CLICK") return VerdictReason::SpdClick;
  if (name == "NO_DETECTION") return VerdictReason::NoDetection;
  if (name == "UNDERPOWERED") return VerdictReason::Underpowered;
  throw CodecError("unknown verdict reason \"" + name + "\"");
}

}  // namespace

std::string to_json_line(const ProtocolMessage& message) {
  nlohmann::json entry;
  entry["kind"] = to_string(message.kind());
  entry["session_id"] = to_hex(message.session_id());
  nlohmann::json payload;
  switch (message.kind()) {
    case MessageKind::CommitPulse:
      payload["mean_photons"] = message.commit().mean_photons;
      payload["angle"] = message.commit().angle;
      break;
    case MessageKind::Reveal:
      payload["choice_index"] = message.reveal_payload().choice_index;
      break;
    case MessageKind::Verdict:
      payload["accepted"] = message.verdict_payload().accepted;
      payload["reason"] = to_string(message.verdict_payload().reason);
      break;
  }
  entry["payload"] = payload;
  return entry.dump();
}

ProtocolMessage from_json_line(const std::string& line) {
  nlohmann::json entry;
  try {
    entry = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw CodecError(std::string("transcript line is not valid JSON: ") +
                     e.what());
  }
  try {
    const auto session =
        session_id_from_hex(entry.at("session_id").get<std::string>());
    const auto kind = entry.at("kind").get<std::string>();
    const auto& payload = entry.at("payload");
    if (kind == "COMMIT_PULSE") {
      return ProtocolMessage::commit_pulse(
          session, payload.at("mean_photons").get<double>(),
          payload.at("angle").get<double>());
    }
    if (kind == "REVEAL") {
      return ProtocolMessage::reveal(
          session, payload.at("choice_index").get<std::uint32_t>());
    }
    if (kind == "VERDICT") {
      return ProtocolMessage::verdict(
          session, payload.at("accepted").get<bool>(),
          reason_from_string(payload.at("reason").get<std::string>()));
    }
    throw CodecError("unknown message kind \"" + kind + "\"");
  } catch (const nlohmann::json::exception& e) {
    throw CodecError(std::string("malformed transcript line: ") + e.what());
  }
}

void write_transcript(std::ostream& out,
                      std::span<const ProtocolMessage> transcript) {
  for (const auto& message : transcript) {
    out << to_json_line(message) << '\n';
  }
}

std::vector<ProtocolMessage> read_transcript(std::istream& in) {
  std::vector<ProtocolMessage> transcript;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    transcript.push_back(from_json_line(line));
  }
  return transcript;
}

}  // namespace qbsc
