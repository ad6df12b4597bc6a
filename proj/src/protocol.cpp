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

#include "qbsc/protocol.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace qbsc {

namespace {

void check_choice(const ProtocolParams& params, int choice) {
  if (choice < 0 || choice >= params.states) {
    throw std::domain_error("choice " + std::to_string(choice) +
                            " outside [0, " + std::to_string(params.states) +
                            ")");
  }
}

}  // namespace

ProtocolMessage alice_commit(const ProtocolParams& params, int choice,
                             const Strategy& strategy,
                             const SessionId& session) {
  check_choice(params, choice);
  double mean_photons = params.mean_photons();
  if (strategy.kind == Strategy::Kind::Underpower) {
    if (!(strategy.factor > 0.0) || !(strategy.factor < 1.0)) {
      throw std::domain_error("underpower factor must lie in (0, 1)");
    }
    mean_photons *= strategy.factor;
  }
  return ProtocolMessage::commit_pulse(session, mean_photons,
                                       state_angle(params, choice));
}

int revealed_index(const ProtocolParams& params, int choice,
                   const Strategy& strategy) {
  check_choice(params, choice);
  if (strategy.kind != Strategy::Kind::NeighborCheat) {
    return choice;
  }
  return choice + 1 < params.states ? choice + 1 : choice - 1;
}

ProtocolMessage alice_reveal(const ProtocolParams& params, int choice,
                             const Strategy& strategy,
                             const SessionId& session) {
  return ProtocolMessage::reveal(
      session,
      static_cast<std::uint32_t>(revealed_index(params, choice, strategy)));
}

SessionState bob_receive_commit(SessionState state,
                                const ProtocolMessage& message) {
  if (state.phase != Phase::AwaitCommit) {
    throw ProtocolOrderError("commit received outside AWAIT_COMMIT");
  }
  if (message.kind() != MessageKind::CommitPulse) {
    throw ProtocolOrderError("expected COMMIT_PULSE, got " +
                             to_string(message.kind()));
  }
  // Quantum memory: the pulse is stored as sent, nothing is measured and
  // nothing about the choice is learned before the reveal.
  state.stored_pulse.emplace(message.commit().mean_photons,
                             message.commit().angle);
  state.transcript.push_back(message);
  state.phase = Phase::Committed;
  return state;
}

std::pair<SessionState, ProtocolMessage> bob_verify(
    SessionState state, const ProtocolMessage& reveal, TrialRng& rng) {
  if (state.phase != Phase::Committed) {
    throw ProtocolOrderError("reveal received outside COMMITTED");
  }
  if (reveal.kind() != MessageKind::Reveal) {
    throw ProtocolOrderError("expected REVEAL, got " +
                             to_string(reveal.kind()));
  }
  const auto claimed = static_cast<int>(reveal.reveal_payload().choice_index);
  check_choice(state.params, claimed);
  state.transcript.push_back(reveal);
  state.phase = Phase::Revealed;

  const MeasurementSetup setup{
      .rotator_angle = state_angle(state.params, claimed),
      .main_detector_efficiency = state.params.detector_efficiency,
      .spd_efficiency = 1.0,
      .dark_count_prob = 0.0,
  };
  const DetectionRecord record = measure(*state.stored_pulse, setup, rng);

  VerdictReason reason;
  if (record.spd_click) {
    reason = VerdictReason::SpdClick;
  } else if (record.main_click) {
    reason = VerdictReason::Confirmed;
  } else {
    reason = VerdictReason::NoDetection;
  }
  const bool accepted = reason == VerdictReason::Confirmed;

  auto verdict = ProtocolMessage::verdict(reveal.session_id(), accepted, reason);
  state.transcript.push_back(verdict);
  state.phase = Phase::Closed;
  return {std::move(state), std::move(verdict)};
}

SessionOutcome run_session(const ProtocolParams& params,
                           const Strategy& strategy, int choice,
                           const SimConfig& cfg) {
  // Stream 0 of the seed names the session, stream 1 drives the detectors;
  // reruns with the same seed are bit-identical.
  TrialRng id_rng(cfg.seed, 0);
  SessionId session;
  for (std::size_t i = 0; i < session.size(); i += 8) {
    const std::uint64_t word = id_rng();
    for (std::size_t b = 0; b < 8; ++b) {
      session[i + b] = static_cast<std::uint8_t>(word >> (8 * b));
    }
  }
  TrialRng detector_rng(cfg.seed, 1);

  SessionState state;
  state.params = params;

  state = bob_receive_commit(std::move(state),
                             alice_commit(params, choice, strategy, session));
  auto [closed, verdict_msg] =
      bob_verify(std::move(state), alice_reveal(params, choice, strategy, session),
                 detector_rng);

  return SessionOutcome{
      .transcript = std::move(closed.transcript),
      .verdict = verdict_msg.verdict_payload(),
  };
}

}  // namespace qbsc
