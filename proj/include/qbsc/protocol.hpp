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
// Commit/reveal state machines. Alice commits to one of M constellation
// states by sending the pulse; Bob stores it unmeasured (his quantum memory)
// until Alice reveals, then rotates the stored pulse to horizontal and reads
// both detectors. The quantum channel is modeled as transport of the pulse's
// classical description, with all quantum behavior confined to measurement
// sampling; coherent states are fully described by their amplitudes.

#pragma once

#include <optional>
#include <vector>

#include "qbsc/messages.hpp"
#include "qbsc/photon_sim.hpp"
#include "qbsc/polarization.hpp"

namespace qbsc {

/// A message arrived out of protocol order or with the wrong kind.
class ProtocolOrderError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// What Alice does with her committed choice.
struct Strategy {
  enum class Kind {
    Honest,         ///< send the chosen state, reveal it truthfully
    NeighborCheat,  ///< send the chosen state, reveal a neighbor instead
    Underpower,     ///< honest angles but the pulse carries factor * <n>
  };

  Kind kind = Kind::Honest;
  double factor = 1.0;  ///< Underpower scale, in (0, 1)

  static Strategy honest() { return {Kind::Honest, 1.0}; }
  static Strategy neighbor_cheat() { return {Kind::NeighborCheat, 1.0}; }
  static Strategy underpower(double factor) {
    return {Kind::Underpower, factor};
  }
};

enum class Phase {
  AwaitCommit,
  Committed,
  Revealed,
  Closed,
};

/// Bob's view of one session. Single-owner: one logical thread drives a
/// session; distinct sessions are independent.
struct SessionState {
  Phase phase = Phase::AwaitCommit;
  ProtocolParams params;
  std::optional<PolarizationPulse> stored_pulse;
  std::vector<ProtocolMessage> transcript;
};

/// The commit-phase pulse message for the given choice and strategy.
/// Honest and NeighborCheat send the chosen state at the protocol power;
/// Underpower scales the mean photon number by strategy.factor.
ProtocolMessage alice_commit(const ProtocolParams& params, int choice,
                             const Strategy& strategy, const SessionId& session);

/// Index Alice will claim at reveal time: the committed choice, except under
/// NeighborCheat where it is the upper neighbor (lower for the top edge state).
int revealed_index(const ProtocolParams& params, int choice,
                   const Strategy& strategy);

/// The reveal-phase message matching alice_commit.
ProtocolMessage alice_reveal(const ProtocolParams& params, int choice,
                             const Strategy& strategy, const SessionId& session);

/// Stores the committed pulse without measuring it. Requires phase
/// AWAIT_COMMIT and a COMMIT_PULSE message; throws ProtocolOrderError
/// otherwise.
SessionState bob_receive_commit(SessionState state,
                                const ProtocolMessage& message);

/**
 * Verifies a reveal against the stored pulse: sets the rotator to the
 * revealed state's angle and measures with the main detector at the protocol
 * efficiency and an ideal SPD. CONFIRMED iff the main detector clicks and the
 * SPD is silent; SPD_CLICK if the guard fired; NO_DETECTION if nothing fired
 * (rejected: an honest pulse at the agreed power should have clicked).
 * Requires phase COMMITTED and a REVEAL message; the session ends CLOSED.
 */
std::pair<SessionState, ProtocolMessage> bob_verify(
    SessionState state, const ProtocolMessage& reveal, TrialRng& rng);

/// Full three-message session transcript plus the final verdict.
struct SessionOutcome {
  std::vector<ProtocolMessage> transcript;
  VerdictPayload verdict;
};

/// Runs one commit -> reveal -> verdict session. Deterministic in cfg.seed:
/// the session id and every detector draw derive from it.
SessionOutcome run_session(const ProtocolParams& params,
                           const Strategy& strategy, int choice,
                           const SimConfig& cfg);

}  // namespace qbsc
