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
// Closed-form security analysis of the commitment protocol: Bob's brute-force
// identification probability, the Gaussian-cloning security condition, and
// Alice's neighbor-swap cheat probability.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qbsc/polarization.hpp"

namespace qbsc {

/// One row of the security table for a given constellation size.
struct SecurityReport {
  int states = 0;                   ///< constellation size M
  double mean_photons = 0.0;        ///< derived <n>
  double alice_cheat_prob = 0.0;    ///< neighbor-swap cheat success probability
  double brute_force_prob = 0.0;    ///< Bob's unambiguous identification probability
  bool qcm_secure = false;          ///< cloning condition holds for every split
  std::optional<int> worst_split;   ///< smallest violating split when insecure
};

/**
 * Probability that Bob identifies Alice's committed state without any doubt
 * by splitting the pulse into M weak copies and measuring each in a different
 * constellation basis with ideal single-photon detectors on both outputs.
 * Success requires a click in the expected output of the correct basis and
 * clicks in both outputs for every other basis.
 */
double brute_force_probability(const ProtocolParams& params);

/**
 * Whether cloning-based identification is unprofitable when Bob splits the
 * committed pulse into `split_count` copies (1 <= split_count <= M-1) and
 * clones them up to M: holds iff the overlap between a state and the midpoint
 * of two neighbors is at least the polarization cloning fidelity. Both sides
 * are compared in log space with a 1e-12 absolute tolerance so the verdict
 * does not flip on rounding.
 */
bool qcm_condition_holds(const ProtocolParams& params, int split_count);

/// Evaluates the cloning condition for every split in [1, M-1]. Returns
/// (true, nullopt) when all hold, else (false, smallest violating split).
std::pair<bool, std::optional<int>> qcm_secure(const ProtocolParams& params);

/// Fidelity of polarization cloning when `split_count` input copies are
/// expanded to `states` Gaussian clones: [MN/(MN+M-N)]^2. Both components of
/// the polarization must be cloned, hence the square. Independent of the
/// mean photon number. Requires 1 <= split_count <= states.
double cloning_fidelity(int states, int split_count);

/**
 * Probability that Alice reveals a neighbor of the state she actually sent
 * and Bob confirms anyway: his main detector (efficiency mu) must click while
 * the single-photon detector on the orthogonal output stays silent.
 */
double alice_cheat_probability(const ProtocolParams& params);

/// One SecurityReport per constellation size in [min_states, max_states],
/// uniform prior. Requires 2 <= min_states <= max_states <= 64.
std::vector<SecurityReport> security_table(double target_overlap,
                                           double detector_efficiency,
                                           int min_states, int max_states);

}  // namespace qbsc
