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
// Stochastic photon-level model of Bob's measurement setup and Monte Carlo
// runs of the honest protocol and both cheating scenarios. Serves as an
// independent check of the closed forms in security.hpp: the simulators
// sample detector clicks directly from coherent-state Poisson statistics and
// never evaluate the formulas they are validating.

#pragma once

#include <cmath>
#include <cstdint>

#include "qbsc/polarization.hpp"
#include "qbsc/rng.hpp"

namespace qbsc {

/**
 * Bob's polarization measurement: a rotator followed by a PBS with the
 * non-single-photon detector on the expected output and a single-photon
 * detector on the other output.
 */
struct MeasurementSetup {
  double rotator_angle = 0.0;
  double main_detector_efficiency = 1.0;  ///< in (0, 1]
  double spd_efficiency = 1.0;            ///< in (0, 1]
  double dark_count_prob = 0.0;           ///< in [0, 1), per detector per pulse

  /// Throws std::domain_error when a field is outside its range.
  void validate() const;
};

/// Click/no-click outcome of measuring one pulse.
struct DetectionRecord {
  bool main_click = false;
  bool spd_click = false;
};

/// Trial count and seed for a Monte Carlo run. `threads` = 0 picks the
/// hardware concurrency; results are identical for every thread count.
struct SimConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

/// Empirical success count with its binomial standard error.
struct McEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;

  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
  }
  double std_error() const {
    if (trials == 0) return 0.0;
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

/// Accept and false-alarm statistics of honest verification sessions.
struct HonestVerificationStats {
  McEstimate accept;       ///< main detector clicked, SPD silent
  McEstimate false_alarm;  ///< SPD clicked although Alice was honest
};

/**
 * Measures one pulse. The rotator maps the expected polarization to
 * horizontal, so the main detector sees n cos^2(delta) mean photons and the
 * SPD sees n sin^2(delta), with delta the pulse-rotator angle difference.
 * Each detector clicks with probability 1 - (1-p_dark) exp(-eta n_out),
 * the click statistics of a coherent state. Draw order is main then SPD.
 */
DetectionRecord measure(const PolarizationPulse& pulse,
                        const MeasurementSetup& setup, TrialRng& rng);

/**
 * Runs honest commit/verify rounds: Alice sends the constellation state
 * `choice` at the protocol mean photon number, Bob rotates it to horizontal
 * and accepts when the main detector (efficiency mu) clicks and the ideal
 * SPD stays silent. `dark_count_prob` applies to both detectors.
 */
HonestVerificationStats simulate_honest_verification(
    const ProtocolParams& params, int choice, const SimConfig& cfg,
    double dark_count_prob = 0.0);

/**
 * Brute-force attack: Bob splits the committed pulse into M copies of
 * <n>/M photons and measures each in a different constellation basis with
 * ideal single-photon detectors on both outputs. A trial succeeds when the
 * basis matching Alice's choice clicks in the expected output only and every
 * other basis clicks in both outputs, leaving a unique consistent candidate.
 * Returns the empirical identification frequency.
 */
McEstimate simulate_brute_force_attack(const ProtocolParams& params,
                                       const SimConfig& cfg);

/**
 * Neighbor-swap cheat: Alice sends state m but reveals the neighbor at
 * +pi/(2M) (or -pi/(2M) for the top edge state). Bob measures at the revealed
 * angle with main efficiency mu and an ideal SPD; the cheat succeeds when the
 * main detector clicks and the SPD stays silent. Returns the empirical
 * success frequency.
 */
McEstimate simulate_cheating_alice(const ProtocolParams& params,
                                   const SimConfig& cfg);

}  // namespace qbsc
