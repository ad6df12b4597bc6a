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
// Pure math for linearly polarized coherent-state pulses: the constellation
// grid, rotations, state overlaps, and mean-photon-number sizing.

#pragma once

#include <vector>

namespace qbsc {

inline constexpr double kPi = 3.14159265358979323846;

/**
 * A two-mode coherent state with real amplitudes, i.e. a laser pulse in a
 * pure linear polarization. Fully described by its mean photon number
 * n = alpha^2 + beta^2 and the polarization angle measured from horizontal.
 *
 * Angles live in [0, pi): a linear polarization direction is only defined
 * modulo pi for every measurement this library performs (a global sign flip
 * of both amplitudes is unobservable in photon counting). The protocol
 * constellation itself uses only [0, pi/2].
 */
class PolarizationPulse {
 public:
  /// Throws std::domain_error unless mean_photons >= 0 and angle in [0, pi).
  PolarizationPulse(double mean_photons, double angle);

  double mean_photons() const { return mean_photons_; }
  double angle() const { return angle_; }

  /// Horizontal amplitude sqrt(n) cos(angle).
  double alpha() const;
  /// Vertical amplitude sqrt(n) sin(angle).
  double beta() const;

  /// Equal-split into `parts` pulses: each carries mean_photons/parts at the
  /// same polarization angle (beamsplitters preserve the polarization of
  /// coherent states). Throws std::domain_error if parts < 1.
  PolarizationPulse split(int parts) const;

 private:
  double mean_photons_;
  double angle_;
};

/**
 * Protocol parameters agreed by Alice and Bob before a session.
 *
 * `states` is the constellation size M (the committed string has log2(M)
 * bits), `target_overlap` is the agreed residual overlap between neighboring
 * constellation states (how far neighbors are from orthogonal), and
 * `detector_efficiency` is the quantum efficiency of Bob's non-single-photon
 * detector. The prior is Alice's choice distribution over the M states.
 */
struct ProtocolParams {
  int states = 2;
  double target_overlap = 0.5;
  double detector_efficiency = 0.75;
  std::vector<double> prior;

  /// Params with the uniform prior. Validates all fields.
  static ProtocolParams uniform(int states, double target_overlap,
                                double detector_efficiency);

  /// Params with an explicit prior (length must equal `states`, entries
  /// nonnegative, sum within 1e-9 of one).
  static ProtocolParams with_prior(int states, double target_overlap,
                                   double detector_efficiency,
                                   std::vector<double> prior);

  /// Mean photon number the pulses must carry so that neighbors overlap by
  /// exactly target_overlap. Single source of the derived <n>.
  double mean_photons() const;
};

/// Angle of constellation state `index`: index * pi/(2M). The grid is
/// non-cyclic; states 0 and M-1 are not neighbors. Throws std::domain_error
/// when index is outside [0, M).
double state_angle(const ProtocolParams& params, int index);

/// Rotates the pulse's amplitudes by theta. For linear states this adds theta
/// to the polarization angle (reduced mod pi); the mean photon number is
/// preserved exactly.
PolarizationPulse rotate(const PolarizationPulse& pulse, double theta);

/// Squared inner product between a pulse of `mean_photons` and its copy
/// rotated by theta: exp(-4 n sin^2(theta/2)). Underflows silently to 0.
double neighbor_overlap(double mean_photons, double theta);

/// Inverts the neighbor-overlap relation at the constellation spacing
/// pi/(2M): returns the mean photon number for which two neighboring states
/// have the given residual overlap. Requires states >= 2 and overlap in (0,1).
double mean_photons_from_overlap(int states, double overlap);

/// Forward direction of the same relation: the residual overlap between two
/// neighboring constellation states carrying `mean_photons`.
double overlap_from_mean_photons(int states, double mean_photons);

}  // namespace qbsc
