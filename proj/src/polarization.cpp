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

#include "qbsc/polarization.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qbsc {

namespace {

// Reduce an angle to [0, pi). Linear polarization directions are mod-pi.
double normalize_direction(double angle) {
  double reduced = std::fmod(angle, kPi);
  if (reduced < 0.0) reduced += kPi;
  if (reduced >= kPi) reduced = 0.0;  // fmod edge after the += above
  return reduced;
}

void check_states(int states) {
  if (states < 2) {
    throw std::domain_error("constellation needs at least 2 states, got " +
                            std::to_string(states));
  }
}

}  // namespace

PolarizationPulse::PolarizationPulse(double mean_photons, double angle)
    : mean_photons_(mean_photons), angle_(angle) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw std::domain_error("mean photon number must be finite and >= 0");
  }
  if (!(angle >= 0.0) || !(angle < kPi)) {
    throw std::domain_error("polarization angle must lie in [0, pi)");
  }
}

double PolarizationPulse::alpha() const {
  return std::sqrt(mean_photons_) * std::cos(angle_);
}

double PolarizationPulse::beta() const {
  return std::sqrt(mean_photons_) * std::sin(angle_);
}

PolarizationPulse PolarizationPulse::split(int parts) const {
  if (parts < 1) {
    throw std::domain_error("cannot split a pulse into fewer than 1 part");
  }
  return PolarizationPulse(mean_photons_ / parts, angle_);
}

ProtocolParams ProtocolParams::uniform(int states, double target_overlap,
                                       double detector_efficiency) {
  check_states(states);
  return with_prior(states, target_overlap, detector_efficiency,
                    std::vector<double>(states, 1.0 / states));
}

ProtocolParams ProtocolParams::with_prior(int states, double target_overlap,
                                          double detector_efficiency,
                                          std::vector<double> prior) {
  check_states(states);
  if (!(target_overlap > 0.0) || !(target_overlap < 1.0)) {
    throw std::domain_error("target overlap must lie in (0, 1)");
  }
  if (!(detector_efficiency > 0.0) || !(detector_efficiency <= 1.0)) {
    throw std::domain_error("detector efficiency must lie in (0, 1]");
  }
  if (prior.size() != static_cast<std::size_t>(states)) {
    throw std::domain_error("prior length must equal the number of states");
  }
  for (double p : prior) {
    if (!(p >= 0.0)) throw std::domain_error("prior entries must be >= 0");
  }
  const double sum = std::accumulate(prior.begin(), prior.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("prior must sum to 1 within 1e-9");
  }
  ProtocolParams params;
  params.states = states;
  params.target_overlap = target_overlap;
  params.detector_efficiency = detector_efficiency;
  params.prior = std::move(prior);
  return params;
}

double ProtocolParams::mean_photons() const {
  return mean_photons_from_overlap(states, target_overlap);
}

double state_angle(const ProtocolParams& params, int index) {
  if (index < 0 || index >= params.states) {
    throw std::domain_error("state index " + std::to_string(index) +
                            " outside [0, " + std::to_string(params.states) +
                            ")");
  }
  return index * kPi / (2.0 * params.states);
}

PolarizationPulse rotate(const PolarizationPulse& pulse, double theta) {
  // R(theta) applied to (sqrt(n) cos a, sqrt(n) sin a) is exactly
  // (sqrt(n) cos(a+theta), sqrt(n) sin(a+theta)); adding angles keeps the
  // mean photon number bit-identical.
  return PolarizationPulse(pulse.mean_photons(),
                           normalize_direction(pulse.angle() + theta));
}

double neighbor_overlap(double mean_photons, double theta) {
  if (!(mean_photons >= 0.0)) {
    throw std::domain_error("mean photon number must be >= 0");
  }
  const double s = std::sin(theta / 2.0);
  return std::exp(-4.0 * mean_photons * s * s);
}

double mean_photons_from_overlap(int states, double overlap) {
  check_states(states);
  if (!(overlap > 0.0) || !(overlap < 1.0)) {
    throw std::domain_error("overlap must lie in (0, 1)");
  }
  const double s = std::sin(kPi / (4.0 * states));
  return -std::log(overlap) / (4.0 * s * s);
}

double overlap_from_mean_photons(int states, double mean_photons) {
  check_states(states);
  if (!(mean_photons >= 0.0)) {
    throw std::domain_error("mean photon number must be >= 0");
  }
  return neighbor_overlap(mean_photons, kPi / (2.0 * states));
}

}  // namespace qbsc
