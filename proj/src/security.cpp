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

#include "qbsc/security.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbsc {

namespace {

// Probability that both outputs of one basis click when a pulse of
// mean photon number n arrives at angle offset delta from the basis:
// (1 - e^{-n cos^2 delta})(1 - e^{-n sin^2 delta}). Equal to the
// 1 - 2 e^{-n/2} cosh[(n/2) cos 2delta] + e^{-n} form, but nonnegative by
// construction in floating point.
double both_click_probability(double mean_photons, double delta) {
  const double cos_d = std::cos(delta);
  const double sin_d = std::sin(delta);
  const double p_expected = -std::expm1(-mean_photons * cos_d * cos_d);
  const double p_other = -std::expm1(-mean_photons * sin_d * sin_d);
  return p_expected * p_other;
}

}  // namespace

double brute_force_probability(const ProtocolParams& params) {
  const int m = params.states;
  const double n = params.mean_photons();
  const double split_photons = n / m;

  double identified = 0.0;
  for (int k = 0; k < m; ++k) {
    double all_others_reject = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == k) continue;
      const double delta = state_angle(params, k) - state_angle(params, i);
      all_others_reject *= both_click_probability(split_photons, delta);
    }
    identified += params.prior[k] * all_others_reject;
  }
  return -std::expm1(-split_photons) * identified;
}

bool qcm_condition_holds(const ProtocolParams& params, int split_count) {
  const int m = params.states;
  if (split_count < 1 || split_count > m - 1) {
    throw std::domain_error("split count " + std::to_string(split_count) +
                            " outside [1, " + std::to_string(m - 1) + "]");
  }
  const double n = params.mean_photons();
  const double s = std::sin(kPi / (8.0 * m));
  // Overlap of a state with the midpoint between two neighbors, with the
  // pulse energy divided over split_count copies.
  const double log_halfway_overlap = -4.0 * (n / split_count) * s * s;
  const double mn = static_cast<double>(m) * split_count;
  const double log_fidelity = 2.0 * (std::log(mn) - std::log(mn + m - split_count));
  // At the boundary constellation size the two sides differ only in the
  // third decimal; compare logs with an absolute tolerance so rounding noise
  // cannot flip the verdict.
  return log_halfway_overlap >= log_fidelity - 1e-12;
}

std::pair<bool, std::optional<int>> qcm_secure(const ProtocolParams& params) {
  for (int split = 1; split < params.states; ++split) {
    if (!qcm_condition_holds(params, split)) {
      return {false, split};
    }
  }
  return {true, std::nullopt};
}

double cloning_fidelity(int states, int split_count) {
  if (states < 1 || split_count < 1 || split_count > states) {
    throw std::domain_error("cloning fidelity needs 1 <= split <= states");
  }
  const double mn = static_cast<double>(states) * split_count;
  const double single_mode = mn / (mn + states - split_count);
  return single_mode * single_mode;
}

double alice_cheat_probability(const ProtocolParams& params) {
  const double n = params.mean_photons();
  const double theta = kPi / (2.0 * params.states);
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double main_clicks =
      -std::expm1(-params.detector_efficiency * n * cos_t * cos_t);
  const double spd_silent = std::exp(-n * sin_t * sin_t);
  return main_clicks * spd_silent;
}

std::vector<SecurityReport> security_table(double target_overlap,
                                           double detector_efficiency,
                                           int min_states, int max_states) {
  if (min_states < 2 || min_states > max_states || max_states > 64) {
    throw std::domain_error("state range must satisfy 2 <= min <= max <= 64");
  }
  std::vector<SecurityReport> rows;
  rows.reserve(max_states - min_states + 1);
  for (int m = min_states; m <= max_states; ++m) {
    const auto params =
        ProtocolParams::uniform(m, target_overlap, detector_efficiency);
    auto [secure, worst] = qcm_secure(params);
    rows.push_back(SecurityReport{
        .states = m,
        .mean_photons = params.mean_photons(),
        .alice_cheat_prob = alice_cheat_probability(params),
        .brute_force_prob = brute_force_probability(params),
        .qcm_secure = secure,
        .worst_split = worst,
    });
  }
  return rows;
}

}  // namespace qbsc
