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

#include "qbsc/photon_sim.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qbsc {

namespace {

// Runs cfg.trials independent trials; fn(trial_rng, counters) bumps the
// per-thread counters for one trial. Per-trial RNG substreams make the summed
// counts independent of the worker count and of the chunking.
template <std::size_t NumCounters, typename TrialFn>
std::array<std::uint64_t, NumCounters> accumulate_trials(const SimConfig& cfg,
                                                         TrialFn&& fn) {
  if (cfg.trials < 1) {
    throw std::domain_error("trial count must be >= 1");
  }
  unsigned workers = cfg.threads != 0 ? cfg.threads
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, cfg.trials));

  std::vector<std::array<std::uint64_t, NumCounters>> partials(
      workers, std::array<std::uint64_t, NumCounters>{});
  auto run_range = [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
    auto& counters = partials[worker];
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      TrialRng rng(cfg.seed, trial);
      fn(rng, counters);
    }
  };

  if (workers == 1) {
    run_range(0, 0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = cfg.trials / workers;
    const std::uint64_t remainder = cfg.trials % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < remainder ? 1 : 0);
      pool.emplace_back(run_range, w, begin, end);
      begin = end;
    }
    for (auto& t : pool) t.join();
  }

  std::array<std::uint64_t, NumCounters> totals{};
  for (const auto& part : partials) {
    for (std::size_t i = 0; i < NumCounters; ++i) totals[i] += part[i];
  }
  return totals;
}

int sample_choice(const std::vector<double>& prior, TrialRng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    cumulative += prior[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  return static_cast<int>(prior.size()) - 1;  // float tail guard
}

bool detector_clicks(double efficiency, double mean_photons, double dark,
                     TrialRng& rng) {
  const double p = 1.0 - (1.0 - dark) * std::exp(-efficiency * mean_photons);
  return rng.bernoulli(p);
}

}  // namespace

void MeasurementSetup::validate() const {
  if (!(main_detector_efficiency > 0.0) || !(main_detector_efficiency <= 1.0) ||
      !(spd_efficiency > 0.0) || !(spd_efficiency <= 1.0)) {
    throw std::domain_error("detector efficiencies must lie in (0, 1]");
  }
  if (!(dark_count_prob >= 0.0) || !(dark_count_prob < 1.0)) {
    throw std::domain_error("dark count probability must lie in [0, 1)");
  }
}

DetectionRecord measure(const PolarizationPulse& pulse,
                        const MeasurementSetup& setup, TrialRng& rng) {
  setup.validate();
  const double delta = pulse.angle() - setup.rotator_angle;
  const double cos_d = std::cos(delta);
  const double sin_d = std::sin(delta);
  const double n_main = pulse.mean_photons() * cos_d * cos_d;
  const double n_spd = pulse.mean_photons() * sin_d * sin_d;

  DetectionRecord record;
  record.main_click = detector_clicks(setup.main_detector_efficiency, n_main,
                                      setup.dark_count_prob, rng);
  record.spd_click = detector_clicks(setup.spd_efficiency, n_spd,
                                     setup.dark_count_prob, rng);
  return record;
}

HonestVerificationStats simulate_honest_verification(
    const ProtocolParams& params, int choice, const SimConfig& cfg,
    double dark_count_prob) {
  const double angle = state_angle(params, choice);
  const PolarizationPulse pulse(params.mean_photons(), angle);
  const MeasurementSetup setup{
      .rotator_angle = angle,
      .main_detector_efficiency = params.detector_efficiency,
      .spd_efficiency = 1.0,
      .dark_count_prob = dark_count_prob,
  };
  setup.validate();

  const auto counts = accumulate_trials<2>(
      cfg, [&](TrialRng& rng, std::array<std::uint64_t, 2>& counters) {
        const DetectionRecord record = measure(pulse, setup, rng);
        if (record.main_click && !record.spd_click) ++counters[0];
        if (record.spd_click) ++counters[1];
      });

  return HonestVerificationStats{
      .accept = McEstimate{counts[0], cfg.trials},
      .false_alarm = McEstimate{counts[1], cfg.trials},
  };
}

McEstimate simulate_brute_force_attack(const ProtocolParams& params,
                                       const SimConfig& cfg) {
  const int m = params.states;
  const double n = params.mean_photons();
  // Both PBS outputs carry ideal single-photon detectors during the attack.
  std::vector<MeasurementSetup> bases(m);
  for (int basis = 0; basis < m; ++basis) {
    bases[basis].rotator_angle = state_angle(params, basis);
  }

  const auto counts = accumulate_trials<1>(
      cfg, [&](TrialRng& rng, std::array<std::uint64_t, 1>& counters) {
        const int chosen = sample_choice(params.prior, rng);
        const PolarizationPulse weak_copy =
            PolarizationPulse(n, state_angle(params, chosen)).split(m);
        // Identification is unambiguous only when the basis matching Alice's
        // choice clicks in the expected output alone and every other basis
        // clicks in both outputs; anything else leaves a doubt and the trial
        // fails. Bases are tested in grid order.
        for (int basis = 0; basis < m; ++basis) {
          const DetectionRecord record = measure(weak_copy, bases[basis], rng);
          if (basis == chosen) {
            if (!record.main_click || record.spd_click) return;
          } else {
            if (!record.main_click || !record.spd_click) return;
          }
        }
        ++counters[0];
      });

  return McEstimate{counts[0], cfg.trials};
}

McEstimate simulate_cheating_alice(const ProtocolParams& params,
                                   const SimConfig& cfg) {
  const int m = params.states;
  const double n = params.mean_photons();

  const auto counts = accumulate_trials<1>(
      cfg, [&](TrialRng& rng, std::array<std::uint64_t, 1>& counters) {
        const int chosen = sample_choice(params.prior, rng);
        // Reveal the upper neighbor when one exists, else the lower one; the
        // angular offset is pi/(2M) either way.
        const int revealed = chosen + 1 < m ? chosen + 1 : chosen - 1;
        const PolarizationPulse sent(n, state_angle(params, chosen));
        const MeasurementSetup setup{
            .rotator_angle = state_angle(params, revealed),
            .main_detector_efficiency = params.detector_efficiency,
            .spd_efficiency = 1.0,
            .dark_count_prob = 0.0,
        };
        const DetectionRecord record = measure(sent, setup, rng);
        if (record.main_click && !record.spd_click) ++counters[0];
      });

  return McEstimate{counts[0], cfg.trials};
}

}  // namespace qbsc
