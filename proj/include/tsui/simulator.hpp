// Copyright 2026 The tsui Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Synthetic dual-homodyne records: phase-quadrature samples of the lossy
/// seeded two-mode squeezed state with a modulation tone on the probe, block
/// lock jitter and electronic noise, plus the noise-vs-lambda measurement
/// built on top of them.
///
/// Samples are independent per time step (flat squeezing across the
/// analysis band) and AC coupled, so the bright amplitude-quadrature mean
/// never appears in the series.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsui/gaussian.hpp"
#include "tsui/noise_dataset.hpp"
#include "tsui/spectrum.hpp"

namespace tsui {

struct SimConfig {
  InterferometerParams params{1.0};
  double sample_rate = 4e6;       // Hz
  double duration = 0.5;          // s
  double tone_freq = 1e6;         // Hz
  double tone_depth = 0.0;        // rad, phase-modulation amplitude
  double lock_jitter_rms = 0.0;   // rad per detector
  double jitter_block = 1e-3;     // s per independent jitter draw
  double electronic_noise_var = 0.0;  // shot-noise units per detector
  double analysis_freq = 1e6;     // Hz
  double rbw = 1e5;               // Hz
  std::uint64_t rng_seed = 1;
  /// Replace the squeezed noise by vacuum noise on both detectors while
  /// keeping the probe tone: the coherent-beam reference of equal power.
  bool coherent_reference = false;

  /// Throws DomainError: sample_rate <= 2 tone_freq, fewer than 2^14
  /// samples, negative depth / jitter / electronic noise, jitter_block <= 0,
  /// or an analysis band outside (0, fs/2).
  void validate() const;
  std::size_t num_samples() const;
  /// 2 sqrt(eta_p G) alpha tone_depth.
  double tone_amplitude() const;

  /// `key = value` lines for every field, the inverse of parse_sim_config.
  std::string to_config_text() const;
};

/// Flat `key = value` file, `#` starts a comment. Keys: gain, eta_p, eta_c,
/// alpha and the SimConfig field names. Unknown or repeated keys and
/// unparsable values throw ParseError with the line number; the result is
/// validated.
SimConfig parse_sim_config(std::string_view text);
SimConfig load_sim_config(const std::filesystem::path& path);

struct MeasurementRecord {
  std::vector<double> probe;
  std::vector<double> conjugate;
  SimConfig config;
  std::uint64_t stream = 0;
};

/// Independent record for stream index `stream`; the same (config, stream)
/// always yields bit-identical series.
MeasurementRecord simulate_records(const SimConfig& config,
                                   std::uint64_t stream = 0);

/// probe + lambda * conjugate.
std::vector<double> combine_weighted(const MeasurementRecord& record,
                                     double lambda);

/// Noise floor of one combined series at the config's analysis band with
/// any tone at tone_freq fitted and removed first.
SpectrumResult noise_floor(std::span<const double> series,
                           const SimConfig& config);

/// For each lambda, `trials` independent records are combined and their
/// noise floors averaged. noise_db is relative to the single-detector
/// coherent reference measured by the same pipeline with the same number of
/// trials. sigma_db is the standard error over trials, or the batch-means
/// error of the single record when trials == 1; the reference's own error is
/// common to all rows and not included. Throws DomainError for a grid that
/// cannot form a NoiseDataset or trials < 1.
NoiseDataset measure_noise_vs_lambda(const SimConfig& config,
                                     std::span<const double> lambda_grid,
                                     int trials = 1);

struct Fig2Result {
  SpectrumResult squeezed_floor;
  SpectrumResult coherent_floor;
  SpectrumResult squeezed_tone;
  SpectrumResult coherent_tone;
  double lambda = 1.0;
  /// coherent_floor - squeezed_floor in dB: the SNR gain at fixed tone.
  double improvement_db() const {
    return coherent_floor.power_db - squeezed_floor.power_db;
  }
  double tone_ratio() const { return squeezed_tone.power / coherent_tone.power; }
};

/// Squeezed joint trace at `lambda` against coherent beams of equal power on
/// both detectors, each with the config's tone. tone_depth must be > 0.
Fig2Result fig2_comparison(const SimConfig& config, double lambda = 1.0);

/// 64-bit seed for stream `index` derived from `seed` (SplitMix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace tsui
