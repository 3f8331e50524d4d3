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
/// Spectrum-analyzer emulation: Welch band power around one frequency and a
/// least-squares lock-in for a single tone.
///
/// Normalization: the periodogram of each Hann-windowed segment is divided
/// by sum(w^2), so a white series of variance s^2 reads s^2 in every bin
/// (0 dB for unit variance). Band power is the mean over the bins whose
/// centres lie within +-rbw/2 of the requested frequency. Segments are
/// 10 sample_rate / rbw samples long, giving ten bins per RBW, and overlap by
/// half. A pure tone of amplitude A integrated over the same band reads
/// A^2 N_seg / (4 n_bins) on this scale.

#pragma once

#include <cstddef>
#include <span>

namespace tsui {

struct SpectrumResult {
  double center_freq = 0.0;
  double rbw = 0.0;
  /// 10 log10 of the band power on the scale above. Callers comparing
  /// against a reference subtract the reference's power_db.
  double power_db = 0.0;
  double power = 0.0;
  /// 1-sigma of power_db from batch means over the segment sequence.
  double sigma_db = 0.0;
  /// True when the value is the tone reading rather than the noise floor.
  bool is_peak = false;
  std::size_t segments = 0;
  std::size_t bins = 0;
};

/// Welch band power. Throws DomainError when the band does not fit strictly
/// between 0 and sample_rate / 2, rbw <= 0, or the series is shorter than
/// one segment.
SpectrumResult spectrum_power(std::span<const double> series,
                              double center_freq, double rbw,
                              double sample_rate);

struct ToneFit {
  double amplitude = 0.0;  // of A sin(2 pi f t + phase)
  double phase = 0.0;
};

/// Least-squares fit of a sin + b cos at freq over the whole series.
ToneFit fit_tone(std::span<const double> series, double freq,
                 double sample_rate);

/// Subtracts a fitted tone in place.
void remove_tone(std::span<double> series, const ToneFit& tone, double freq,
                 double sample_rate);

/// Tone reading on the spectrum scale: A^2 N_seg / (4 n_bins) for the band
/// used by spectrum_power, with is_peak set.
SpectrumResult tone_power(const ToneFit& tone, double center_freq, double rbw,
                          double sample_rate);

}  // namespace tsui
