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

#include "tsui/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tsui/errors.hpp"
#include "tsui/simd/kernels.hpp"

namespace tsui {
namespace {

constexpr std::size_t kChunk = 4096;
constexpr std::size_t kBatches = 16;

struct Band {
  std::size_t seg_len;
  std::size_t k_lo;
  std::size_t k_hi;  // inclusive
  std::size_t bins() const { return k_hi - k_lo + 1; }
};

Band make_band(double center_freq, double rbw, double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw DomainError("sample rate must be > 0");
  }
  if (!(rbw > 0.0) || !std::isfinite(rbw)) {
    throw DomainError("resolution bandwidth must be > 0");
  }
  if (!(center_freq - rbw / 2 > 0.0) ||
      !(center_freq + rbw / 2 < sample_rate / 2)) {
    throw DomainError("analysis band must lie strictly inside (0, fs/2)");
  }
  Band b;
  b.seg_len = static_cast<std::size_t>(std::lround(10.0 * sample_rate / rbw));
  const double df = sample_rate / static_cast<double>(b.seg_len);
  b.k_lo = static_cast<std::size_t>(
      std::ceil((center_freq - rbw / 2) / df - 1e-9));
  b.k_hi = static_cast<std::size_t>(
      std::floor((center_freq + rbw / 2) / df + 1e-9));
  if (b.k_lo < 1 || b.k_hi >= b.seg_len / 2 || b.k_hi < b.k_lo) {
    throw DomainError("analysis band does not cover any interior bin");
  }
  return b;
}

double tone_phase(double freq, double sample_rate, std::size_t i) {
  const double cycles = freq * static_cast<double>(i) / sample_rate;
  return 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
}

double to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace

SpectrumResult spectrum_power(std::span<const double> series,
                              double center_freq, double rbw,
                              double sample_rate) {
  const Band band = make_band(center_freq, rbw, sample_rate);
  const std::size_t n = band.seg_len;
  if (series.size() < n) {
    throw DomainError("series shorter than one analysis segment (" +
                      std::to_string(n) + " samples)");
  }

  std::vector<double> window(n);
  double w2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(i) / n));
    w2 += window[i] * window[i];
  }
  const std::size_t nb = band.bins();
  std::vector<std::vector<double>> wc(nb, std::vector<double>(n));
  std::vector<std::vector<double>> ws(nb, std::vector<double>(n));
  for (std::size_t b = 0; b < nb; ++b) {
    const std::size_t k = band.k_lo + b;
    for (std::size_t i = 0; i < n; ++i) {
      // k i mod n keeps the argument small and exact.
      const double arg = 2.0 * std::numbers::pi *
                         static_cast<double>((k * i) % n) /
                         static_cast<double>(n);
      wc[b][i] = window[i] * std::cos(arg);
      ws[b][i] = window[i] * std::sin(arg);
    }
  }

  const simd::KernelTable& kt = simd::active();
  const std::size_t hop = n / 2;
  std::vector<double> seg_power;
  for (std::size_t start = 0; start + n <= series.size(); start += hop) {
    double acc = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const simd::Dot2 d = kt.dot2(series.data() + start, wc[b].data(),
                                   ws[b].data(), n);
      acc += d.first * d.first + d.second * d.second;
    }
    seg_power.push_back(acc / (w2 * static_cast<double>(nb)));
  }

  SpectrumResult r;
  r.center_freq = center_freq;
  r.rbw = rbw;
  r.segments = seg_power.size();
  r.bins = nb;
  double sum = 0.0;
  for (double p : seg_power) sum += p;
  r.power = sum / static_cast<double>(seg_power.size());
  r.power_db = to_db(r.power);

  // Batch means: overlapping neighbours are correlated, contiguous batches
  // of many segments are not.
  const std::size_t batches = std::min(kBatches, seg_power.size() / 2);
  if (batches >= 2) {
    const std::size_t per = seg_power.size() / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      for (std::size_t j = 0; j < per; ++j) means[b] += seg_power[b * per + j];
      means[b] /= static_cast<double>(per);
    }
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= static_cast<double>(batches);
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= static_cast<double>(batches - 1);
    const double se = std::sqrt(var / static_cast<double>(batches));
    r.sigma_db = 10.0 / std::numbers::ln10 * se / r.power;
  } else {
    // A single segment carries one chi-square draw per bin.
    r.sigma_db = 10.0 / std::numbers::ln10 / std::sqrt(static_cast<double>(nb));
  }
  return r;
}

ToneFit fit_tone(std::span<const double> series, double freq,
                 double sample_rate) {
  if (!(freq > 0.0 && freq < sample_rate / 2)) {
    throw DomainError("tone frequency must lie in (0, fs/2)");
  }
  const simd::KernelTable& kt = simd::active();
  std::vector<double> s(kChunk), c(kChunk);
  double xs = 0.0, xc = 0.0, ss = 0.0, sc = 0.0, cc = 0.0;
  for (std::size_t base = 0; base < series.size(); base += kChunk) {
    const std::size_t len = std::min(kChunk, series.size() - base);
    for (std::size_t i = 0; i < len; ++i) {
      const double ph = tone_phase(freq, sample_rate, base + i);
      s[i] = std::sin(ph);
      c[i] = std::cos(ph);
    }
    const simd::Dot2 d = kt.dot2(series.data() + base, s.data(), c.data(), len);
    const simd::Dot2 e = kt.dot2(s.data(), s.data(), c.data(), len);
    xs += d.first;
    xc += d.second;
    ss += e.first;
    sc += e.second;
    cc += kt.dot2(c.data(), c.data(), c.data(), len).first;
  }
  const double det = ss * cc - sc * sc;
  if (!(det > 0.0)) throw DomainError("series too short to fit a tone");
  const double a = (xs * cc - xc * sc) / det;
  const double b = (xc * ss - xs * sc) / det;
  return {std::hypot(a, b), std::atan2(b, a)};
}

void remove_tone(std::span<double> series, const ToneFit& tone, double freq,
                 double sample_rate) {
  const simd::KernelTable& kt = simd::active();
  std::vector<double> s(kChunk);
  for (std::size_t base = 0; base < series.size(); base += kChunk) {
    const std::size_t len = std::min(kChunk, series.size() - base);
    for (std::size_t i = 0; i < len; ++i) {
      s[i] = std::sin(tone_phase(freq, sample_rate, base + i) + tone.phase);
    }
    kt.axpy(series.data() + base, series.data() + base, s.data(),
            -tone.amplitude, len);
  }
}

SpectrumResult tone_power(const ToneFit& tone, double center_freq, double rbw,
                          double sample_rate) {
  const Band band = make_band(center_freq, rbw, sample_rate);
  SpectrumResult r;
  r.center_freq = center_freq;
  r.rbw = rbw;
  r.bins = band.bins();
  r.power = tone.amplitude * tone.amplitude *
            static_cast<double>(band.seg_len) /
            (4.0 * static_cast<double>(band.bins()));
  r.power_db = to_db(r.power);
  r.is_peak = true;
  return r;
}

}  // namespace tsui
