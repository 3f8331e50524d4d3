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

#include "tsui/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "parallel.hpp"
#include "tsui/curve_table.hpp"
#include "tsui/errors.hpp"
#include "tsui/simd/kernels.hpp"
#include "tsui/text_util.hpp"

namespace tsui {
namespace {

constexpr std::size_t kMinSamples = std::size_t{1} << 14;

double tone_phase(double freq, double sample_rate, std::size_t i) {
  const double cycles = freq * static_cast<double>(i) / sample_rate;
  return 2.0 * std::numbers::pi * (cycles - std::floor(cycles));
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void SimConfig::validate() const {
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_pos(sample_rate)) throw DomainError("sample_rate must be > 0");
  if (!finite_pos(duration)) throw DomainError("duration must be > 0");
  if (!finite_pos(tone_freq)) throw DomainError("tone_freq must be > 0");
  if (!(sample_rate > 2.0 * tone_freq)) {
    throw DomainError("sample_rate must exceed twice tone_freq");
  }
  if (num_samples() < kMinSamples) {
    throw DomainError("duration * sample_rate must be >= 16384 samples");
  }
  if (!(tone_depth >= 0.0) || !std::isfinite(tone_depth)) {
    throw DomainError("tone_depth must be >= 0");
  }
  if (!(lock_jitter_rms >= 0.0) || !std::isfinite(lock_jitter_rms)) {
    throw DomainError("lock_jitter_rms must be >= 0");
  }
  if (!finite_pos(jitter_block)) throw DomainError("jitter_block must be > 0");
  if (!(electronic_noise_var >= 0.0) || !std::isfinite(electronic_noise_var)) {
    throw DomainError("electronic_noise_var must be >= 0");
  }
  if (!finite_pos(rbw)) throw DomainError("rbw must be > 0");
  if (!(analysis_freq - rbw / 2 > 0.0 &&
        analysis_freq + rbw / 2 < sample_rate / 2)) {
    throw DomainError("analysis band must lie inside (0, sample_rate/2)");
  }
}

std::size_t SimConfig::num_samples() const {
  const double n = std::round(duration * sample_rate);
  return n > 0 && std::isfinite(n) ? static_cast<std::size_t>(n) : 0;
}

double SimConfig::tone_amplitude() const {
  return 2.0 * std::sqrt(params.eta_p() * params.gain()) * params.alpha() *
         tone_depth;
}

std::string SimConfig::to_config_text() const {
  std::string s;
  auto kv = [&](const char* k, const std::string& v) {
    s += std::string(k) + " = " + v + "\n";
  };
  kv("gain", format_number(params.gain()));
  kv("eta_p", format_number(params.eta_p()));
  kv("eta_c", format_number(params.eta_c()));
  kv("alpha", format_number(params.alpha()));
  kv("sample_rate", format_number(sample_rate));
  kv("duration", format_number(duration));
  kv("tone_freq", format_number(tone_freq));
  kv("tone_depth", format_number(tone_depth));
  kv("lock_jitter_rms", format_number(lock_jitter_rms));
  kv("jitter_block", format_number(jitter_block));
  kv("electronic_noise_var", format_number(electronic_noise_var));
  kv("analysis_freq", format_number(analysis_freq));
  kv("rbw", format_number(rbw));
  kv("rng_seed", std::to_string(rng_seed));
  kv("coherent_reference", coherent_reference ? "true" : "false");
  return s;
}

SimConfig parse_sim_config(std::string_view text) {
  std::map<std::string, double, std::less<>> num{
      {"gain", 1.0}, {"eta_p", 1.0}, {"eta_c", 1.0}, {"alpha", 0.0}};
  SimConfig cfg;
  std::map<std::string_view, double*> fields{
      {"sample_rate", &cfg.sample_rate},
      {"duration", &cfg.duration},
      {"tone_freq", &cfg.tone_freq},
      {"tone_depth", &cfg.tone_depth},
      {"lock_jitter_rms", &cfg.lock_jitter_rms},
      {"jitter_block", &cfg.jitter_block},
      {"electronic_noise_var", &cfg.electronic_noise_var},
      {"analysis_freq", &cfg.analysis_freq},
      {"rbw", &cfg.rbw}};
  std::set<std::string, std::less<>> seen;

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", lineno);
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ParseError("duplicate key '" + std::string(key) + "'", lineno);
    }
    if (key == "rng_seed") {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || p != value.data() + value.size() || value.empty()) {
        throw ParseError("rng_seed must be an unsigned integer", lineno);
      }
      cfg.rng_seed = v;
      continue;
    }
    if (key == "coherent_reference") {
      if (value == "true" || value == "1") {
        cfg.coherent_reference = true;
      } else if (value == "false" || value == "0") {
        cfg.coherent_reference = false;
      } else {
        throw ParseError("coherent_reference must be true or false", lineno);
      }
      continue;
    }
    const auto v = parse_double(value);
    if (!v) {
      throw ParseError("bad number '" + std::string(value) + "' for '" +
                           std::string(key) + "'",
                       lineno);
    }
    if (auto it = num.find(key); it != num.end()) {
      it->second = *v;
    } else if (auto f = fields.find(key); f != fields.end()) {
      *f->second = *v;
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", lineno);
    }
  }
  cfg.params = InterferometerParams(num["gain"], num["eta_p"], num["eta_c"],
                                    num["alpha"]);
  cfg.validate();
  return cfg;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  return parse_sim_config(read_file(path));
}

MeasurementRecord simulate_records(const SimConfig& config,
                                   std::uint64_t stream) {
  config.validate();
  const std::size_t n = config.num_samples();
  const GaussianState state = config.coherent_reference
                                  ? GaussianState::vacuum()
                                  : lossy_state(config.params);
  const std::size_t block = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(config.jitter_block *
                                               config.sample_rate)));
  const double amp = config.tone_amplitude();

  std::mt19937_64 noise_rng(derive_seed(config.rng_seed, 2 * stream));
  std::mt19937_64 jitter_rng(derive_seed(config.rng_seed, 2 * stream + 1));
  std::normal_distribution<double> unit(0.0, 1.0);

  MeasurementRecord rec;
  rec.config = config;
  rec.stream = stream;
  rec.probe.resize(n);
  rec.conjugate.resize(n);
  std::vector<double> z1(block), z2(block), tone(block);
  const simd::KernelTable& kt = simd::active();

  for (std::size_t base = 0; base < n; base += block) {
    const std::size_t len = std::min(block, n - base);
    double err_p = 0.0, err_c = 0.0;
    if (config.lock_jitter_rms > 0.0) {
      err_p = config.lock_jitter_rms * unit(jitter_rng);
      err_c = config.lock_jitter_rms * unit(jitter_rng);
    }
    Eigen::Matrix2d cov = detector_covariance(state, err_p, err_c);
    cov(0, 0) += config.electronic_noise_var;
    cov(1, 1) += config.electronic_noise_var;
    const double l11 = std::sqrt(cov(0, 0));
    const double l21 = cov(0, 1) / l11;
    const double l22 = std::sqrt(std::max(0.0, cov(1, 1) - l21 * l21));

    for (std::size_t i = 0; i < len; ++i) {
      z1[i] = unit(noise_rng);
      z2[i] = unit(noise_rng);
    }
    kt.mix_pair(rec.probe.data() + base, rec.conjugate.data() + base,
                z1.data(), z2.data(), l11, l21, l22, len);
    if (amp != 0.0) {
      for (std::size_t i = 0; i < len; ++i) {
        tone[i] = std::sin(
            tone_phase(config.tone_freq, config.sample_rate, base + i));
      }
      kt.axpy(rec.probe.data() + base, rec.probe.data() + base, tone.data(),
              amp * std::cos(err_p), len);
    }
  }
  return rec;
}

std::vector<double> combine_weighted(const MeasurementRecord& record,
                                     double lambda) {
  const WeightedMeasurement m(lambda);
  std::vector<double> out(record.probe.size());
  simd::axpy(out, record.probe, record.conjugate, m.lambda());
  return out;
}

SpectrumResult noise_floor(std::span<const double> series,
                           const SimConfig& config) {
  std::vector<double> work(series.begin(), series.end());
  if (config.tone_amplitude() > 0.0) {
    const ToneFit t = fit_tone(work, config.tone_freq, config.sample_rate);
    remove_tone(work, t, config.tone_freq, config.sample_rate);
  }
  return spectrum_power(work, config.analysis_freq, config.rbw,
                        config.sample_rate);
}

NoiseDataset measure_noise_vs_lambda(const SimConfig& config,
                                     std::span<const double> lambda_grid,
                                     int trials) {
  config.validate();
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (lambda_grid.size() < NoiseDataset::kMinNoisePoints) {
    throw DomainError("lambda grid needs at least " +
                      std::to_string(NoiseDataset::kMinNoisePoints) +
                      " points to form a dataset");
  }
  for (double l : lambda_grid) (void)WeightedMeasurement(l);

  const std::size_t nt = static_cast<std::size_t>(trials);
  const std::size_t nl = lambda_grid.size();
  std::vector<SpectrumResult> results(nl * nt);
  std::vector<SpectrumResult> reference(nt);
  SimConfig ref_config = config;
  ref_config.coherent_reference = true;

  internal::parallel_for(nl * nt + nt, [&](std::size_t job) {
    if (job < nl * nt) {
      const MeasurementRecord rec = simulate_records(config, job);
      results[job] =
          noise_floor(combine_weighted(rec, lambda_grid[job / nt]), config);
    } else {
      const MeasurementRecord rec = simulate_records(ref_config, job);
      reference[job - nl * nt] = noise_floor(rec.probe, ref_config);
    }
  });

  double ref_power = 0.0;
  for (const auto& r : reference) ref_power += r.power;
  ref_power /= static_cast<double>(nt);

  std::vector<NoisePoint> rows;
  for (std::size_t li = 0; li < nl; ++li) {
    double mean = 0.0;
    for (std::size_t t = 0; t < nt; ++t) mean += results[li * nt + t].power;
    mean /= static_cast<double>(nt);
    double sigma_db;
    if (nt >= 2) {
      double var = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        const double d = results[li * nt + t].power - mean;
        var += d * d;
      }
      var /= static_cast<double>(nt - 1);
      sigma_db = 10.0 / std::numbers::ln10 *
                 std::sqrt(var / static_cast<double>(nt)) / mean;
    } else {
      sigma_db = results[li].sigma_db;
    }
    rows.push_back({lambda_grid[li], 10.0 * std::log10(mean / ref_power),
                    sigma_db});
  }
  NoiseDataset ds(std::move(rows), DataSource::kSimulated);
  const auto& p = config.params;
  ds.add_metadata("gain", format_number(p.gain()));
  ds.add_metadata("eta_p", format_number(p.eta_p()));
  ds.add_metadata("eta_c", format_number(p.eta_c()));
  ds.add_metadata("alpha", format_number(p.alpha()));
  ds.add_metadata("sample_rate", format_number(config.sample_rate));
  ds.add_metadata("duration", format_number(config.duration));
  ds.add_metadata("analysis_freq", format_number(config.analysis_freq));
  ds.add_metadata("rbw", format_number(config.rbw));
  ds.add_metadata("lock_jitter_rms", format_number(config.lock_jitter_rms));
  ds.add_metadata("electronic_noise_var",
                  format_number(config.electronic_noise_var));
  ds.add_metadata("rng_seed", std::to_string(config.rng_seed));
  ds.add_metadata("trials", std::to_string(trials));
  ds.add_metadata("reference", "coherent single detector, same pipeline");
  return ds;
}

Fig2Result fig2_comparison(const SimConfig& config, double lambda) {
  config.validate();
  if (!(config.tone_amplitude() > 0.0)) {
    throw DomainError("fig2 comparison needs a tone (alpha and tone_depth > 0)");
  }
  SimConfig coherent = config;
  coherent.coherent_reference = true;

  Fig2Result out;
  out.lambda = WeightedMeasurement(lambda).lambda();
  auto trace = [&](const SimConfig& c, std::uint64_t stream,
                   SpectrumResult& floor, SpectrumResult& tone) {
    std::vector<double> s = combine_weighted(simulate_records(c, stream), lambda);
    const ToneFit t = fit_tone(s, c.tone_freq, c.sample_rate);
    tone = tone_power(t, c.analysis_freq, c.rbw, c.sample_rate);
    remove_tone(s, t, c.tone_freq, c.sample_rate);
    floor = spectrum_power(s, c.analysis_freq, c.rbw, c.sample_rate);
  };
  trace(config, 0, out.squeezed_floor, out.squeezed_tone);
  trace(coherent, 1, out.coherent_floor, out.coherent_tone);
  return out;
}

}  // namespace tsui
