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
/// Phase-sensing figures of merit for the weighted joint measurement
/// M = Y_p + lambda Y_c: optimal weight, noise power, sensitivity, quantum
/// Cramer-Rao bound and the improvement over two coherent-light baselines.
///
/// All noise powers are in units of single-detector shot noise (variance 1),
/// and all decibel values are 10 log10 of a power ratio.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tsui/curve_table.hpp"
#include "tsui/gaussian.hpp"

namespace tsui {

/// Coherent-light reference: kSql1 reads both beams with two homodyne
/// detectors (lambda = 1), kSql2 uses only the detector behind the phase
/// object.
enum class SqlKind { kSql1, kSql2 };

std::string_view sql_name(SqlKind kind) noexcept;

struct NoiseResult {
  double variance = 0.0;
  double variance_db = 0.0;
  double lambda = 0.0;
};

struct SensitivityResult {
  double delta_phi = 0.0;
  std::optional<double> snr_db;
};

/// 10 log10(power ratio).
double to_db(double power_ratio);
double from_db(double db);

/// Noise-minimizing weight in closed form,
///   sqrt(eta_p eta_c) sinh 2r / (1 - eta_c + eta_c cosh 2r),
/// clamped to [0,1]. Lossless: tanh 2r.
double lambda_opt(const InterferometerParams& params);

/// Same ratio without the clamp. Exceeds 1 when the probe is much less lossy
/// than the conjugate at high gain.
double lambda_opt_unclamped(const InterferometerParams& params);

/// Independent route: golden-section minimization over [0,1] of the joint
/// variance evaluated from the lossy covariance matrix, finished with one
/// parabolic step through the final bracket.
double lambda_opt_numeric(const InterferometerParams& params,
                          double tolerance = 1e-10);

/// Variance of M for the lossy seeded state. `electronic_noise_var` is an
/// additive per-detector variance; the conjugate's share is attenuated by
/// lambda like the rest of its signal.
NoiseResult joint_noise_power(const InterferometerParams& params,
                              double lambda,
                              double electronic_noise_var = 0.0);

/// d<M>/d(phi) = 2 sqrt(eta_p G) |alpha|; independent of lambda.
double signal_slope(const InterferometerParams& params);

/// SNR = slope^2 dphi^2 / Var(M).
double snr(const InterferometerParams& params, double lambda, double dphi);

/// Minimum detectable phase, Var(M) / slope^2 = delta_phi^2.
/// Throws DomainError when alpha == 0 (no signal).
SensitivityResult phase_sensitivity(const InterferometerParams& params,
                                    double lambda);

/// Quantum Fisher information of the pure (lossless) seeded state for a phase
/// on the probe: 4 Var(n_p). Throws UnsupportedConfiguration for lossy params.
double quantum_fisher_information(const InterferometerParams& params);

/// 1/sqrt(F_Q). Throws UnsupportedConfiguration for lossy params and
/// DomainError when F_Q == 0 (vacuum input with no gain).
SensitivityResult qcrb(const InterferometerParams& params);

/// Power-matched coherent baseline: same photon flux through the phase
/// object as the probe and the same probe-path transmission.
SensitivityResult sql_sensitivity(SqlKind kind,
                                  const InterferometerParams& params);

/// 10 log10[(delta_phi_SQL / delta_phi)^2] in dB.
double snri(const InterferometerParams& params, double lambda, SqlKind kind);

// Curve generators. Grids must be nonempty and strictly increasing; lambda
// grids must lie in [0,1].

/// Noise variance and dB of M vs lambda, one column pair per parameter set.
CurveTable curve_noise_vs_lambda(std::span<const InterferometerParams> params,
                                 std::span<const double> lambda_grid);

struct TransmissionPair {
  double eta_p = 1.0;
  double eta_c = 1.0;
};

/// lambda_opt vs gain, one column per transmission pair.
CurveTable curve_lambda_opt_vs_gain(std::span<const TransmissionPair> etas,
                                    std::span<const double> gain_grid);

/// delta_phi * |alpha| vs gain for M (lambda=1), M at lambda_opt and the
/// QCRB, lossless. Large alpha approaches the seed-dominated regime.
CurveTable curve_sensitivity_vs_gain(double alpha,
                                     std::span<const double> gain_grid);

/// SNRI over SQL2 and SQL1 vs lambda, one column pair per parameter set.
CurveTable curve_snri_vs_lambda(std::span<const InterferometerParams> params,
                                std::span<const double> lambda_grid);

/// Short label used in column names, e.g. "G1.67_ep0.76_ec0.79" or "G2".
std::string params_tag(const InterferometerParams& params);

}  // namespace tsui
