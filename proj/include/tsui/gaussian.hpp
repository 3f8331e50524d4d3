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
/// Covariance-matrix description of the probe/conjugate mode pair produced by
/// a seeded four-wave-mixing amplifier.
///
/// Conventions: quadratures are X = a + a^dagger (amplitude) and
/// Y = -i(a - a^dagger) (phase), so the vacuum has unit variance in every
/// quadrature and a coherent state |alpha> has amplitude mean 2|alpha|.
/// Vector ordering is (X_p, Y_p, X_c, Y_c). The pair is generated by
/// exp[r(a^dagger b^dagger - a b)], which makes the amplitude quadratures
/// positively and the phase quadratures negatively correlated, so that the
/// phase sum Y_p + lambda Y_c is the squeezed combination for lambda > 0.

#pragma once

#include <Eigen/Core>

namespace tsui {

enum class Mode { kProbe, kConjugate };

/// Index of each quadrature in GaussianState::mean / cov.
enum Quadrature : int {
  kProbeAmplitude = 0,
  kProbePhase = 1,
  kConjugateAmplitude = 2,
  kConjugatePhase = 3,
};

/// Gain, transmissions and seed amplitude of the truncated interferometer.
/// Always valid once constructed.
class InterferometerParams {
 public:
  /// Throws DomainError when gain < 1, a transmission is outside [0,1], or
  /// alpha < 0 (or any argument is not finite).
  InterferometerParams(double gain, double eta_p = 1.0, double eta_c = 1.0,
                       double alpha = 0.0);

  double gain() const noexcept { return gain_; }
  double eta_p() const noexcept { return eta_p_; }
  double eta_c() const noexcept { return eta_c_; }
  double alpha() const noexcept { return alpha_; }

  /// r = arccosh(sqrt(G)).
  double squeezing() const noexcept;
  /// cosh(2r) = 2G - 1, evaluated without going through r.
  double cosh2r() const noexcept { return 2.0 * gain_ - 1.0; }
  /// sinh(2r) = 2 sqrt(G (G - 1)).
  double sinh2r() const noexcept;

  bool lossless() const noexcept { return eta_p_ == 1.0 && eta_c_ == 1.0; }

  InterferometerParams with_gain(double gain) const;
  InterferometerParams with_transmissions(double eta_p, double eta_c) const;
  InterferometerParams with_alpha(double alpha) const;

  friend bool operator==(const InterferometerParams&,
                         const InterferometerParams&) = default;

 private:
  double gain_;
  double eta_p_;
  double eta_c_;
  double alpha_;
};

/// Weight of the conjugate detector in M = Y_p + lambda Y_c, lambda in [0,1].
class WeightedMeasurement {
 public:
  explicit WeightedMeasurement(double lambda);
  double lambda() const noexcept { return lambda_; }

 private:
  double lambda_;
};

struct GaussianState {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();

  static GaussianState vacuum() { return {}; }

  /// Smallest eigenvalue of the Hermitian matrix cov + i Omega. Physical
  /// states have it >= 0 up to rounding.
  double min_uncertainty_eigenvalue() const;
  bool is_physical(double tolerance = 1e-10) const;
  bool is_symmetric() const;

  Eigen::Matrix2d block(Mode mode) const;
  Eigen::Vector2d mode_mean(Mode mode) const;
};

/// Block-diagonal symplectic form for the (X, Y) ordering, [X, Y] = 2i.
Eigen::Matrix4d symplectic_form();

struct QuadratureStats {
  double mean = 0.0;
  double variance = 0.0;
};

struct MomentSummary {
  double mean_n = 0.0;
  double var_n = 0.0;
};

/// Displaced two-mode squeezed state after the first gain medium, before any
/// loss. The seed is taken real, so the bright fields sit in the amplitude
/// quadratures.
GaussianState seeded_tmss(const InterferometerParams& params);

/// Independent beam-splitter loss on each mode.
GaussianState apply_loss(const GaussianState& state, double eta_p,
                         double eta_c);

/// Rotates the probe quadrature pair by dphi (radians).
GaussianState apply_phase_shift(const GaussianState& state, double dphi);

/// Mean and variance of Y_p + lambda Y_c.
QuadratureStats joint_quadrature_stats(const GaussianState& state,
                                       const WeightedMeasurement& m);

/// Photon-number mean and variance of one mode's reduced state.
MomentSummary photon_moments(const GaussianState& state, Mode mode);

/// Covariance of the two detector outputs when each homodyne angle is off its
/// phase-quadrature lock point by err_p / err_c radians. The measured
/// quadrature is cos(err) Y + sin(err) X.
Eigen::Matrix2d detector_covariance(const GaussianState& state, double err_p,
                                    double err_c);

/// seeded_tmss followed by apply_loss with the params' transmissions.
GaussianState lossy_state(const InterferometerParams& params);

}  // namespace tsui
