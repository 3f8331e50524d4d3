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

#include "tsui/gaussian.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "tsui/errors.hpp"

namespace tsui {
namespace {

void check_transmission(double eta, const char* name) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " +
                      std::to_string(eta));
  }
}

int offset(Mode mode) { return mode == Mode::kProbe ? 0 : 2; }

}  // namespace

InterferometerParams::InterferometerParams(double gain, double eta_p,
                                           double eta_c, double alpha)
    : gain_(gain), eta_p_(eta_p), eta_c_(eta_c), alpha_(alpha) {
  if (!(std::isfinite(gain) && gain >= 1.0)) {
    throw DomainError("gain must be >= 1, got " + std::to_string(gain));
  }
  check_transmission(eta_p, "eta_p");
  check_transmission(eta_c, "eta_c");
  if (!(std::isfinite(alpha) && alpha >= 0.0)) {
    throw DomainError("seed amplitude must be >= 0, got " +
                      std::to_string(alpha));
  }
}

double InterferometerParams::squeezing() const noexcept {
  return std::acosh(std::sqrt(gain_));
}

double InterferometerParams::sinh2r() const noexcept {
  return 2.0 * std::sqrt(gain_ * (gain_ - 1.0));
}

InterferometerParams InterferometerParams::with_gain(double gain) const {
  return {gain, eta_p_, eta_c_, alpha_};
}

InterferometerParams InterferometerParams::with_transmissions(
    double eta_p, double eta_c) const {
  return {gain_, eta_p, eta_c, alpha_};
}

InterferometerParams InterferometerParams::with_alpha(double alpha) const {
  return {gain_, eta_p_, eta_c_, alpha};
}

WeightedMeasurement::WeightedMeasurement(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1], got " +
                      std::to_string(lambda));
  }
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

double GaussianState::min_uncertainty_eigenvalue() const {
  const Eigen::Matrix4cd m =
      cov.cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool GaussianState::is_physical(double tolerance) const {
  return is_symmetric() && min_uncertainty_eigenvalue() >= -tolerance;
}

bool GaussianState::is_symmetric() const { return cov == cov.transpose(); }

Eigen::Matrix2d GaussianState::block(Mode mode) const {
  const int o = offset(mode);
  return cov.block<2, 2>(o, o);
}

Eigen::Vector2d GaussianState::mode_mean(Mode mode) const {
  return mean.segment<2>(offset(mode));
}

GaussianState seeded_tmss(const InterferometerParams& params) {
  const double g = params.gain();
  const double c2 = params.cosh2r();
  const double s2 = params.sinh2r();

  GaussianState state;
  state.mean(kProbeAmplitude) = 2.0 * std::sqrt(g) * params.alpha();
  state.mean(kConjugateAmplitude) = 2.0 * std::sqrt(g - 1.0) * params.alpha();

  state.cov = c2 * Eigen::Matrix4d::Identity();
  state.cov(kProbeAmplitude, kConjugateAmplitude) = s2;
  state.cov(kConjugateAmplitude, kProbeAmplitude) = s2;
  state.cov(kProbePhase, kConjugatePhase) = -s2;
  state.cov(kConjugatePhase, kProbePhase) = -s2;
  return state;
}

GaussianState apply_loss(const GaussianState& state, double eta_p,
                         double eta_c) {
  check_transmission(eta_p, "eta_p");
  check_transmission(eta_c, "eta_c");
  const double sp = std::sqrt(eta_p);
  const double sc = std::sqrt(eta_c);
  const Eigen::Vector4d scale(sp, sp, sc, sc);
  const Eigen::Vector4d added(1.0 - eta_p, 1.0 - eta_p, 1.0 - eta_c,
                              1.0 - eta_c);

  GaussianState out;
  out.mean = scale.cwiseProduct(state.mean);
  // scale_i * scale_j is formed first so the result stays exactly symmetric.
  out.cov = state.cov.cwiseProduct(scale * scale.transpose());
  out.cov += added.asDiagonal();
  return out;
}

GaussianState apply_phase_shift(const GaussianState& state, double dphi) {
  const double c = std::cos(dphi);
  const double s = std::sin(dphi);
  Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
  rot(0, 0) = c;
  rot(0, 1) = -s;
  rot(1, 0) = s;
  rot(1, 1) = c;

  GaussianState out;
  out.mean = rot * state.mean;
  out.cov = rot * state.cov * rot.transpose();
  // Keep the matrix exactly symmetric after the product.
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  return out;
}

QuadratureStats joint_quadrature_stats(const GaussianState& state,
                                       const WeightedMeasurement& m) {
  const double l = m.lambda();
  QuadratureStats st;
  st.mean = state.mean(kProbePhase) + l * state.mean(kConjugatePhase);
  st.variance = state.cov(kProbePhase, kProbePhase) +
                l * l * state.cov(kConjugatePhase, kConjugatePhase) +
                2.0 * l * state.cov(kProbePhase, kConjugatePhase);
  return st;
}

MomentSummary photon_moments(const GaussianState& state, Mode mode) {
  const Eigen::Matrix2d v = state.block(mode);
  const Eigen::Vector2d d = state.mode_mean(mode);
  MomentSummary m;
  m.mean_n = (v.trace() - 2.0) / 4.0 + d.squaredNorm() / 4.0;
  m.var_n = ((v * v).trace() - 2.0) / 8.0 + d.dot(v * d) / 4.0;
  return m;
}

Eigen::Matrix2d detector_covariance(const GaussianState& state, double err_p,
                                    double err_c) {
  Eigen::Matrix<double, 4, 2> u = Eigen::Matrix<double, 4, 2>::Zero();
  u(kProbeAmplitude, 0) = std::sin(err_p);
  u(kProbePhase, 0) = std::cos(err_p);
  u(kConjugateAmplitude, 1) = std::sin(err_c);
  u(kConjugatePhase, 1) = std::cos(err_c);
  Eigen::Matrix2d out = u.transpose() * state.cov * u;
  out(1, 0) = out(0, 1);
  return out;
}

GaussianState lossy_state(const InterferometerParams& params) {
  return apply_loss(seeded_tmss(params), params.eta_p(), params.eta_c());
}

}  // namespace tsui
