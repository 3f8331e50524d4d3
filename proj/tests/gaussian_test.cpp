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
#include <numbers>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "tsui/errors.hpp"

namespace tsui {
namespace {

using std::sqrt;

TEST(InterferometerParams, DerivedSqueezing) {
  for (double g : {1.0, 1.1, 1.67, 2.0, 3.3, 10.0}) {
    const InterferometerParams p(g);
    EXPECT_NEAR(std::cosh(p.squeezing()) * std::cosh(p.squeezing()), g, 1e-12);
    EXPECT_NEAR(std::cosh(2 * p.squeezing()), p.cosh2r(), 1e-12 * g);
    EXPECT_NEAR(std::sinh(2 * p.squeezing()), p.sinh2r(), 1e-12 * g);
  }
}

TEST(InterferometerParams, RejectsOutOfDomain) {
  EXPECT_THROW(InterferometerParams(0.9), DomainError);
  EXPECT_THROW(InterferometerParams(1.5, 1.01, 1.0), DomainError);
  EXPECT_THROW(InterferometerParams(1.5, 1.0, -0.01), DomainError);
  EXPECT_THROW(InterferometerParams(1.5, 1.0, 1.0, -1.0), DomainError);
  EXPECT_THROW(InterferometerParams(std::nan("")), DomainError);
  EXPECT_NO_THROW(InterferometerParams(1.0, 0.0, 1.0, 0.0));
}

TEST(WeightedMeasurement, RejectsOutsideUnitInterval) {
  EXPECT_THROW(WeightedMeasurement(-1e-9), DomainError);
  EXPECT_THROW(WeightedMeasurement(1.0 + 1e-9), DomainError);
  EXPECT_DOUBLE_EQ(WeightedMeasurement(0.3).lambda(), 0.3);
}

TEST(SeededTmss, NoGainIsCoherentSeed) {
  const GaussianState s = seeded_tmss(InterferometerParams(1.0, 1, 1, 0.5));
  EXPECT_EQ(s.cov, Eigen::Matrix4d::Identity());
  EXPECT_EQ(s.mean, Eigen::Vector4d(1.0, 0.0, 0.0, 0.0));
}

TEST(SeededTmss, GainTwoCovariance) {
  const GaussianState s = seeded_tmss(InterferometerParams(2.0));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.cov(i, i), 3.0, 1e-14);
  EXPECT_NEAR(s.cov(kProbeAmplitude, kConjugateAmplitude), 2.0 * sqrt(2.0), 1e-14);
  EXPECT_NEAR(s.cov(kProbePhase, kConjugatePhase), -2.0 * sqrt(2.0), 1e-14);
  EXPECT_EQ(s.cov(kProbeAmplitude, kProbePhase), 0.0);
  EXPECT_EQ(s.cov(kProbeAmplitude, kConjugatePhase), 0.0);
  EXPECT_EQ(s.mean, Eigen::Vector4d::Zero());
}

TEST(SeededTmss, ModePhotonNumbers) {
  // Probe: G|a|^2 + sinh^2 r; conjugate: (G-1)|a|^2 + sinh^2 r; sinh^2 r = G-1.
  const GaussianState s = seeded_tmss(InterferometerParams(1.67, 1, 1, 1.0));
  EXPECT_NEAR(photon_moments(s, Mode::kProbe).mean_n, 2.34, 1e-12);
  EXPECT_NEAR(photon_moments(s, Mode::kConjugate).mean_n, 0.67 + 0.67, 1e-12);
  EXPECT_NEAR(s.mean(kProbeAmplitude), 2.0 * sqrt(1.67), 1e-14);
  EXPECT_NEAR(s.mean(kConjugateAmplitude), 2.0 * sqrt(0.67), 1e-14);
}

TEST(ApplyLoss, IdentityAndCompleteLoss) {
  const GaussianState s = seeded_tmss(InterferometerParams(2.0, 1, 1, 0.7));
  const GaussianState same = apply_loss(s, 1.0, 1.0);
  EXPECT_EQ(same.cov, s.cov);
  EXPECT_EQ(same.mean, s.mean);
  const GaussianState gone = apply_loss(s, 0.0, 0.0);
  EXPECT_EQ(gone.cov, Eigen::Matrix4d::Identity());
  EXPECT_EQ(gone.mean, Eigen::Vector4d::Zero());
}

TEST(ApplyLoss, ProbeVarianceAtSeventySixPercent) {
  const GaussianState s =
      apply_loss(seeded_tmss(InterferometerParams(2.0)), 0.76, 1.0);
  EXPECT_NEAR(s.cov(kProbePhase, kProbePhase), 2.52, 1e-14);
  EXPECT_NEAR(s.cov(kProbePhase, kConjugatePhase), -sqrt(0.76) * 2 * sqrt(2.0),
              1e-14);
}

TEST(ApplyLoss, RejectsBadTransmission) {
  EXPECT_THROW(apply_loss(GaussianState::vacuum(), 1.2, 1.0), DomainError);
  EXPECT_THROW(apply_loss(GaussianState::vacuum(), 0.5, -0.2), DomainError);
}

TEST(ApplyPhaseShift, IdentityAndPeriodicity) {
  const GaussianState s = seeded_tmss(InterferometerParams(1.8, 1, 1, 0.9));
  const GaussianState zero = apply_phase_shift(s, 0.0);
  EXPECT_EQ(zero.cov, s.cov);
  EXPECT_EQ(zero.mean, s.mean);
  const GaussianState full = apply_phase_shift(s, 2.0 * std::numbers::pi);
  EXPECT_LE((full.cov - s.cov).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((full.mean - s.mean).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyPhaseShift, SmallRotationMovesPhaseMean) {
  const GaussianState s =
      apply_phase_shift(seeded_tmss(InterferometerParams(2.0, 1, 1, 1.0)), 1e-3);
  EXPECT_NEAR(s.mean(kProbePhase), 2.0 * sqrt(2.0) * std::sin(1e-3), 1e-15);
  EXPECT_NEAR(s.mean(kProbePhase), 2.8284e-3, 1e-7);
  EXPECT_EQ(s.mean(kConjugatePhase), 0.0);
}

TEST(JointQuadratureStats, Examples) {
  EXPECT_DOUBLE_EQ(
      joint_quadrature_stats(GaussianState::vacuum(), WeightedMeasurement(1)).variance,
      2.0);
  // 2 cosh 2r - 2 sinh 2r with cosh 2r = 1.2, sinh 2r = 2 sqrt(0.11).
  const double v11 =
      joint_quadrature_stats(seeded_tmss(InterferometerParams(1.1)),
                             WeightedMeasurement(1.0))
          .variance;
  EXPECT_NEAR(v11, 2.4 - 4.0 * sqrt(0.11), 1e-14);
  EXPECT_NEAR(v11, 1.07335, 5e-6);
  EXPECT_NEAR(joint_quadrature_stats(seeded_tmss(InterferometerParams(2.0)),
                                     WeightedMeasurement(0.0))
                  .variance,
              3.0, 1e-14);
}

TEST(JointQuadratureStats, MeanCombinesPhaseQuadratures) {
  GaussianState s;
  s.mean = Eigen::Vector4d(5.0, 0.3, 7.0, -0.2);
  EXPECT_DOUBLE_EQ(joint_quadrature_stats(s, WeightedMeasurement(0.5)).mean,
                   0.3 - 0.1);
}

TEST(PhotonMoments, VacuumCoherentAndThermal) {
  const MomentSummary vac = photon_moments(GaussianState::vacuum(), Mode::kProbe);
  EXPECT_EQ(vac.mean_n, 0.0);
  EXPECT_EQ(vac.var_n, 0.0);

  GaussianState coh;
  coh.mean(kProbeAmplitude) = 2.0;
  const MomentSummary c = photon_moments(coh, Mode::kProbe);
  EXPECT_DOUBLE_EQ(c.mean_n, 1.0);
  EXPECT_DOUBLE_EQ(c.var_n, 1.0);

  // Displaced thermal: sinh^2 r cosh^2 r + G|a|^2 cosh 2r = 2 + 6.
  const MomentSummary p =
      photon_moments(seeded_tmss(InterferometerParams(2.0, 1, 1, 1.0)), Mode::kProbe);
  EXPECT_NEAR(p.mean_n, 3.0, 1e-13);
  EXPECT_NEAR(p.var_n, 8.0, 1e-13);
}

TEST(DetectorCovariance, LockedAnglesReproducePhaseBlock) {
  const GaussianState s = lossy_state(InterferometerParams(1.67, 0.76, 0.79));
  const Eigen::Matrix2d m = detector_covariance(s, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(m(0, 0), s.cov(kProbePhase, kProbePhase));
  EXPECT_DOUBLE_EQ(m(1, 1), s.cov(kConjugatePhase, kConjugatePhase));
  EXPECT_DOUBLE_EQ(m(0, 1), s.cov(kProbePhase, kConjugatePhase));
}

TEST(DetectorCovariance, JitterReducesCorrelation) {
  // Cov(p, c) = -eta-scaled sinh 2r * cos(err_p + err_c) for this state.
  const InterferometerParams p(2.0, 0.9, 0.8);
  const GaussianState s = lossy_state(p);
  const double s2 = sqrt(0.9 * 0.8) * p.sinh2r();
  const Eigen::Matrix2d m = detector_covariance(s, 0.1, 0.05);
  EXPECT_NEAR(m(0, 1), -s2 * std::cos(0.15), 1e-13);
  EXPECT_NEAR(m(0, 0), s.cov(kProbePhase, kProbePhase), 1e-13);
}

// --- properties over randomized parameters --------------------------------

class GaussianProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20260417};
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }
};

TEST_F(GaussianProperties, OperationsPreservePhysicality) {
  for (int i = 0; i < 500; ++i) {
    const InterferometerParams p(uniform(1, 10), 1, 1, uniform(0, 3));
    const GaussianState s0 = seeded_tmss(p);
    const GaussianState s1 = apply_phase_shift(s0, uniform(0, 2 * std::numbers::pi));
    const GaussianState s2 = apply_loss(s1, uniform(0, 1), uniform(0, 1));
    for (const GaussianState* s : {&s0, &s1, &s2}) {
      EXPECT_TRUE(s->is_symmetric());
      EXPECT_GE(s->min_uncertainty_eigenvalue(), -1e-10);
    }
  }
}

TEST_F(GaussianProperties, PurityAndLossIncreasesDeterminant) {
  for (int i = 0; i < 500; ++i) {
    const InterferometerParams p(uniform(1, 10));
    const GaussianState s = seeded_tmss(p);
    EXPECT_NEAR(s.cov.determinant(), 1.0, 1e-9 * p.cosh2r() * p.cosh2r());
    const double ep = uniform(0, 0.999), ec = uniform(0, 0.999);
    EXPECT_GE(apply_loss(s, ep, ec).cov.determinant(), 1.0 - 1e-9);
  }
}

TEST_F(GaussianProperties, LossThenJointStatsMatchesClosedForm) {
  for (int i = 0; i < 500; ++i) {
    const InterferometerParams p(uniform(1, 10), uniform(0, 1), uniform(0, 1));
    const double l = uniform(0, 1);
    const double vbar = std::cosh(2 * p.squeezing());
    const double s2 = std::sinh(2 * p.squeezing());
    const double ep = p.eta_p(), ec = p.eta_c();
    const double expected = ep * vbar + (1 - ep) + l * l * (ec * vbar + (1 - ec)) -
                            2 * l * sqrt(ep * ec) * s2;
    const double got =
        joint_quadrature_stats(lossy_state(p), WeightedMeasurement(l)).variance;
    EXPECT_NEAR(got, expected, 1e-12 * vbar * 4);
  }
}

TEST_F(GaussianProperties, SlopeMatchesCentralDifference) {
  for (int i = 0; i < 200; ++i) {
    const InterferometerParams p(uniform(1, 10), uniform(0.05, 1), uniform(0, 1),
                                 uniform(0.1, 5));
    const double h = 1e-6;
    const GaussianState base = seeded_tmss(p);
    auto yp = [&](double d) {
      return apply_loss(apply_phase_shift(base, d), p.eta_p(), p.eta_c())
          .mean(kProbePhase);
    };
    const double fd = (yp(h) - yp(-h)) / (2 * h);
    const double exact = 2.0 * sqrt(p.eta_p() * p.gain()) * p.alpha();
    EXPECT_NEAR(fd, exact, 1e-6 * exact);
  }
}

}  // namespace
}  // namespace tsui
