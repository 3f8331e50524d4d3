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

#include "tsui/metrology.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tsui/errors.hpp"

namespace tsui {
namespace {

// Reference values below were evaluated once at 30 digits (mpmath) from the
// closed forms and frozen here.
constexpr double kLoptG2 = 0.942809041582063366;        // 2 sqrt 2 / 3
constexpr double kLoptG167Lossy = 0.796295031479923845;  // G=1.67, .76, .79
constexpr double kLoptG12Lossy = 0.559662555671189411;  // G=1.2, .73, .76
constexpr double kLoptG167Typical = 0.788576633829667118;      // G=1.67, .745, .775
constexpr double kVarG167LossyOpt = 0.713071019139220789;
constexpr double kTenLog2 = 3.01029995663981195;

TEST(LambdaOpt, ClosedFormExamples) {
  EXPECT_EQ(lambda_opt(InterferometerParams(1.0)), 0.0);
  EXPECT_EQ(lambda_opt(InterferometerParams(1.0, 0.3, 0.6)), 0.0);
  EXPECT_NEAR(lambda_opt(InterferometerParams(2.0)), kLoptG2, 1e-15);
  EXPECT_NEAR(lambda_opt(InterferometerParams(1.67, 0.76, 0.79)), kLoptG167Lossy, 1e-14);
  EXPECT_NEAR(lambda_opt(InterferometerParams(1.2, 0.73, 0.76)), kLoptG12Lossy, 1e-14);
  EXPECT_NEAR(lambda_opt(InterferometerParams(1.67, 0.745, 0.775)), kLoptG167Typical, 1e-14);
}

TEST(LambdaOpt, ClampsAboveOne) {
  const InterferometerParams p(5.0, 1.0, 0.5);
  EXPECT_GT(lambda_opt_unclamped(p), 1.0);
  EXPECT_EQ(lambda_opt(p), 1.0);
  EXPECT_NEAR(lambda_opt_numeric(p), 1.0, 1e-8);
}

TEST(LambdaOptNumeric, Examples) {
  EXPECT_NEAR(lambda_opt_numeric(InterferometerParams(1.0)), 0.0, 1e-10);
  EXPECT_NEAR(lambda_opt_numeric(InterferometerParams(2.0)), kLoptG2, 1e-8);
  EXPECT_NEAR(lambda_opt_numeric(InterferometerParams(1.2, 0.73, 0.76)), 0.55967, 1e-5);
  EXPECT_NEAR(lambda_opt_numeric(InterferometerParams(1.2, 0.73, 0.76)),
              kLoptG12Lossy, 1e-8);
}

TEST(LambdaOpt, AgreesWithNumericMinimizerOnRandomGrid) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> g(1.01, 5.0), e(0.5, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng));
    worst = std::max(worst, std::abs(lambda_opt(p) - lambda_opt_numeric(p)));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(LambdaOpt, IsAMinimum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> g(1.01, 5.0), e(0.5, 1.0);
  for (int i = 0; i < 300; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng));
    const double l = lambda_opt(p);
    const double v = joint_noise_power(p, l).variance;
    if (l - 1e-3 >= 0.0) {
      EXPECT_LE(v, joint_noise_power(p, l - 1e-3).variance);
    }
    if (l + 1e-3 <= 1.0) {
      EXPECT_LE(v, joint_noise_power(p, l + 1e-3).variance);
    }
  }
}

TEST(LambdaOpt, MonotoneInGainAndConjugateLoss) {
  for (double eta : {1.0, 0.9, 0.775, 0.5}) {
    double prev = -1.0;
    for (double g = 1.0; g <= 6.0; g += 0.05) {
      const double l = lambda_opt(InterferometerParams(g, eta, eta));
      EXPECT_GT(l, prev) << "eta=" << eta << " G=" << g;
      prev = l;
    }
  }
  // d(lambda_opt)/d(eta_c) > 0 exactly when eta_c (cosh 2r - 1) < 1. Below
  // that threshold extra conjugate loss lowers lambda_opt; above it the
  // conjugate noise shrinks faster than the correlation and lambda_opt rises.
  for (double g : {1.2, 1.67, 3.0}) {
    for (int k = 30; k < 99; ++k) {
      const double ec = k * 0.01;
      const InterferometerParams lo(g, 0.8, ec), hi(g, 0.8, ec + 0.01);
      const double mid = ec + 0.005;
      const double slope = lambda_opt(hi) - lambda_opt(lo);
      const double threshold = mid * (lo.cosh2r() - 1.0) - 1.0;
      if (std::abs(threshold) < 0.02) continue;
      EXPECT_EQ(slope > 0.0, threshold < 0.0) << "G=" << g << " eta_c=" << ec;
    }
  }
}

TEST(JointNoisePower, Examples) {
  const NoiseResult a = joint_noise_power(InterferometerParams(1.1), 1.0);
  EXPECT_NEAR(a.variance, 1.07335, 5e-6);
  EXPECT_NEAR(a.variance_db, 0.3075, 5e-4);
  EXPECT_EQ(a.lambda, 1.0);

  const InterferometerParams p11(1.1);
  const NoiseResult b = joint_noise_power(p11, std::tanh(2 * p11.squeezing()));
  EXPECT_NEAR(b.variance, 1.0 / 1.2, 1e-14);
  EXPECT_NEAR(b.variance_db, -0.7918, 5e-5);

  const NoiseResult c =
      joint_noise_power(InterferometerParams(1.67, 0.76, 0.79), kLoptG167Lossy);
  EXPECT_NEAR(c.variance, kVarG167LossyOpt, 1e-13);
  EXPECT_NEAR(c.variance_db, -1.468, 1e-3);
}

TEST(JointNoisePower, ElectronicNoiseAddsPerDetector) {
  const InterferometerParams p(1.5, 0.8, 0.8);
  const double base = joint_noise_power(p, 0.5).variance;
  EXPECT_NEAR(joint_noise_power(p, 0.5, 0.1).variance, base + 0.1 * 1.25, 1e-14);
  EXPECT_THROW(joint_noise_power(p, 0.5, -0.1), DomainError);
  EXPECT_THROW(joint_noise_power(p, 1.5), DomainError);
}

TEST(PhaseSensitivity, Examples) {
  const InterferometerParams p(2.0, 1, 1, 10.0);
  EXPECT_NEAR(phase_sensitivity(p, lambda_opt(p)).delta_phi, 1.0 / std::sqrt(2400.0),
              1e-14);
  EXPECT_NEAR(phase_sensitivity(InterferometerParams(1.0, 1, 1, 1.0), 0.0).delta_phi,
              0.5, 1e-15);
  EXPECT_THROW(phase_sensitivity(InterferometerParams(2.0), 0.5), DomainError);
}

TEST(PhaseSensitivity, WeightedNeverWorseThanBalanced) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> g(1.0, 6.0), e(0.3, 1.0), a(0.1, 50);
  for (int i = 0; i < 300; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng), a(rng));
    EXPECT_LE(phase_sensitivity(p, lambda_opt(p)).delta_phi,
              phase_sensitivity(p, 1.0).delta_phi * (1 + 1e-15));
  }
}

TEST(Snr, MatchesSensitivityForSmallPhase) {
  const double dphi = 1e-4;
  for (double g : {1.1, 1.67, 3.0}) {
    const InterferometerParams p(g, 0.8, 0.85, 7.0);
    const double l = lambda_opt(p);
    const double dp = phase_sensitivity(p, l).delta_phi;
    // Slope by finite difference of the state mean instead of the closed form.
    const GaussianState s0 = seeded_tmss(p);
    auto mean_m = [&](double d) {
      return joint_quadrature_stats(
                 apply_loss(apply_phase_shift(s0, d), p.eta_p(), p.eta_c()),
                 WeightedMeasurement(l))
          .mean;
    };
    const double slope = (mean_m(dphi) - mean_m(-dphi)) / (2 * dphi);
    const double snr_eq1 = slope * slope * dphi * dphi / joint_noise_power(p, l).variance;
    EXPECT_NEAR(snr_eq1 / ((dphi / dp) * (dphi / dp)), 1.0, 1e-6);
    EXPECT_NEAR(snr(p, l, dphi) / ((dphi / dp) * (dphi / dp)), 1.0, 1e-12);
  }
}

TEST(Qcrb, Examples) {
  EXPECT_NEAR(quantum_fisher_information(InterferometerParams(1.0, 1, 1, 1.0)), 4.0, 1e-13);
  EXPECT_NEAR(qcrb(InterferometerParams(1.0, 1, 1, 1.0)).delta_phi, 0.5, 1e-15);
  EXPECT_NEAR(quantum_fisher_information(InterferometerParams(2.0)), 8.0, 1e-12);

  const InterferometerParams p(2.0, 1, 1, 10.0);
  const double dphi = phase_sensitivity(p, lambda_opt(p)).delta_phi;
  EXPECT_NEAR(quantum_fisher_information(p) * dphi * dphi, 1.0 + 8.0 / 2400.0, 1e-12);
}

TEST(Qcrb, RejectsLossyAndEmptyStates) {
  EXPECT_THROW(qcrb(InterferometerParams(2.0, 0.9, 1.0, 1.0)), UnsupportedConfiguration);
  EXPECT_THROW(qcrb(InterferometerParams(1.0, 1.0, 1.0, 0.0)), DomainError);
}

TEST(Qcrb, LosslessSaturationResidual) {
  for (double g : {1.1, 1.5, 1.67, 2.0, 3.0, 5.0}) {
    for (double alpha : {1.0, 10.0, 100.0}) {
      const InterferometerParams p(g, 1, 1, alpha);
      const double dphi = phase_sensitivity(p, lambda_opt(p)).delta_phi;
      const double residual = quantum_fisher_information(p) * dphi * dphi - 1.0;
      const double expected =
          p.sinh2r() * p.sinh2r() / (4 * g * alpha * alpha * p.cosh2r());
      EXPECT_NEAR(residual / expected, 1.0, 1e-9) << g << " " << alpha;
    }
  }
}

TEST(SqlSensitivity, Examples) {
  // n = G |alpha|^2 = 50 photons through the phase object.
  const InterferometerParams p(2.0, 1, 1, 5.0);
  EXPECT_NEAR(sql_sensitivity(SqlKind::kSql1, p).delta_phi, 0.1, 1e-15);
  EXPECT_NEAR(sql_sensitivity(SqlKind::kSql2, p).delta_phi, 1 / std::sqrt(200.0), 1e-15);
  const double r1 = sql_sensitivity(SqlKind::kSql1, p).delta_phi;
  const double r2 = sql_sensitivity(SqlKind::kSql2, p).delta_phi;
  EXPECT_NEAR(r1 * r1 / (r2 * r2), 2.0, 1e-14);
  EXPECT_THROW(sql_sensitivity(SqlKind::kSql1, InterferometerParams(2.0)), DomainError);
}

TEST(Snri, Examples) {
  const InterferometerParams p(1.1);
  EXPECT_NEAR(snri(p, 1.0, SqlKind::kSql2), -0.3075, 1e-3);
  EXPECT_LT(snri(p, 1.0, SqlKind::kSql2), 0.0);
  EXPECT_NEAR(snri(p, lambda_opt(p), SqlKind::kSql2), 0.7918, 1e-4);
}

TEST(Snri, MatchesSensitivityRatio) {
  const InterferometerParams p(1.67, 0.76, 0.79, 3.0);
  for (SqlKind k : {SqlKind::kSql1, SqlKind::kSql2}) {
    const double ratio = sql_sensitivity(k, p).delta_phi /
                         phase_sensitivity(p, 0.6).delta_phi;
    EXPECT_NEAR(snri(p, 0.6, k), 10 * std::log10(ratio * ratio), 1e-12);
  }
}

TEST(Snri, ConstantOffsetBetweenBaselines) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> g(1.0, 8.0), e(0.0, 1.0), u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng));
    const double l = u(rng);
    EXPECT_NEAR(snri(p, l, SqlKind::kSql1) - snri(p, l, SqlKind::kSql2), kTenLog2, 1e-12);
  }
}

TEST(Curves, LambdaOptVsGain) {
  const TransmissionPair lossless{1.0, 1.0};
  const std::vector<double> gains{1.0, 2.0};
  const CurveTable t = curve_lambda_opt_vs_gain({&lossless, 1}, gains);
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_EQ(t.rows()[0][1], 0.0);
  EXPECT_NEAR(t.rows()[1][1], kLoptG2, 1e-15);
}

TEST(Curves, SensitivityVsGainCoincidesAtUnitGain) {
  const std::vector<double> gains{1.0, 1.5, 2.0};
  const CurveTable t = curve_sensitivity_vs_gain(100.0, gains);
  const auto& row = t.rows()[0];
  // At G = 1 the balanced measurement adds the idle vacuum detector: that
  // curve sits at sqrt(2)/2; weighted and QCRB both reach the coherent 1/2.
  EXPECT_NEAR(row[2], 0.5, 1e-14);
  EXPECT_NEAR(row[3], 0.5, 1e-14);
  EXPECT_NEAR(row[1], std::sqrt(2.0) / 2, 1e-14);
  for (const auto& r : t.rows()) {
    EXPECT_LE(r[3], r[2] * (1 + 1e-12));
    EXPECT_LE(r[2], r[1] * (1 + 1e-12));
  }
}

TEST(Curves, NoiseVsLambdaLosslessGainTwo) {
  const InterferometerParams p(2.0);
  const std::vector<double> grid{0.0, 1.0};
  const CurveTable t = curve_noise_vs_lambda({&p, 1}, grid);
  EXPECT_NEAR(t.column("variance_G2")[0], 3.0, 1e-14);
  EXPECT_NEAR(t.column("variance_G2")[1], 6.0 - 4.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(t.column("noise_db_G2")[0], 10 * std::log10(3.0), 1e-12);
}

TEST(Curves, SnriVsLambda) {
  const std::vector<InterferometerParams> ps{InterferometerParams(1.1),
                                             InterferometerParams(2.0)};
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  const CurveTable t = curve_snri_vs_lambda(ps, grid);
  EXPECT_NEAR(t.column("snri_sql2_G1.1").back(), -0.3075, 1e-3);
  const auto s1 = t.column("snri_sql1_G2");
  const auto s2 = t.column("snri_sql2_G2");
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_NEAR(s1[i] - s2[i], kTenLog2, 1e-12);
}

TEST(Curves, GridValidation) {
  const std::vector<double> empty;
  const std::vector<double> unordered{0.5, 0.2};
  const std::vector<double> out_of_range{0.5, 1.2};
  const InterferometerParams p(2.0);
  const TransmissionPair e{1, 1};
  EXPECT_THROW(curve_noise_vs_lambda({&p, 1}, empty), DomainError);
  EXPECT_THROW(curve_noise_vs_lambda({&p, 1}, unordered), DomainError);
  EXPECT_THROW(curve_snri_vs_lambda({&p, 1}, out_of_range), DomainError);
  EXPECT_THROW(curve_lambda_opt_vs_gain({&e, 1}, empty), DomainError);
  EXPECT_THROW(curve_sensitivity_vs_gain(100.0, empty), DomainError);
}

TEST(CurveTable, CsvRoundTripKeepsTwelveDigits) {
  const TransmissionPair etas[] = {{1.0, 1.0}, {0.745, 0.775}};
  std::vector<double> gains;
  for (int i = 0; i <= 40; ++i) gains.push_back(1.0 + 0.1 * i);
  const CurveTable t = curve_lambda_opt_vs_gain(etas, gains);
  const CurveTable back = CurveTable::from_csv(t.to_csv());
  ASSERT_EQ(back.columns(), t.columns());
  ASSERT_EQ(back.rows().size(), t.rows().size());
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    for (std::size_t j = 0; j < t.columns().size(); ++j) {
      EXPECT_NEAR(back.rows()[i][j], t.rows()[i][j], 1e-12 * std::abs(t.rows()[i][j]));
    }
  }
  EXPECT_EQ(back.figure(), "fig4b");
}

TEST(CurveTable, RejectsNanAndDisorder) {
  CurveTable t("x", {"a", "b"});
  t.add_row({1.0, 2.0});
  EXPECT_THROW(t.add_row({1.0, 3.0}), DomainError);
  EXPECT_THROW(t.add_row({2.0, std::nan("")}), DomainError);
  EXPECT_THROW(t.add_row({3.0}), DomainError);
}

TEST(CurveTable, JsonHasRowObjects) {
  CurveTable t("demo", {"x", "y"});
  t.add_metadata("note", "hi");
  t.add_row({0.0, 1.5});
  const std::string js = t.to_json();
  EXPECT_NE(js.find("\"rows\""), std::string::npos);
  EXPECT_NE(js.find("\"y\": 1.5"), std::string::npos);
  EXPECT_NE(js.find("\"note\": \"hi\""), std::string::npos);
}

}  // namespace
}  // namespace tsui
