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
/// Weighted least-squares fit of noise-vs-lambda data to the lossy joint
/// noise model, lambda_opt extraction and theory overlays.
///
/// Model: noise_db(lambda) = 10 log10 Var(lambda; G, eta_p, eta_c) + scale_db
/// with residuals weighted by 1 / sigma_db. The gain is fitted through the
/// squeezing r = arccosh(sqrt(G)) >= 0, which keeps the model smooth at
/// G = 1. Minimization is a bounded Levenberg-Marquardt run from a fixed set
/// of starting points; the lowest converged chi-square wins. Uncertainties
/// come from the pseudo-inverse of J^T J at the optimum without rescaling by
/// the reduced chi-square, so quoted sigmas assume the data sigmas are right.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tsui/curve_table.hpp"
#include "tsui/gaussian.hpp"
#include "tsui/metrology.hpp"
#include "tsui/noise_dataset.hpp"

namespace tsui {

struct FitOptions {
  /// Fixed eta_c - eta_p; nullopt fits both transmissions freely.
  std::optional<double> loss_offset = 0.03;
  std::optional<double> initial_gain;
  std::optional<double> initial_eta_c;
  int max_iterations = 200;
  double tolerance = 1e-12;

  /// Throws DomainError for |loss_offset| > 0.2, non-positive iteration
  /// count or tolerance, or initial guesses outside the parameter box.
  void validate() const;
};

struct FitResult {
  double gain = 1.0;
  double eta_p = 1.0;
  double eta_c = 1.0;
  double scale_db = 0.0;
  double squeezing = 0.0;

  double sigma_gain = 0.0;
  double sigma_eta_p = 0.0;
  double sigma_eta_c = 0.0;
  double sigma_scale_db = 0.0;
  double sigma_squeezing = 0.0;

  double chi_square = 0.0;
  int dof = 0;
  /// Free parameters in order (r, [eta_p,] eta_c, scale_db) and their
  /// covariance.
  std::vector<std::string> parameter_names;
  Eigen::MatrixXd covariance;
  double condition_number = 0.0;

  double lambda_opt_fit = 0.0;
  double sigma_lambda_opt_fit = 0.0;
  double lambda_opt_direct = 0.0;
  double sigma_lambda_opt_direct = 0.0;

  std::optional<double> loss_offset;
  int starts = 0;
  int converged_starts = 0;
  std::vector<std::string> warnings;

  InterferometerParams params() const {
    return InterferometerParams(gain, eta_p, eta_c);
  }
  std::string to_json(int indent = 2) const;
  std::string summary() const;
};

/// No start converged. best_effort holds the lowest-cost parameters seen.
class FitFailure : public std::runtime_error {
 public:
  FitFailure(const std::string& what, FitResult best_effort)
      : std::runtime_error(what), best_effort_(std::move(best_effort)) {}
  const FitResult& best_effort() const noexcept { return best_effort_; }

 private:
  FitResult best_effort_;
};

FitResult fit_noise_curve(const NoiseDataset& data,
                          const FitOptions& options = {});

struct LambdaOptEstimate {
  /// Primary value: from the fitted parameters when a fit is given,
  /// otherwise the direct estimate.
  double value = 0.0;
  double sigma = 0.0;
  bool from_fit = false;
  /// Vertex of the parabola through the three lowest-noise points, with a
  /// 1000-resample parametric bootstrap error.
  double direct = 0.0;
  double direct_sigma = 0.0;
  std::vector<std::string> warnings;
};

LambdaOptEstimate extract_lambda_opt(const NoiseDataset& data,
                                     const std::optional<FitResult>& fit = {});

/// SNRI against the chosen SQL at the fitted gain and transmissions;
/// scale_db is deliberately left out so the curve is the attainable maximum.
CurveTable overlay_theory(const FitResult& fit, SqlKind kind,
                          std::span<const double> lambda_grid);

struct GainReport {
  CurveTable table;
  /// "dataset <i>: <reason>" for every input that could not be fitted.
  std::vector<std::string> failures;
};

/// One row per successfully fitted dataset, sorted by fitted gain, with the
/// closed-form lambda_opt at the reference transmissions as a theory column.
/// Throws DomainError for fewer than two datasets, fewer than two successful
/// fits, or repeated fitted gains.
GainReport lambda_opt_vs_gain_report(std::span<const NoiseDataset> datasets,
                                     const FitOptions& options = {},
                                     TransmissionPair reference = {0.745,
                                                                   0.775});

}  // namespace tsui
