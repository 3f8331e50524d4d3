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

#include <algorithm>
#include <cmath>
#include <string>

#include "tsui/errors.hpp"

namespace tsui {
namespace {

void check_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

void check_lambda_grid(std::span<const double> grid) {
  check_grid(grid, "lambda");
  if (grid.front() < 0.0 || grid.back() > 1.0) {
    throw DomainError("lambda grid must lie in [0,1]");
  }
}

void require_signal(const InterferometerParams& params) {
  if (params.alpha() == 0.0) {
    throw DomainError("seed amplitude is zero: no phase signal");
  }
}

void add_params_metadata(CurveTable& t, const InterferometerParams& p,
                         const std::string& tag) {
  t.add_metadata("params[" + tag + "]",
                 "gain=" + format_number(p.gain()) +
                     " eta_p=" + format_number(p.eta_p()) +
                     " eta_c=" + format_number(p.eta_c()));
}

}  // namespace

std::string_view sql_name(SqlKind kind) noexcept {
  return kind == SqlKind::kSql1 ? "SQL1" : "SQL2";
}

double to_db(double power_ratio) { return 10.0 * std::log10(power_ratio); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

double lambda_opt_unclamped(const InterferometerParams& params) {
  const double ep = params.eta_p();
  const double ec = params.eta_c();
  const double num = std::sqrt(ep) * std::sqrt(ec) * params.sinh2r();
  const double den = 1.0 - ec + ec * params.cosh2r();
  return num / den;
}

double lambda_opt(const InterferometerParams& params) {
  return std::clamp(lambda_opt_unclamped(params), 0.0, 1.0);
}

double lambda_opt_numeric(const InterferometerParams& params,
                          double tolerance) {
  const GaussianState state = lossy_state(params);
  auto f = [&](double l) {
    return joint_quadrature_stats(state, WeightedMeasurement(l)).variance;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);

  // Below ~1e-8 the comparisons above are decided by rounding, not by the
  // objective. Three points a millimetre of lambda apart pin the vertex of
  // the (quadratic) objective to ~1e-13.
  const double h = 1e-3;
  const double mid = std::clamp(best, h, 1.0 - h);
  const double f0 = f(mid - h);
  const double f1 = f(mid);
  const double f2 = f(mid + h);
  const double curvature = f0 - 2.0 * f1 + f2;
  if (curvature > 0.0) {
    best = mid + 0.5 * h * (f0 - f2) / curvature;
  }
  return std::clamp(best, 0.0, 1.0);
}

NoiseResult joint_noise_power(const InterferometerParams& params,
                              double lambda, double electronic_noise_var) {
  const WeightedMeasurement m(lambda);
  if (!(electronic_noise_var >= 0.0)) {
    throw DomainError("electronic noise variance must be >= 0");
  }
  NoiseResult r;
  r.lambda = lambda;
  r.variance = joint_quadrature_stats(lossy_state(params), m).variance +
               electronic_noise_var * (1.0 + lambda * lambda);
  r.variance_db = to_db(r.variance);
  return r;
}

double signal_slope(const InterferometerParams& params) {
  return 2.0 * std::sqrt(params.eta_p() * params.gain()) * params.alpha();
}

double snr(const InterferometerParams& params, double lambda, double dphi) {
  const double slope = signal_slope(params);
  return slope * slope * dphi * dphi /
         joint_noise_power(params, lambda).variance;
}

SensitivityResult phase_sensitivity(const InterferometerParams& params,
                                    double lambda) {
  require_signal(params);
  const double slope = signal_slope(params);
  const double var = joint_noise_power(params, lambda).variance;
  return {std::sqrt(var) / slope, std::nullopt};
}

double quantum_fisher_information(const InterferometerParams& params) {
  if (!params.lossless()) {
    throw UnsupportedConfiguration(
        "quantum Fisher information is only modeled for the lossless state");
  }
  return 4.0 * photon_moments(seeded_tmss(params), Mode::kProbe).var_n;
}

SensitivityResult qcrb(const InterferometerParams& params) {
  const double fq = quantum_fisher_information(params);
  if (!(fq > 0.0)) {
    throw DomainError("state carries no phase information (F_Q = 0)");
  }
  return {1.0 / std::sqrt(fq), std::nullopt};
}

SensitivityResult sql_sensitivity(SqlKind kind,
                                  const InterferometerParams& params) {
  require_signal(params);
  const double slope = signal_slope(params);
  const double var = kind == SqlKind::kSql1 ? 2.0 : 1.0;
  return {std::sqrt(var) / slope, std::nullopt};
}

double snri(const InterferometerParams& params, double lambda, SqlKind kind) {
  // The signal slope is common to both sides of the ratio, so only the noise
  // powers survive: SNRI = 10 log10(Var_SQL / Var(M)).
  const double over_sql2 = -to_db(joint_noise_power(params, lambda).variance);
  return kind == SqlKind::kSql1 ? over_sql2 + to_db(2.0) : over_sql2;
}

std::string params_tag(const InterferometerParams& p) {
  std::string tag = "G" + format_number(p.gain());
  if (!p.lossless()) {
    tag += "_ep" + format_number(p.eta_p()) + "_ec" + format_number(p.eta_c());
  }
  return tag;
}

CurveTable curve_noise_vs_lambda(std::span<const InterferometerParams> params,
                                 std::span<const double> lambda_grid) {
  check_lambda_grid(lambda_grid);
  if (params.empty()) throw DomainError("no parameter sets given");
  std::vector<std::string> cols{"lambda"};
  for (const auto& p : params) {
    cols.push_back("variance_" + params_tag(p));
    cols.push_back("noise_db_" + params_tag(p));
  }
  CurveTable t("fig4a", std::move(cols));
  t.add_metadata("ordinate", "noise of M relative to single-detector shot noise");
  for (const auto& p : params) add_params_metadata(t, p, params_tag(p));
  for (double l : lambda_grid) {
    std::vector<double> row{l};
    for (const auto& p : params) {
      const NoiseResult n = joint_noise_power(p, l);
      row.push_back(n.variance);
      row.push_back(n.variance_db);
    }
    t.add_row(std::move(row));
  }
  return t;
}

CurveTable curve_lambda_opt_vs_gain(std::span<const TransmissionPair> etas,
                                    std::span<const double> gain_grid) {
  check_grid(gain_grid, "gain");
  if (etas.empty()) throw DomainError("no transmissions given");
  std::vector<std::string> cols{"gain"};
  for (const auto& e : etas) {
    cols.push_back("lambda_opt_ep" + format_number(e.eta_p) + "_ec" +
                   format_number(e.eta_c));
  }
  CurveTable t("fig4b", std::move(cols));
  for (double g : gain_grid) {
    std::vector<double> row{g};
    for (const auto& e : etas) {
      row.push_back(lambda_opt(InterferometerParams(g, e.eta_p, e.eta_c)));
    }
    t.add_row(std::move(row));
  }
  return t;
}

CurveTable curve_sensitivity_vs_gain(double alpha,
                                     std::span<const double> gain_grid) {
  check_grid(gain_grid, "gain");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  CurveTable t("fig3", {"gain", "dphi_alpha_balanced", "dphi_alpha_weighted_opt",
                        "dphi_alpha_qcrb"});
  t.add_metadata("alpha", format_number(alpha));
  for (double g : gain_grid) {
    const InterferometerParams p(g, 1.0, 1.0, alpha);
    t.add_row({g, phase_sensitivity(p, 1.0).delta_phi * alpha,
               phase_sensitivity(p, lambda_opt(p)).delta_phi * alpha,
               qcrb(p).delta_phi * alpha});
  }
  return t;
}

CurveTable curve_snri_vs_lambda(std::span<const InterferometerParams> params,
                                std::span<const double> lambda_grid) {
  check_lambda_grid(lambda_grid);
  if (params.empty()) throw DomainError("no parameter sets given");
  std::vector<std::string> cols{"lambda"};
  for (const auto& p : params) {
    cols.push_back("snri_sql2_" + params_tag(p));
    cols.push_back("snri_sql1_" + params_tag(p));
  }
  CurveTable t("fig6", std::move(cols));
  for (const auto& p : params) add_params_metadata(t, p, params_tag(p));
  for (double l : lambda_grid) {
    std::vector<double> row{l};
    for (const auto& p : params) {
      row.push_back(snri(p, l, SqlKind::kSql2));
      row.push_back(snri(p, l, SqlKind::kSql1));
    }
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace tsui
