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

#include "tsui/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <ceres/ceres.h>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "tsui/errors.hpp"

namespace tsui {
namespace {

// Transmissions stay a hair above zero: d sqrt(eta)/d eta diverges at 0.
constexpr double kEtaFloor = 1e-6;
constexpr double kMaxSqueezing = 3.0;  // G up to cosh^2 3 ~ 101
constexpr double kMaxScaleDb = 60.0;
constexpr double kIllConditioned = 1e10;
constexpr int kBootstrapSamples = 1000;
constexpr std::uint64_t kBootstrapSeed = 0x5eed1a3b0075a9ULL;

// Parameter vector x = (r, eta_c, scale_db) with the loss offset tied, or
// (r, eta_p, eta_c, scale_db) when both transmissions are free.
struct Layout {
  std::optional<double> offset;
  int size() const { return offset ? 3 : 4; }
  int eta_c() const { return offset ? 1 : 2; }
  int scale() const { return offset ? 2 : 3; }
};

template <typename T>
void unpack(const Layout& layout, const T* x, T& r, T& ep, T& ec, T& s) {
  r = x[0];
  if (layout.offset) {
    ec = x[1];
    ep = ec - T(*layout.offset);
    s = x[2];
  } else {
    ep = x[1];
    ec = x[2];
    s = x[3];
  }
}

template <typename T>
T model_db(const T& r, const T& ep, const T& ec, const T& s, double lambda) {
  using std::cosh;
  using std::log;
  using std::sinh;
  using std::sqrt;
  const T c2 = cosh(2.0 * r);
  const T s2 = sinh(2.0 * r);
  const T a = ep * c2 + 1.0 - ep;
  const T b = ec * c2 + 1.0 - ec;
  const T c = sqrt(ep) * sqrt(ec) * s2;
  // Jet has no log10.
  return (10.0 / std::numbers::ln10) *
             log(a + lambda * lambda * b - 2.0 * lambda * c) +
         s;
}

struct NoiseResidual {
  const std::vector<NoisePoint>* rows;
  Layout layout;

  template <typename T>
  bool operator()(const T* x, T* residual) const {
    T r, ep, ec, s;
    unpack(layout, x, r, ep, ec, s);
    for (std::size_t i = 0; i < rows->size(); ++i) {
      const NoisePoint& p = (*rows)[i];
      residual[i] = (model_db(r, ep, ec, s, p.lambda) - p.noise_db) / p.sigma_db;
    }
    return true;
  }
};

struct Bounds {
  std::vector<double> lo, hi;
};

Bounds parameter_bounds(const Layout& layout) {
  Bounds b;
  b.lo.assign(layout.size(), 0.0);
  b.hi.assign(layout.size(), 0.0);
  b.lo[0] = 0.0;
  b.hi[0] = kMaxSqueezing;
  if (layout.offset) {
    const double d = *layout.offset;
    b.lo[1] = std::max(kEtaFloor, d + kEtaFloor);
    b.hi[1] = std::min(1.0, 1.0 + d);
  } else {
    b.lo[1] = b.lo[2] = kEtaFloor;
    b.hi[1] = b.hi[2] = 1.0;
  }
  b.lo[layout.scale()] = -kMaxScaleDb;
  b.hi[layout.scale()] = kMaxScaleDb;
  return b;
}

double chi_square_of(const std::vector<NoisePoint>& rows, const Layout& layout,
                     const std::vector<double>& x) {
  std::vector<double> res(rows.size());
  NoiseResidual{&rows, layout}(x.data(), res.data());
  double c = 0.0;
  for (double v : res) c += v * v;
  return c;
}

// Weighted mean offset between data and model for the other parameters.
double best_scale(const std::vector<NoisePoint>& rows, const Layout& layout,
                  std::vector<double> x) {
  x[layout.scale()] = 0.0;
  double r, ep, ec, s;
  unpack(layout, x.data(), r, ep, ec, s);
  double num = 0.0, den = 0.0;
  for (const auto& p : rows) {
    const double w = 1.0 / (p.sigma_db * p.sigma_db);
    num += w * (p.noise_db - model_db(r, ep, ec, 0.0, p.lambda));
    den += w;
  }
  return std::clamp(num / den, -kMaxScaleDb, kMaxScaleDb);
}

std::vector<std::vector<double>> starting_points(const Layout& layout,
                                                 const FitOptions& opt,
                                                 const std::vector<NoisePoint>& rows,
                                                 const Bounds& b) {
  std::vector<std::vector<double>> starts;
  auto add = [&](double r, double ep, double ec) {
    std::vector<double> x(layout.size());
    x[0] = std::clamp(r, b.lo[0], b.hi[0]);
    if (layout.offset) {
      x[1] = std::clamp(ec, b.lo[1], b.hi[1]);
    } else {
      x[1] = std::clamp(ep, b.lo[1], b.hi[1]);
      x[2] = std::clamp(ec, b.lo[2], b.hi[2]);
    }
    x[layout.scale()] = best_scale(rows, layout, x);
    starts.push_back(std::move(x));
  };
  if (opt.initial_gain || opt.initial_eta_c) {
    const double g = opt.initial_gain.value_or(1.5);
    const double ec = opt.initial_eta_c.value_or(0.8);
    add(std::acosh(std::sqrt(g)), ec - opt.loss_offset.value_or(0.0), ec);
  }
  for (double r : {0.25, 0.5, 0.9, 1.4}) {
    for (double ec : {0.65, 0.9}) {
      if (layout.offset) {
        add(r, ec - *layout.offset, ec);
      } else {
        for (double ep : {0.65, 0.9}) add(r, ep, ec);
      }
    }
  }
  return starts;
}

struct Solved {
  std::vector<double> x;
  double cost = std::numeric_limits<double>::infinity();
  bool converged = false;
};

Solved solve_from(const std::vector<NoisePoint>& rows, const Layout& layout,
                  const Bounds& b, std::vector<double> x,
                  const FitOptions& opt) {
  ceres::Problem problem;
  auto* cost = new ceres::AutoDiffCostFunction<NoiseResidual, ceres::DYNAMIC, 4>(
      new NoiseResidual{&rows, layout}, static_cast<int>(rows.size()));
  // The functor reads at most layout.size() entries; pad the block to 4.
  x.resize(4, 0.0);
  problem.AddResidualBlock(cost, nullptr, x.data());
  for (int i = 0; i < layout.size(); ++i) {
    problem.SetParameterLowerBound(x.data(), i, b.lo[i]);
    problem.SetParameterUpperBound(x.data(), i, b.hi[i]);
  }
  if (layout.size() < 4) {
    problem.SetParameterization(x.data(),
                                new ceres::SubsetParameterization(4, {3}));
  }
  ceres::Solver::Options so;
  so.minimizer_type = ceres::TRUST_REGION;
  so.trust_region_strategy_type = ceres::LEVENBERG_MARQUARDT;
  so.linear_solver_type = ceres::DENSE_QR;
  so.max_num_iterations = opt.max_iterations;
  so.function_tolerance = opt.tolerance;
  so.gradient_tolerance = opt.tolerance * 1e-4;
  so.parameter_tolerance = 1e-14;
  so.num_threads = 1;
  so.logging_type = ceres::SILENT;
  so.minimizer_progress_to_stdout = false;
  ceres::Solver::Summary summary;
  ceres::Solve(so, &problem, &summary);

  Solved out;
  x.resize(layout.size());
  out.x = x;
  out.cost = chi_square_of(rows, layout, out.x);
  out.converged = summary.termination_type == ceres::CONVERGENCE &&
                  std::isfinite(out.cost);
  return out;
}

// Residual Jacobian at x, by forward-mode autodiff through the same functor
// the solver used.
Eigen::MatrixXd jacobian(const std::vector<NoisePoint>& rows,
                         const Layout& layout, const std::vector<double>& x) {
  const int n = layout.size();
  Eigen::MatrixXd j(static_cast<Eigen::Index>(rows.size()), n);
  using Jet = ceres::Jet<double, 4>;
  std::vector<Jet> xj(4);
  for (int i = 0; i < 4; ++i) {
    xj[i] = Jet(i < n ? x[i] : 0.0, i);
  }
  std::vector<Jet> res(rows.size());
  NoiseResidual{&rows, layout}(xj.data(), res.data());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < n; ++i) j(static_cast<Eigen::Index>(r), i) = res[r].v[i];
  }
  return j;
}

InterferometerParams params_from(const Layout& layout,
                                 const std::vector<double>& x) {
  double r, ep, ec, s;
  unpack(layout, x.data(), r, ep, ec, s);
  const double c = std::cosh(r);
  return InterferometerParams(std::max(1.0, c * c), std::clamp(ep, 0.0, 1.0),
                              std::clamp(ec, 0.0, 1.0));
}

double lambda_opt_at(const Layout& layout, const std::vector<double>& x) {
  return lambda_opt(params_from(layout, x));
}

struct Distinct {
  std::vector<double> lambda, y, sigma;
};

// Collapses repeated lambda values into their inverse-variance mean.
Distinct merge_replicates(const std::vector<NoisePoint>& rows) {
  Distinct d;
  std::size_t i = 0;
  while (i < rows.size()) {
    double sw = 0.0, swy = 0.0;
    std::size_t j = i;
    while (j < rows.size() && rows[j].lambda == rows[i].lambda) {
      const double w = 1.0 / (rows[j].sigma_db * rows[j].sigma_db);
      sw += w;
      swy += w * rows[j].noise_db;
      ++j;
    }
    d.lambda.push_back(rows[i].lambda);
    d.y.push_back(swy / sw);
    d.sigma.push_back(1.0 / std::sqrt(sw));
    i = j;
  }
  return d;
}

struct DirectEstimate {
  double value = 0.0;
  bool at_boundary = false;
  bool not_convex = false;
  bool clamped = false;
};

DirectEstimate three_point_minimum(const std::vector<double>& lambda,
                                   const std::vector<double>& y) {
  std::vector<std::size_t> idx(lambda.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(),
                    [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  DirectEstimate e;
  e.at_boundary = idx[0] == 0 || idx[0] == lambda.size() - 1;
  const double x0 = lambda[idx[0]], x1 = lambda[idx[1]], x2 = lambda[idx[2]];
  const double y0 = y[idx[0]], y1 = y[idx[1]], y2 = y[idx[2]];
  // Second divided difference is the parabola's leading coefficient.
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double c = (d12 - d01) / (x2 - x0);
  if (!(c > 0.0)) {
    e.not_convex = true;
    e.value = x0;
    return e;
  }
  const double b = d01 - c * (x0 + x1);
  const double v = -b / (2.0 * c);
  e.value = std::clamp(v, 0.0, 1.0);
  e.clamped = e.value != v;
  return e;
}

std::string fmt(double v) { return format_number(v); }

}  // namespace

void FitOptions::validate() const {
  if (loss_offset && !(std::abs(*loss_offset) <= 0.2)) {
    throw DomainError("loss offset must lie in [-0.2, 0.2]");
  }
  if (max_iterations <= 0) throw DomainError("max_iterations must be > 0");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  if (initial_gain && !(*initial_gain >= 1.0)) {
    throw DomainError("initial gain must be >= 1");
  }
  if (initial_eta_c && !(*initial_eta_c >= 0.0 && *initial_eta_c <= 1.0)) {
    throw DomainError("initial eta_c must lie in [0,1]");
  }
}

LambdaOptEstimate extract_lambda_opt(const NoiseDataset& data,
                                     const std::optional<FitResult>& fit) {
  const Distinct d = merge_replicates(data.rows());
  if (d.lambda.size() < 3) {
    throw DomainError("need at least three distinct lambda values");
  }
  LambdaOptEstimate out;
  const DirectEstimate e = three_point_minimum(d.lambda, d.y);
  out.direct = e.value;
  if (e.at_boundary) {
    out.warnings.push_back("minimum at grid boundary (lambda=" +
                           fmt(d.lambda[e.value <= d.lambda.front()
                                            ? 0
                                            : d.lambda.size() - 1]) +
                           "); lambda_opt may lie outside the sampled range");
  }
  if (e.not_convex) {
    out.warnings.push_back(
        "three lowest points are not convex; direct estimate is the lowest "
        "point");
  }
  if (e.clamped) {
    out.warnings.push_back("parabola vertex outside [0,1]; clamped");
  }

  std::mt19937_64 rng(kBootstrapSeed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> y(d.y.size());
  double s1 = 0.0, s2 = 0.0;
  for (int b = 0; b < kBootstrapSamples; ++b) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = d.y[i] + d.sigma[i] * unit(rng);
    }
    const double v = three_point_minimum(d.lambda, y).value;
    s1 += v;
    s2 += v * v;
  }
  const double n = kBootstrapSamples;
  out.direct_sigma = std::sqrt(std::max(0.0, (s2 - s1 * s1 / n) / (n - 1)));

  if (fit) {
    out.value = fit->lambda_opt_fit;
    out.sigma = fit->sigma_lambda_opt_fit;
    out.from_fit = true;
  } else {
    out.value = out.direct;
    out.sigma = out.direct_sigma;
  }
  return out;
}

FitResult fit_noise_curve(const NoiseDataset& data, const FitOptions& options) {
  options.validate();
  const std::vector<NoisePoint>& rows = data.rows();
  const Layout layout{options.loss_offset};
  const Bounds bounds = parameter_bounds(layout);
  const auto starts = starting_points(layout, options, rows, bounds);

  Solved best;
  Solved best_any;
  int converged = 0;
  for (const auto& x0 : starts) {
    const Solved s = solve_from(rows, layout, bounds, x0, options);
    if (s.cost < best_any.cost) best_any = s;
    if (s.converged) {
      ++converged;
      if (s.cost < best.cost) best = s;
    }
  }

  FitResult out;
  out.starts = static_cast<int>(starts.size());
  out.converged_starts = converged;
  out.loss_offset = options.loss_offset;
  const Solved& chosen = converged > 0 ? best : best_any;
  const std::vector<double>& x = chosen.x;
  const InterferometerParams p = params_from(layout, x);
  out.squeezing = x[0];
  out.gain = p.gain();
  out.eta_p = p.eta_p();
  out.eta_c = p.eta_c();
  out.scale_db = x[layout.scale()];
  out.chi_square = chosen.cost;
  out.dof = static_cast<int>(rows.size()) - layout.size();
  out.lambda_opt_fit = lambda_opt(p);
  out.parameter_names = layout.offset
                            ? std::vector<std::string>{"r", "eta_c", "scale_db"}
                            : std::vector<std::string>{"r", "eta_p", "eta_c",
                                                       "scale_db"};
  if (converged == 0) {
    throw FitFailure("fit did not converge from any of " +
                         std::to_string(starts.size()) + " starting points",
                     out);
  }

  const Eigen::MatrixXd j = jacobian(rows, layout, x);
  const Eigen::MatrixXd h = j.transpose() * j;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double ev_max = ev.maxCoeff();
  const double ev_min = ev.minCoeff();
  out.condition_number = ev_min > 0.0 ? ev_max / ev_min
                                      : std::numeric_limits<double>::infinity();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > ev_max * 1e-14) inv(i) = 1.0 / ev(i);
  }
  out.covariance = eig.eigenvectors() * inv.asDiagonal() *
                   eig.eigenvectors().transpose();
  if (!(out.condition_number <= kIllConditioned)) {
    out.warnings.push_back(
        "ill-conditioned fit (condition number " + fmt(out.condition_number) +
        "); parameters trade off and their uncertainties are unreliable");
  }
  for (int i = 0; i < layout.size(); ++i) {
    const double span = bounds.hi[i] - bounds.lo[i];
    if (x[i] <= bounds.lo[i] + 1e-9 * span || x[i] >= bounds.hi[i] - 1e-9 * span) {
      out.warnings.push_back("parameter " + out.parameter_names[i] +
                             " at its bound (" + fmt(x[i]) + ")");
    }
  }

  auto sd = [&](int i) { return std::sqrt(std::max(0.0, out.covariance(i, i))); };
  out.sigma_squeezing = sd(0);
  out.sigma_gain = std::sinh(2.0 * x[0]) * out.sigma_squeezing;
  out.sigma_eta_c = sd(layout.eta_c());
  out.sigma_eta_p = layout.offset ? out.sigma_eta_c : sd(1);
  out.sigma_scale_db = sd(layout.scale());

  // Delta method for lambda_opt through the same covariance.
  Eigen::VectorXd grad(layout.size());
  for (int i = 0; i < layout.size(); ++i) {
    const double h_step = 1e-6;
    std::vector<double> up = x, dn = x;
    up[i] = std::min(bounds.hi[i], x[i] + h_step);
    dn[i] = std::max(bounds.lo[i], x[i] - h_step);
    grad(i) = (lambda_opt_at(layout, up) - lambda_opt_at(layout, dn)) /
              (up[i] - dn[i]);
  }
  out.sigma_lambda_opt_fit =
      std::sqrt(std::max(0.0, grad.dot(out.covariance * grad)));

  const LambdaOptEstimate direct = extract_lambda_opt(data);
  out.lambda_opt_direct = direct.direct;
  out.sigma_lambda_opt_direct = direct.direct_sigma;
  for (const auto& w : direct.warnings) out.warnings.push_back(w);
  return out;
}

std::string FitResult::to_json(int indent) const {
  nlohmann::ordered_json j;
  j["gain"] = gain;
  j["eta_p"] = eta_p;
  j["eta_c"] = eta_c;
  j["scale_db"] = scale_db;
  j["squeezing"] = squeezing;
  j["sigma"] = {{"gain", sigma_gain},
                {"eta_p", sigma_eta_p},
                {"eta_c", sigma_eta_c},
                {"scale_db", sigma_scale_db},
                {"squeezing", sigma_squeezing}};
  j["chi_square"] = chi_square;
  j["dof"] = dof;
  j["parameter_names"] = parameter_names;
  nlohmann::ordered_json cov = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < covariance.rows(); ++r) {
    std::vector<double> row(covariance.cols());
    for (Eigen::Index c = 0; c < covariance.cols(); ++c) row[c] = covariance(r, c);
    cov.push_back(row);
  }
  j["covariance"] = cov;
  j["condition_number"] = std::isfinite(condition_number)
                              ? nlohmann::ordered_json(condition_number)
                              : nlohmann::ordered_json(nullptr);
  j["lambda_opt_fit"] = {{"value", lambda_opt_fit},
                         {"sigma", sigma_lambda_opt_fit}};
  j["lambda_opt_direct"] = {{"value", lambda_opt_direct},
                            {"sigma", sigma_lambda_opt_direct}};
  j["loss_offset"] = loss_offset ? nlohmann::ordered_json(*loss_offset)
                                 : nlohmann::ordered_json(nullptr);
  j["starts"] = starts;
  j["converged_starts"] = converged_starts;
  j["warnings"] = warnings;
  return j.dump(indent);
}

std::string FitResult::summary() const {
  std::ostringstream s;
  s << "gain        " << fmt(gain) << " +- " << fmt(sigma_gain) << "\n"
    << "eta_p       " << fmt(eta_p) << " +- " << fmt(sigma_eta_p)
    << (loss_offset ? " (tied: eta_c - " + fmt(*loss_offset) + ")" : "") << "\n"
    << "eta_c       " << fmt(eta_c) << " +- " << fmt(sigma_eta_c) << "\n"
    << "scale_db    " << fmt(scale_db) << " +- " << fmt(sigma_scale_db) << "\n"
    << "chi2 / dof  " << fmt(chi_square) << " / " << dof << "\n"
    << "lambda_opt  " << fmt(lambda_opt_fit) << " +- "
    << fmt(sigma_lambda_opt_fit) << " (fit)\n"
    << "lambda_opt  " << fmt(lambda_opt_direct) << " +- "
    << fmt(sigma_lambda_opt_direct) << " (three-point minimum)\n"
    << "converged   " << converged_starts << " of " << starts << " starts\n";
  for (const auto& w : warnings) s << "warning: " << w << "\n";
  return s.str();
}

CurveTable overlay_theory(const FitResult& fit, SqlKind kind,
                          std::span<const double> lambda_grid) {
  if (lambda_grid.empty()) throw DomainError("lambda grid is empty");
  const InterferometerParams p = fit.params();
  const std::string col = kind == SqlKind::kSql1 ? "snri_sql1" : "snri_sql2";
  CurveTable t("fig7b", {"lambda", col});
  t.add_metadata("gain", fmt(p.gain()));
  t.add_metadata("eta_p", fmt(p.eta_p()));
  t.add_metadata("eta_c", fmt(p.eta_c()));
  t.add_metadata("baseline", std::string(sql_name(kind)));
  t.add_metadata("scale_db", "excluded");
  for (double l : lambda_grid) t.add_row({l, snri(p, l, kind)});
  return t;
}

GainReport lambda_opt_vs_gain_report(std::span<const NoiseDataset> datasets,
                                     const FitOptions& options,
                                     TransmissionPair reference) {
  if (datasets.size() < 2) {
    throw DomainError("gain report needs at least two datasets");
  }
  options.validate();
  std::vector<std::optional<FitResult>> fits(datasets.size());
  std::vector<std::string> errors(datasets.size());
  internal::parallel_for(datasets.size(), [&](std::size_t i) {
    try {
      fits[i] = fit_noise_curve(datasets[i], options);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  GainReport out{CurveTable("fig8", {"gain", "sigma_gain", "lambda_opt",
                                     "sigma_lambda_opt", "lambda_opt_direct",
                                     "sigma_lambda_opt_direct",
                                     "lambda_opt_theory"}),
                 {}};
  std::vector<const FitResult*> ok;
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    if (fits[i]) {
      ok.push_back(&*fits[i]);
    } else {
      out.failures.push_back("dataset " + std::to_string(i) + ": " + errors[i]);
    }
  }
  if (ok.size() < 2) {
    std::string msg = "fewer than two datasets could be fitted";
    for (const auto& f : out.failures) msg += "; " + f;
    throw DomainError(msg);
  }
  std::sort(ok.begin(), ok.end(), [](const FitResult* a, const FitResult* b) {
    return a->gain < b->gain;
  });
  for (std::size_t i = 1; i < ok.size(); ++i) {
    if (!(ok[i]->gain > ok[i - 1]->gain)) {
      throw DomainError("two datasets fitted to the same gain " +
                        fmt(ok[i]->gain));
    }
  }
  out.table.add_metadata("reference_eta_p", fmt(reference.eta_p));
  out.table.add_metadata("reference_eta_c", fmt(reference.eta_c));
  out.table.add_metadata(
      "loss_offset", options.loss_offset ? fmt(*options.loss_offset) : "free");
  for (const auto& f : out.failures) out.table.add_metadata("failed", f);
  for (const FitResult* f : ok) {
    out.table.add_row(
        {f->gain, f->sigma_gain, f->lambda_opt_fit, f->sigma_lambda_opt_fit,
         f->lambda_opt_direct, f->sigma_lambda_opt_direct,
         lambda_opt(InterferometerParams(f->gain, reference.eta_p,
                                         reference.eta_c))});
  }
  return out;
}

}  // namespace tsui
