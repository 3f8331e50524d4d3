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

// Acceptance checks AC1-AC9. Prints one PASS/FAIL line per criterion.
// Criteria named with --known-unattainable are still run and reported, but do
// not affect the exit status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tsui/fit.hpp"
#include "tsui/fock.hpp"
#include "tsui/gaussian.hpp"
#include "tsui/metrology.hpp"
#include "tsui/simulator.hpp"

namespace tsui {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double scaled_error(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

Verdict ac1() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> g(1.001, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double gain = g(rng);
    const double want = std::tanh(2.0 * std::acosh(std::sqrt(gain)));
    worst = std::max(worst, std::abs(lambda_opt(InterferometerParams(gain)) - want));
  }
  return {worst <= 1e-12, fmt("max |lambda_opt - tanh 2r| = %.2e (tol 1e-12)", worst)};
}

Verdict ac2() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> g(1.001, 10.0), e(0.05, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng));
    worst = std::max(worst, std::abs(lambda_opt(p) - lambda_opt_numeric(p)));
  }
  return {worst <= 1e-8, fmt("max |closed form - golden section| = %.2e (tol 1e-8)", worst)};
}

Verdict ac3() {
  constexpr double alpha = 100.0;
  double worst_rel = 0.0, worst_abs = 0.0;
  for (double gain : {1.1, 1.67, 2.0}) {
    const InterferometerParams p(gain, 1.0, 1.0, alpha);
    const double dphi = phase_sensitivity(p, lambda_opt(p)).delta_phi;
    const double excess = quantum_fisher_information(p) * dphi * dphi - 1.0;
    const double want = p.sinh2r() * p.sinh2r() / (4.0 * gain * alpha * alpha * p.cosh2r());
    worst_rel = std::max(worst_rel, std::abs(excess - want) / want);
    worst_abs = std::max(worst_abs, std::abs(excess));
  }
  return {worst_rel <= 1e-9 && worst_abs <= 1e-3,
          fmt("F_Q dphi^2 - 1: rel err vs closed form %.2e (tol 1e-9), max %.2e (tol 1e-3)",
              worst_rel, worst_abs)};
}

Verdict ac4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> g(1.0, 10.0), e(0.05, 1.0), l(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const InterferometerParams p(g(rng), e(rng), e(rng));
    const double lam = l(rng);
    const double d = snri(p, lam, SqlKind::kSql1) - snri(p, lam, SqlKind::kSql2);
    worst = std::max(worst, std::abs(d - 10.0 * std::log10(2.0)));
  }
  const InterferometerParams p(1.1);
  const double lopt = lambda_opt(p);
  const double at1 = snri(p, 1.0, SqlKind::kSql2);
  const double atopt = snri(p, lopt, SqlKind::kSql2);
  const FockState f = build_seeded_tmss_fock(1.1, 0.0);
  const double fock1 = -10.0 * std::log10(oracle_quadrature_variance(f, 1.0));
  const double fockopt = -10.0 * std::log10(oracle_quadrature_variance(f, lopt));
  const bool ok = worst <= 1e-12 && std::abs(at1 + 0.3075) <= 1e-3 && at1 < 0.0 &&
                  std::abs(atopt - 0.7918) <= 1e-3 && atopt > 0.0 &&
                  std::abs(fock1 + 0.3075) <= 1e-3 && std::abs(fockopt - 0.7918) <= 1e-3;
  return {ok, fmt("SQL1-SQL2 max dev %.1e dB; G=1.1 SNRI_SQL2(1) = %.4f dB (Fock %.4f), "
                  "SNRI_SQL2(lambda_opt) = %.4f dB (Fock %.4f), tol 1e-3",
                  worst, at1, fock1, atopt, fockopt)};
}

Verdict ac5() {
  double worst = 0.0;
  int checked = 0;
  for (double gain : {1.0, 1.2, 1.5, 2.0}) {
    for (double alpha : {0.0, 0.5, 1.0}) {
      const FockState pure = build_seeded_tmss_fock(gain, alpha, 40);
      for (double eta : {1.0, 0.76}) {
        const InterferometerParams p(gain, eta, eta, alpha);
        const FockState f = apply_loss_fock(apply_loss_fock(pure, eta, Mode::kProbe), eta,
                                            Mode::kConjugate);
        const GaussianState want = lossy_state(p);
        const GaussianState got = oracle_moments(f);
        for (int i = 0; i < 4; ++i) {
          worst = std::max(worst, scaled_error(got.mean(i), want.mean(i)));
          for (int j = 0; j < 4; ++j) {
            worst = std::max(worst, scaled_error(got.cov(i, j), want.cov(i, j)));
          }
        }
        for (double lam : {0.0, 0.5, 1.0}) {
          worst = std::max(worst, scaled_error(oracle_quadrature_variance(f, lam),
                                               joint_noise_power(p, lam).variance));
          ++checked;
        }
      }
    }
  }
  return {worst <= 1e-6,
          fmt("%d grid points, cutoff 40: max error %.2e (tol 1e-6, relative to max(1,|x|))",
              checked, worst)};
}

Verdict ac6() {
  struct Case {
    InterferometerParams truth;
    double lopt_ref;
  };
  const Case cases[] = {{InterferometerParams(1.67, 0.76, 0.79), 0.79633},
                        {InterferometerParams(1.2, 0.73, 0.76), 0.55967}};
  std::normal_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    std::mt19937_64 rng(c.truth.gain() == 1.67 ? 61 : 62);
    const double lopt = lambda_opt(c.truth);
    int params_in = 0, lopt_in = 0, direct_in = 0;
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<NoisePoint> rows;
      for (int i = 0; i <= 20; ++i) {
        const double l = 0.05 * i;
        rows.push_back({l, joint_noise_power(c.truth, l).variance_db + 0.05 * unit(rng), 0.05});
      }
      const FitResult f = fit_noise_curve(NoiseDataset(rows, DataSource::kSimulated));
      params_in += std::abs(f.gain - c.truth.gain()) <= f.sigma_gain &&
                   std::abs(f.eta_p - c.truth.eta_p()) <= f.sigma_eta_p &&
                   std::abs(f.eta_c - c.truth.eta_c()) <= f.sigma_eta_c;
      lopt_in += std::abs(f.lambda_opt_fit - lopt) <= 0.02;
      direct_in += std::abs(f.lambda_opt_direct - lopt) <= 0.02;
    }
    ok = ok && params_in >= 90 && lopt_in == 100;
    detail += fmt("G=%.3g: params within 1 sigma %d/100 (need 90), lambda_opt(fit) within "
                  "0.02 of %.5f %d/100, three-point estimate %d/100; ",
                  c.truth.gain(), params_in, c.lopt_ref, lopt_in, direct_in);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Verdict ac7() {
  SimConfig c;
  c.params = InterferometerParams(1.67, 0.76, 0.79);
  c.duration = 0.5;
  c.rng_seed = 71;
  const double lopt = lambda_opt(c.params);
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, lopt, 1.0};
  const NoiseDataset d = measure_noise_vs_lambda(c, grid, 1);
  double worst = 0.0;
  for (const auto& r : d.rows()) {
    worst = std::max(worst, std::abs(r.noise_db - joint_noise_power(c.params, r.lambda).variance_db));
  }
  return {worst <= 0.1 && c.num_samples() >= (1u << 20),
          fmt("%zu samples per point, max |simulated - analytic| = %.3f dB over 6 weights "
              "(tol 0.1 dB)", c.num_samples(), worst)};
}

Verdict ac8() {
  SimConfig c;
  c.params = InterferometerParams(3.3, 0.75, 0.75, 100.0);
  c.tone_depth = 1e-2;
  c.rng_seed = 81;
  const Fig2Result r = fig2_comparison(c);
  const double imp = r.improvement_db();
  const double ratio = r.tone_ratio();
  return {imp >= 3.5 && imp <= 5.5 && std::abs(ratio - 1.0) <= 0.01,
          fmt("noise floor improvement %.3f dB at %.0f Hz, RBW %.0f Hz (need 3.5-5.5), "
              "tone power ratio %.4f (tol 1%%)",
              imp, c.analysis_freq, c.rbw, ratio)};
}

Verdict ac9() {
  bool increasing = true, below = true;
  double prev = -1.0;
  for (int i = 0; i <= 1950; ++i) {
    const double g = 1.05 + 0.001 * i;
    const double l = lambda_opt(InterferometerParams(g, 0.745, 0.775));
    increasing = increasing && l > prev;
    below = below && l < lambda_opt(InterferometerParams(g));
    prev = l;
  }
  std::string pts;
  bool pipeline = true;
  const auto grid = [] {
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(0.05 * i);
    return g;
  }();
  std::uint64_t seed = 91;
  for (double gain : {1.2, 1.5, 1.8, 2.2, 2.6}) {
    SimConfig c;
    c.params = InterferometerParams(gain, 0.745, 0.775);
    c.rng_seed = seed++;
    const FitResult f = fit_noise_curve(measure_noise_vs_lambda(c, grid, 1));
    const double theory = lambda_opt(c.params);
    const double z = std::abs(f.lambda_opt_fit - theory) / f.sigma_lambda_opt_fit;
    pipeline = pipeline && z <= 2.0;
    pts += fmt(" G=%.1f %.4f+-%.4f vs %.4f (%.1f sigma);", gain, f.lambda_opt_fit,
               f.sigma_lambda_opt_fit, theory, z);
  }
  pts.pop_back();
  return {increasing && below && pipeline,
          fmt("theory curve on [1.05,3]: increasing %s, below lossless %s; simulate-fit:",
              increasing ? "yes" : "no", below ? "yes" : "no") + pts};
}

}  // namespace
}  // namespace tsui

int main(int argc, char** argv) {
  std::set<std::string> unattainable;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--known-unattainable" && i + 1 < argc) {
      unattainable.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--known-unattainable ACn]...\n", argv[0]);
      return 2;
    }
  }
  struct Criterion {
    const char* id;
    tsui::Verdict (*run)();
    double limit_s;
  };
  const Criterion criteria[] = {
      {"AC1", tsui::ac1, 1.0},   {"AC2", tsui::ac2, 5.0},    {"AC3", tsui::ac3, 0.0},
      {"AC4", tsui::ac4, 0.0},   {"AC5", tsui::ac5, 120.0},  {"AC6", tsui::ac6, 60.0},
      {"AC7", tsui::ac7, 120.0}, {"AC8", tsui::ac8, 0.0},    {"AC9", tsui::ac9, 0.0}};
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    tsui::Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = tsui::fmt("%.2f s", dt);
    if (c.limit_s > 0.0) {
      timing += tsui::fmt(" (limit %.0f s)", c.limit_s);
      v.pass = v.pass && dt < c.limit_s;
    }
    std::printf("%s %s  %s  [%s]\n", c.id, v.pass ? "PASS" : "FAIL", v.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
    if (!v.pass && !unattainable.count(c.id)) ++unexpected;
  }
  for (const auto& id : unattainable) {
    std::printf("note: %s is listed as unattainable and does not affect the exit status\n",
                id.c_str());
  }
  return unexpected == 0 ? 0 : 1;
}
