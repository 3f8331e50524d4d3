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

#include "tsui/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tsui/errors.hpp"
#include "tsui/simd/kernels.hpp"

namespace tsui {
namespace {

// Branches lighter than this are dropped after a loss channel.
constexpr double kBranchFloor = 1e-32;

double branch_weight(const FockBranch& b) {
  const simd::Dot2 d = simd::dot2(b.re, b.re, b.im);
  const simd::Dot2 e = simd::dot2(b.im, b.im, b.im);
  return d.first + e.first;
}

void check_truncation(const TruncationReport& r) {
  if (r.norm_deficit > kMaxNormDeficit) {
    throw TruncationError("Fock truncation at cutoff " +
                              std::to_string(r.cutoff) +
                              " loses too much probability (deficit " +
                              std::to_string(r.norm_deficit) + ")",
                          r.norm_deficit, r.cutoff);
  }
}

// Mass in the two outermost number layers of either mode, where the
// truncated generator and the raising operators are no longer exact.
double boundary_mass(const FockState& s) {
  const int n_max = s.cutoff();
  double mass = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      if (n >= n_max - 1 || m >= n_max - 1) mass += s.population(n, m);
    }
  }
  return mass;
}

// Tail of the Poisson distribution with mean alpha^2 beyond cutoff.
double coherent_tail(double alpha, int cutoff) {
  const double mu = alpha * alpha;
  if (mu == 0.0) return 0.0;
  double tail = 0.0;
  for (int n = cutoff + 1; n < cutoff + 400; ++n) {
    const double log_p = -mu + n * std::log(mu) - std::lgamma(n + 1.0);
    const double p = std::exp(log_p);
    tail += p;
    if (p < 1e-30 * tail && n > mu) break;
  }
  return tail;
}

// out += h * K x for the real antisymmetric generator
// K = a^dagger b^dagger - a b on the flattened (n, m) grid. Both terms are
// shifts by stride N + 2 with precomputed coefficient tables.
struct Generator {
  std::size_t stride;
  std::vector<double> down;  // sqrt(n m): |n-1, m-1> -> |n, m>
  std::vector<double> up;    // sqrt((n+1)(m+1)): |n+1, m+1> -> |n, m>

  explicit Generator(const FockState& s)
      : stride(static_cast<std::size_t>(s.cutoff()) + 2),
        down(s.dim(), 0.0),
        up(s.dim(), 0.0) {
    const int n_max = s.cutoff();
    for (int n = 0; n <= n_max; ++n) {
      for (int m = 0; m <= n_max; ++m) {
        down[s.index(n, m)] = std::sqrt(static_cast<double>(n) * m);
        if (n < n_max && m < n_max) {
          up[s.index(n, m)] = std::sqrt((n + 1.0) * (m + 1.0));
        }
      }
    }
  }

  void apply_add(std::vector<double>& out, const std::vector<double>& x,
                 double h) const {
    const std::size_t n = x.size() - stride;
    const simd::KernelTable& k = simd::active();
    k.scaled_product_add(out.data() + stride, down.data() + stride, x.data(), h,
                         n);
    k.scaled_product_add(out.data(), up.data(), x.data() + stride, -h, n);
  }
};

void exp_generator(const Generator& gen, std::vector<double>& v, double r,
                   int n_max) {
  if (r == 0.0) return;
  // Infinity-norm bound of K is 2N; keep each step's h ||K|| <= 1 so the
  // Taylor series converges fast and without cancellation.
  const int steps = std::max(1, static_cast<int>(std::ceil(r * 2.0 * n_max)));
  const double h = r / steps;
  std::vector<double> term(v.size());
  std::vector<double> next(v.size());
  for (int s = 0; s < steps; ++s) {
    term = v;
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    for (int k = 1; k < 60; ++k) {
      std::fill(next.begin(), next.end(), 0.0);
      gen.apply_add(next, term, h / k);
      term.swap(next);
      double biggest = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] += term[i];
        biggest = std::max(biggest, std::abs(term[i]));
      }
      if (biggest <= 1e-18 * scale) break;
    }
  }
}

// Applies a (lower) or a^dagger (raise) of one mode to a real vector;
// photons pushed past the cutoff are dropped.
void ladder(const FockState& s, Mode mode, bool raise,
            const std::vector<double>& x, std::vector<double>& out) {
  const int n_max = s.cutoff();
  std::fill(out.begin(), out.end(), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      const int k = mode == Mode::kProbe ? n : m;
      int src_n = n, src_m = m;
      double c;
      if (raise) {
        if (k == 0) continue;
        c = std::sqrt(static_cast<double>(k));
        (mode == Mode::kProbe ? src_n : src_m) -= 1;
      } else {
        if (k == n_max) continue;
        c = std::sqrt(k + 1.0);
        (mode == Mode::kProbe ? src_n : src_m) += 1;
      }
      out[s.index(n, m)] = c * x[s.index(src_n, src_m)];
    }
  }
}

}  // namespace

FockState::FockState(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 10) {
    throw DomainError("Fock cutoff must be >= 10, got " +
                      std::to_string(cutoff));
  }
  report_.cutoff = cutoff;
}

void FockState::add_branch(FockBranch branch) {
  if (branch.re.size() != dim() || branch.im.size() != dim()) {
    throw DomainError("Fock branch has the wrong dimension");
  }
  branches_.push_back(std::move(branch));
}

double FockState::trace() const {
  double t = 0.0;
  for (const auto& b : branches_) t += branch_weight(b);
  return t;
}

double FockState::population(int n, int m) const {
  const std::size_t i = index(n, m);
  double p = 0.0;
  for (const auto& b : branches_) p += b.re[i] * b.re[i] + b.im[i] * b.im[i];
  return p;
}

FockState build_seeded_tmss_fock(double gain, double alpha, int cutoff) {
  const InterferometerParams params(gain, 1.0, 1.0, alpha);
  FockState state(cutoff);
  FockBranch b{std::vector<double>(state.dim(), 0.0),
               std::vector<double>(state.dim(), 0.0)};
  const double mu = alpha * alpha;
  for (int n = 0; n <= cutoff; ++n) {
    if (mu == 0.0) {
      b.re[state.index(n, 0)] = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_c =
        -0.5 * mu + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0);
    b.re[state.index(n, 0)] = std::exp(log_c);
  }

  const Generator gen(state);
  const double r = params.squeezing();
  exp_generator(gen, b.re, r, cutoff);
  exp_generator(gen, b.im, r, cutoff);
  state.add_branch(std::move(b));

  TruncationReport report;
  report.cutoff = cutoff;
  report.norm_deficit = coherent_tail(alpha, cutoff) + boundary_mass(state);
  state.set_report(report);
  check_truncation(report);
  return state;
}

FockState apply_loss_fock(const FockState& state, double eta, Mode mode) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("transmission must lie in [0,1], got " +
                      std::to_string(eta));
  }
  check_truncation(state.report());
  if (eta == 1.0) return state;

  const int n_max = state.cutoff();
  // Kraus operator A_k |n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k) |n-k>.
  std::vector<double> coef((n_max + 1) * (n_max + 1), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(n - k + 1.0);
      coef[n * (n_max + 1) + k] = std::exp(0.5 * log_binom) *
                                  std::pow(eta, 0.5 * (n - k)) *
                                  std::pow(1.0 - eta, 0.5 * k);
    }
  }

  FockState out(n_max);
  for (const auto& src : state.branches()) {
    for (int k = 0; k <= n_max; ++k) {
      FockBranch b{std::vector<double>(state.dim(), 0.0),
                   std::vector<double>(state.dim(), 0.0)};
      for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n_max; ++m) {
          const int lost_from = mode == Mode::kProbe ? n : m;
          if (lost_from < k) continue;
          const double c = coef[lost_from * (n_max + 1) + k];
          const std::size_t to = mode == Mode::kProbe ? state.index(n - k, m)
                                                      : state.index(n, m - k);
          b.re[to] = c * src.re[state.index(n, m)];
          b.im[to] = c * src.im[state.index(n, m)];
        }
      }
      if (branch_weight(b) > kBranchFloor) out.add_branch(std::move(b));
    }
  }
  out.set_report(state.report());
  return out;
}

FockState apply_phase_shift_fock(const FockState& state, double dphi) {
  const int n_max = state.cutoff();
  FockState out(n_max);
  for (const auto& src : state.branches()) {
    FockBranch b = src;
    for (int n = 0; n <= n_max; ++n) {
      const double c = std::cos(dphi * n);
      const double s = std::sin(dphi * n);
      for (int m = 0; m <= n_max; ++m) {
        const std::size_t i = state.index(n, m);
        b.re[i] = c * src.re[i] - s * src.im[i];
        b.im[i] = s * src.re[i] + c * src.im[i];
      }
    }
    out.add_branch(std::move(b));
  }
  out.set_report(state.report());
  return out;
}

GaussianState oracle_moments(const FockState& state) {
  check_truncation(state.report());
  const std::size_t dim = state.dim();
  Eigen::Vector4d first = Eigen::Vector4d::Zero();
  Eigen::Matrix4d second = Eigen::Matrix4d::Zero();

  std::vector<double> lo(dim), hi(dim);
  // re / im parts of X_p psi, Y_p psi, X_c psi, Y_c psi.
  std::array<std::vector<double>, 4> qre, qim;
  for (auto& v : qre) v.resize(dim);
  for (auto& v : qim) v.resize(dim);

  for (const auto& b : state.branches()) {
    for (int mode_i = 0; mode_i < 2; ++mode_i) {
      const Mode mode = mode_i == 0 ? Mode::kProbe : Mode::kConjugate;
      const int x = 2 * mode_i;
      const int y = x + 1;
      for (int part = 0; part < 2; ++part) {
        const std::vector<double>& src = part == 0 ? b.re : b.im;
        ladder(state, mode, false, src, lo);
        ladder(state, mode, true, src, hi);
        auto& xq = part == 0 ? qre[x] : qim[x];
        for (std::size_t i = 0; i < dim; ++i) xq[i] = lo[i] + hi[i];
        // Y = -i (a - a^dagger): real part comes from the imaginary part of
        // (a - a^dagger) psi and vice versa.
        if (part == 0) {
          for (std::size_t i = 0; i < dim; ++i) qim[y][i] = -(lo[i] - hi[i]);
        } else {
          for (std::size_t i = 0; i < dim; ++i) qre[y][i] = lo[i] - hi[i];
        }
      }
    }
    for (int i = 0; i < 4; ++i) {
      first(i) += simd::dot2(b.re, qre[i], qre[i]).first +
                  simd::dot2(b.im, qim[i], qim[i]).first;
      for (int j = i; j < 4; ++j) {
        const double g = simd::dot2(qre[i], qre[j], qre[j]).first +
                         simd::dot2(qim[i], qim[j], qim[j]).first;
        second(i, j) += g;
        if (j != i) second(j, i) += g;
      }
    }
  }

  GaussianState out;
  out.mean = first;
  out.cov = second - first * first.transpose();
  return out;
}

double oracle_quadrature_variance(const FockState& state, double lambda) {
  const WeightedMeasurement m(lambda);
  return joint_quadrature_stats(oracle_moments(state), m).variance;
}

MomentSummary oracle_photon_moments(const FockState& state, Mode mode) {
  check_truncation(state.report());
  double s1 = 0.0, s2 = 0.0;
  for (int n = 0; n <= state.cutoff(); ++n) {
    for (int m = 0; m <= state.cutoff(); ++m) {
      const double k = mode == Mode::kProbe ? n : m;
      const double p = state.population(n, m);
      s1 += k * p;
      s2 += k * k * p;
    }
  }
  return {s1, s2 - s1 * s1};
}

double oracle_photon_variance(const FockState& state, Mode mode) {
  return oracle_photon_moments(state, mode).var_n;
}

}  // namespace tsui
