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
/// Brute-force truncated Fock-space model of the seeded two-mode squeezed
/// state and its losses. Slow and small, but it shares no formulas with the
/// covariance-matrix code, which is what makes it useful as a cross-check.

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "tsui/gaussian.hpp"

namespace tsui {

inline constexpr int kDefaultFockCutoff = 40;
/// Above this the state is refused with TruncationError.
inline constexpr double kMaxNormDeficit = 1e-4;
/// Above this results are still returned but flagged.
inline constexpr double kWarnNormDeficit = 1e-8;

struct TruncationReport {
  /// Estimated probability mass lost to the cutoff: the seed's coherent tail
  /// beyond N plus the mass sitting in the two outermost number layers.
  double norm_deficit = 0.0;
  int cutoff = 0;

  bool warn() const noexcept { return norm_deficit > kWarnNormDeficit; }
};

/// One unnormalized pure component, amplitudes indexed n * (N + 1) + m for
/// probe number n and conjugate number m.
struct FockBranch {
  std::vector<double> re;
  std::vector<double> im;
};

/// Mixture of pure branches over probe (x) conjugate number states. A pure
/// state has one branch; each lossy mode multiplies the count by at most
/// N + 1 (one branch per number of photons lost).
class FockState {
 public:
  /// Throws DomainError for cutoff < 10.
  explicit FockState(int cutoff);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(cutoff_ + 1) * (cutoff_ + 1);
  }
  std::size_t index(int n, int m) const noexcept {
    return static_cast<std::size_t>(n) * (cutoff_ + 1) + m;
  }

  const std::vector<FockBranch>& branches() const noexcept { return branches_; }
  void add_branch(FockBranch branch);

  /// Sum of |c|^2 over all branches.
  double trace() const;
  /// <n_p = n, n_c = m | rho | n_p = n, n_c = m>.
  double population(int n, int m) const;

  const TruncationReport& report() const noexcept { return report_; }
  void set_report(const TruncationReport& r) { report_ = r; }

 private:
  int cutoff_;
  std::vector<FockBranch> branches_;
  TruncationReport report_;
};

/// exp[r(a^dagger b^dagger - a b)] |alpha> (x) |0> with r = arccosh(sqrt(G)),
/// by Taylor-series exponentiation of the truncated generator. Throws
/// TruncationError when the norm deficit exceeds kMaxNormDeficit.
FockState build_seeded_tmss_fock(double gain, double alpha,
                                 int cutoff = kDefaultFockCutoff);

/// Amplitude-damping channel with transmission eta on one mode.
FockState apply_loss_fock(const FockState& state, double eta, Mode mode);

/// exp(i dphi n_p): rotates the probe quadratures by dphi.
FockState apply_phase_shift_fock(const FockState& state, double dphi);

/// Quadrature means and symmetrized covariance, same layout as GaussianState.
GaussianState oracle_moments(const FockState& state);

/// Variance of Y_p + lambda Y_c.
double oracle_quadrature_variance(const FockState& state, double lambda);

MomentSummary oracle_photon_moments(const FockState& state, Mode mode);
double oracle_photon_variance(const FockState& state, Mode mode);

}  // namespace tsui
