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
/// Data-parallel inner loops used by the simulator, the spectrum estimator
/// and the Fock-space oracle. Every kernel has a scalar reference version and
/// optional AVX2 / NEON versions; the active table is chosen once at startup
/// from CPU capabilities and may be overridden with the `TSUI_SIMD`
/// environment variable (`scalar`, `avx2`, `neon`).
///
/// Elementwise kernels (axpy, mix_pair, scaled_product_add) are bit-identical
/// across levels. Reductions (dot2, pair_moments) differ only in summation
/// order.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace tsui::simd {

enum class Level { kScalar, kAvx2, kNeon };

std::string_view level_name(Level level) noexcept;

struct Dot2 {
  double first = 0.0;
  double second = 0.0;
};

struct PairMoments {
  double sum_x = 0.0;
  double sum_y = 0.0;
  double sum_xx = 0.0;
  double sum_yy = 0.0;
  double sum_xy = 0.0;
};

struct KernelTable {
  Level level;
  // out[i] = x[i] + a * y[i]; out may alias x.
  void (*axpy)(double* out, const double* x, const double* y, double a,
               std::size_t n);
  // p[i] = l11 * z1[i];  c[i] = l21 * z1[i] + l22 * z2[i]
  void (*mix_pair)(double* p, double* c, const double* z1, const double* z2,
                   double l11, double l21, double l22, std::size_t n);
  // out[i] += a * (coef[i] * x[i])
  void (*scaled_product_add)(double* out, const double* coef, const double* x,
                             double a, std::size_t n);
  // (sum x[i] u[i], sum x[i] v[i])
  Dot2 (*dot2)(const double* x, const double* u, const double* v,
               std::size_t n);
  PairMoments (*pair_moments)(const double* x, const double* y, std::size_t n);
};

/// True when the level was compiled in and the running CPU supports it.
bool level_supported(Level level) noexcept;

/// Table for a specific level; throws DomainError if unsupported.
const KernelTable& kernels(Level level);

/// Table selected at startup (or by set_active_level).
const KernelTable& active();
Level active_level() noexcept;

/// Forces a level for the remainder of the process. Intended for tests and
/// benchmarks; not synchronized with concurrent kernel calls.
void set_active_level(Level level);

// Span front ends dispatching through active().

void axpy(std::span<double> out, std::span<const double> x,
          std::span<const double> y, double a);
void mix_pair(std::span<double> p, std::span<double> c,
              std::span<const double> z1, std::span<const double> z2,
              double l11, double l21, double l22);
void scaled_product_add(std::span<double> out, std::span<const double> coef,
                        std::span<const double> x, double a);
Dot2 dot2(std::span<const double> x, std::span<const double> u,
          std::span<const double> v);
PairMoments pair_moments(std::span<const double> x, std::span<const double> y);

namespace scalar {
extern const KernelTable kTable;
}
#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(__aarch64__)
namespace neon {
extern const KernelTable kTable;
}
#endif

}  // namespace tsui::simd
