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

#include "tsui/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

// Functions carry a target attribute instead of the whole file being built
// with -mavx2, so no AVX2 code can leak into inline functions shared with the
// baseline translation units.
#define TSUI_AVX2 __attribute__((target("avx2,fma")))

namespace tsui::simd::avx2 {
namespace {

TSUI_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Elementwise kernels use mul + add (never FMA) to match the scalar rounding.

TSUI_AVX2 void axpy(double* out, const double* x, const double* y, double a,
                    std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(vx, _mm256_mul_pd(va, vy)));
  }
  for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

TSUI_AVX2 void mix_pair(double* p, double* c, const double* z1,
                        const double* z2, double l11, double l21, double l22,
                        std::size_t n) {
  const __m256d v11 = _mm256_set1_pd(l11);
  const __m256d v21 = _mm256_set1_pd(l21);
  const __m256d v22 = _mm256_set1_pd(l22);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(z1 + i);
    __m256d b = _mm256_loadu_pd(z2 + i);
    _mm256_storeu_pd(p + i, _mm256_mul_pd(v11, a));
    _mm256_storeu_pd(c + i, _mm256_add_pd(_mm256_mul_pd(v21, a),
                                          _mm256_mul_pd(v22, b)));
  }
  for (; i < n; ++i) {
    p[i] = l11 * z1[i];
    c[i] = l21 * z1[i] + l22 * z2[i];
  }
}

TSUI_AVX2 void scaled_product_add(double* out, const double* coef,
                                  const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(coef + i),
                                 _mm256_loadu_pd(x + i));
    __m256d o = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(o, _mm256_mul_pd(va, prod)));
  }
  for (; i < n; ++i) out[i] += a * (coef[i] * x[i]);
}

TSUI_AVX2 Dot2 dot2(const double* x, const double* u, const double* v,
                    std::size_t n) {
  __m256d su0 = _mm256_setzero_pd(), su1 = _mm256_setzero_pd();
  __m256d sv0 = _mm256_setzero_pd(), sv1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d x0 = _mm256_loadu_pd(x + i);
    __m256d x1 = _mm256_loadu_pd(x + i + 4);
    su0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(u + i), su0);
    su1 = _mm256_fmadd_pd(x1, _mm256_loadu_pd(u + i + 4), su1);
    sv0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(v + i), sv0);
    sv1 = _mm256_fmadd_pd(x1, _mm256_loadu_pd(v + i + 4), sv1);
  }
  Dot2 r{hsum(_mm256_add_pd(su0, su1)), hsum(_mm256_add_pd(sv0, sv1))};
  for (; i < n; ++i) {
    r.first += x[i] * u[i];
    r.second += x[i] * v[i];
  }
  return r;
}

TSUI_AVX2 PairMoments pair_moments(const double* x, const double* y,
                                   std::size_t n) {
  __m256d sx = _mm256_setzero_pd(), sy = _mm256_setzero_pd();
  __m256d sxx = _mm256_setzero_pd(), syy = _mm256_setzero_pd();
  __m256d sxy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    sx = _mm256_add_pd(sx, vx);
    sy = _mm256_add_pd(sy, vy);
    sxx = _mm256_fmadd_pd(vx, vx, sxx);
    syy = _mm256_fmadd_pd(vy, vy, syy);
    sxy = _mm256_fmadd_pd(vx, vy, sxy);
  }
  PairMoments m{hsum(sx), hsum(sy), hsum(sxx), hsum(syy), hsum(sxy)};
  for (; i < n; ++i) {
    m.sum_x += x[i];
    m.sum_y += y[i];
    m.sum_xx += x[i] * x[i];
    m.sum_yy += y[i] * y[i];
    m.sum_xy += x[i] * y[i];
  }
  return m;
}

}  // namespace

const KernelTable kTable{Level::kAvx2, axpy, mix_pair, scaled_product_add,
                         dot2, pair_moments};

}  // namespace tsui::simd::avx2

#endif
