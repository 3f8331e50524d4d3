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

#if defined(__aarch64__)

#include <arm_neon.h>

namespace tsui::simd::neon {
namespace {

void axpy(double* out, const double* x, const double* y, double a,
          std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vx = vld1q_f64(x + i);
    float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(out + i, vaddq_f64(vx, vmulq_f64(va, vy)));
  }
  for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void mix_pair(double* p, double* c, const double* z1, const double* z2,
              double l11, double l21, double l22, std::size_t n) {
  const float64x2_t v11 = vdupq_n_f64(l11);
  const float64x2_t v21 = vdupq_n_f64(l21);
  const float64x2_t v22 = vdupq_n_f64(l22);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t a = vld1q_f64(z1 + i);
    float64x2_t b = vld1q_f64(z2 + i);
    vst1q_f64(p + i, vmulq_f64(v11, a));
    vst1q_f64(c + i, vaddq_f64(vmulq_f64(v21, a), vmulq_f64(v22, b)));
  }
  for (; i < n; ++i) {
    p[i] = l11 * z1[i];
    c[i] = l21 * z1[i] + l22 * z2[i];
  }
}

void scaled_product_add(double* out, const double* coef, const double* x,
                        double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(vld1q_f64(coef + i), vld1q_f64(x + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vmulq_f64(va, prod)));
  }
  for (; i < n; ++i) out[i] += a * (coef[i] * x[i]);
}

Dot2 dot2(const double* x, const double* u, const double* v, std::size_t n) {
  float64x2_t su = vdupq_n_f64(0.0), sv = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vx = vld1q_f64(x + i);
    su = vfmaq_f64(su, vx, vld1q_f64(u + i));
    sv = vfmaq_f64(sv, vx, vld1q_f64(v + i));
  }
  Dot2 r{vaddvq_f64(su), vaddvq_f64(sv)};
  for (; i < n; ++i) {
    r.first += x[i] * u[i];
    r.second += x[i] * v[i];
  }
  return r;
}

PairMoments pair_moments(const double* x, const double* y, std::size_t n) {
  float64x2_t sx = vdupq_n_f64(0.0), sy = vdupq_n_f64(0.0);
  float64x2_t sxx = vdupq_n_f64(0.0), syy = vdupq_n_f64(0.0);
  float64x2_t sxy = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vx = vld1q_f64(x + i);
    float64x2_t vy = vld1q_f64(y + i);
    sx = vaddq_f64(sx, vx);
    sy = vaddq_f64(sy, vy);
    sxx = vfmaq_f64(sxx, vx, vx);
    syy = vfmaq_f64(syy, vy, vy);
    sxy = vfmaq_f64(sxy, vx, vy);
  }
  PairMoments m{vaddvq_f64(sx), vaddvq_f64(sy), vaddvq_f64(sxx),
                vaddvq_f64(syy), vaddvq_f64(sxy)};
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

const KernelTable kTable{Level::kNeon, axpy, mix_pair, scaled_product_add,
                         dot2, pair_moments};

}  // namespace tsui::simd::neon

#endif
