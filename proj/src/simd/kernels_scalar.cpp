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

// Reference kernels. Plain loops, no contraction into FMA (the build passes
// -ffp-contract=off for this file) so the elementwise results define the
// bit pattern the vector versions must reproduce.

#include "tsui/simd/kernels.hpp"

namespace tsui::simd::scalar {
namespace {

void axpy(double* out, const double* x, const double* y, double a,
          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void mix_pair(double* p, double* c, const double* z1, const double* z2,
              double l11, double l21, double l22, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = l11 * z1[i];
    c[i] = l21 * z1[i] + l22 * z2[i];
  }
}

void scaled_product_add(double* out, const double* coef, const double* x,
                        double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a * (coef[i] * x[i]);
}

Dot2 dot2(const double* x, const double* u, const double* v, std::size_t n) {
  Dot2 r;
  for (std::size_t i = 0; i < n; ++i) {
    r.first += x[i] * u[i];
    r.second += x[i] * v[i];
  }
  return r;
}

PairMoments pair_moments(const double* x, const double* y, std::size_t n) {
  PairMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    m.sum_x += x[i];
    m.sum_y += y[i];
    m.sum_xx += x[i] * x[i];
    m.sum_yy += y[i] * y[i];
    m.sum_xy += x[i] * y[i];
  }
  return m;
}

}  // namespace

const KernelTable kTable{Level::kScalar, axpy, mix_pair, scaled_product_add,
                         dot2, pair_moments};

}  // namespace tsui::simd::scalar
