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

#include <atomic>
#include <cstdlib>
#include <string>

#include "tsui/errors.hpp"
#include "tsui/simd/kernels.hpp"

namespace tsui::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level best_level() noexcept {
  if (level_supported(Level::kAvx2)) return Level::kAvx2;
  if (level_supported(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

Level initial_level() {
  const char* env = std::getenv("TSUI_SIMD");
  if (env != nullptr) {
    const std::string_view want(env);
    for (Level l : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
      if (want == level_name(l) && level_supported(l)) return l;
    }
  }
  return best_level();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&kernels(initial_level())};
  return slot;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("simd kernel: span lengths differ");
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

bool level_supported(Level level) noexcept {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return cpu_has_avx2();
#else
      return false;
#endif
    case Level::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Level level) {
  if (!level_supported(level)) {
    throw DomainError("simd level '" + std::string(level_name(level)) +
                      "' is not available on this CPU");
  }
  switch (level) {
#if defined(__x86_64__) || defined(__i386__)
    case Level::kAvx2:
      return avx2::kTable;
#endif
#if defined(__aarch64__)
    case Level::kNeon:
      return neon::kTable;
#endif
    default:
      return scalar::kTable;
  }
}

const KernelTable& active() {
  return *active_slot().load(std::memory_order_relaxed);
}

Level active_level() noexcept { return active().level; }

void set_active_level(Level level) {
  active_slot().store(&kernels(level), std::memory_order_relaxed);
}

void axpy(std::span<double> out, std::span<const double> x,
          std::span<const double> y, double a) {
  require_same_size(out.size(), x.size());
  require_same_size(out.size(), y.size());
  active().axpy(out.data(), x.data(), y.data(), a, out.size());
}

void mix_pair(std::span<double> p, std::span<double> c,
              std::span<const double> z1, std::span<const double> z2,
              double l11, double l21, double l22) {
  require_same_size(p.size(), c.size());
  require_same_size(p.size(), z1.size());
  require_same_size(p.size(), z2.size());
  active().mix_pair(p.data(), c.data(), z1.data(), z2.data(), l11, l21, l22,
                    p.size());
}

void scaled_product_add(std::span<double> out, std::span<const double> coef,
                        std::span<const double> x, double a) {
  require_same_size(out.size(), coef.size());
  require_same_size(out.size(), x.size());
  active().scaled_product_add(out.data(), coef.data(), x.data(), a,
                              out.size());
}

Dot2 dot2(std::span<const double> x, std::span<const double> u,
          std::span<const double> v) {
  require_same_size(x.size(), u.size());
  require_same_size(x.size(), v.size());
  return active().dot2(x.data(), u.data(), v.data(), x.size());
}

PairMoments pair_moments(std::span<const double> x,
                         std::span<const double> y) {
  require_same_size(x.size(), y.size());
  return active().pair_moments(x.data(), y.data(), x.size());
}

}  // namespace tsui::simd
