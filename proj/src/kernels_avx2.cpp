// Copyright 2026 The arenasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <cstddef>
#include <cstdint>

#include "arenasim/kernels.hpp"

#if defined(__AVX2__)

#include <experimental/simd>

namespace arenasim::kernels {
namespace {

namespace stdx = std::experimental;
using vdouble = stdx::native_simd<double>;
constexpr std::size_t kLanes = vdouble::size();

void logistic_avx2(const double* x, double* y, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    vdouble v(&x[k], stdx::element_aligned);
    v = 1.0 / (1.0 + stdx::exp(-v));
    v.copy_to(&y[k], stdx::element_aligned);
  }
  for (; k < n; ++k) {
    y[k] = 1.0 / (1.0 + std::exp(-x[k]));
  }
}

void logistic_deriv_avx2(const double* x, double* y, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    vdouble v(&x[k], stdx::element_aligned);
    const vdouble s = 1.0 / (1.0 + stdx::exp(-v));
    (s * (1.0 - s)).copy_to(&y[k], stdx::element_aligned);
  }
  for (; k < n; ++k) {
    const double s = 1.0 / (1.0 + std::exp(-x[k]));
    y[k] = s * (1.0 - s);
  }
}

void elo_win_prob_avx2(const double* ra, const double* rb, double* p,
                       std::size_t n) {
  constexpr double kLn10Over400 = 2.302585092994046 / 400.0;
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    vdouble a(&ra[k], stdx::element_aligned);
    vdouble b(&rb[k], stdx::element_aligned);
    const vdouble v = 1.0 / (1.0 + stdx::exp((b - a) * kLn10Over400));
    v.copy_to(&p[k], stdx::element_aligned);
  }
  for (; k < n; ++k) {
    p[k] = 1.0 / (1.0 + std::exp((rb[k] - ra[k]) * kLn10Over400));
  }
}

void gather_diff_avx2(const double* xi, const std::int32_t* i,
                      const std::int32_t* j, double* out, std::size_t n) {
  // Index gathers stay scalar; the arithmetic is what vectorizes elsewhere.
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = xi[i[k]] - xi[j[k]];
  }
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{"avx2", logistic_avx2, logistic_deriv_avx2,
                       elo_win_prob_avx2, gather_diff_avx2};
  return __builtin_cpu_supports("avx2") ? &ops : nullptr;
}

}  // namespace arenasim::kernels

#else  // !defined(__AVX2__)

namespace arenasim::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace arenasim::kernels

#endif
