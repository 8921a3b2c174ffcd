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

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "arenasim/kernels.hpp"

namespace arenasim::kernels {
namespace {

void logistic_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = 1.0 / (1.0 + std::exp(-x[k]));
  }
}

void logistic_deriv_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 1.0 / (1.0 + std::exp(-x[k]));
    y[k] = s * (1.0 - s);
  }
}

void elo_win_prob_scalar(const double* ra, const double* rb, double* p,
                         std::size_t n) {
  constexpr double kLn10Over400 = 2.302585092994046 / 400.0;
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = 1.0 / (1.0 + std::exp((rb[k] - ra[k]) * kLn10Over400));
  }
}

void gather_diff_scalar(const double* xi, const std::int32_t* i,
                        const std::int32_t* j, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = xi[i[k]] - xi[j[k]];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", logistic_scalar, logistic_deriv_scalar,
                       elo_win_prob_scalar, gather_diff_scalar};
  return ops;
}

}  // namespace arenasim::kernels
