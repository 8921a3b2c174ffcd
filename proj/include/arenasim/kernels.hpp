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

#ifndef ARENASIM_KERNELS_HPP_
#define ARENASIM_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace arenasim::kernels {

// Data-parallel inner loops of the rating solver and the vote filter.
// Scalar reference implementations are the semantic ground truth; the AVX2
// variants must agree within 4 ulps and are selected at runtime when the CPU
// supports them.
struct Ops {
  const char* name;
  // y[i] = 1 / (1 + exp(-x[i]))
  void (*logistic)(const double* x, double* y, std::size_t n);
  // y[i] = sigma(x[i]) * (1 - sigma(x[i])), the logistic derivative
  void (*logistic_deriv)(const double* x, double* y, std::size_t n);
  // p[i] = 1 / (1 + 10^((rb[i] - ra[i]) / 400)), the Elo win-rate curve
  void (*elo_win_prob)(const double* ra, const double* rb, double* p,
                       std::size_t n);
  // out[k] = xi[i[k]] - xi[j[k]], pairwise rating gaps for a packed pair list
  void (*gather_diff)(const double* xi, const std::int32_t* i,
                      const std::int32_t* j, double* out, std::size_t n);
};

const Ops& scalar_ops();
// Null when the build or the CPU lacks AVX2.
const Ops* avx2_ops();

// The dispatch target used by the rest of the library.
const Ops& active_ops();
// Force a backend by name ("scalar", "avx2"); throws ConfigError on an
// unknown or unavailable name. Intended for tests and the CLI --backend flag.
void force_backend(std::string_view name);

}  // namespace arenasim::kernels

#endif  // ARENASIM_KERNELS_HPP_
