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

#ifndef ARENASIM_RNG_HPP_
#define ARENASIM_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace arenasim {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard and we avoid std::*_distribution (whose mappings are
// implementation-defined), so identical seeds give identical streams on any
// conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n > 0.
  std::uint64_t below(std::uint64_t n) {
    // Lemire multiply-shift with rejection for exact uniformity.
    __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<__uint128_t>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Sample an index from a cumulative weight table (cdf.back() is the total).
  std::size_t discrete_cdf(std::span<const double> cdf) {
    const double u = next_double() * cdf.back();
    std::size_t lo = 0, hi = cdf.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf[mid] <= u) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  // Derive an independent child stream; stable in (parent seed, stream id).
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace arenasim

#endif  // ARENASIM_RNG_HPP_
