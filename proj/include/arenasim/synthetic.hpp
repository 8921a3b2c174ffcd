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

#ifndef ARENASIM_SYNTHETIC_HPP_
#define ARENASIM_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "arenasim/votes.hpp"

namespace arenasim {

struct SyntheticSpec {
  int num_models = 20;
  double spacing = 25.0;  // Elo gap between adjacent models; index 0 weakest
  std::int64_t num_votes = 50000;
  double tie_rate = 0.3;
  std::uint64_t seed = 1;
};

// True generating strengths on the Elo scale: 1000 + spacing * index.
std::vector<double> synthetic_true_scores(const SyntheticSpec& spec);

// A history of uniform-pair battles whose outcomes follow the logistic win
// model at the true strengths, with a flat tie rate. Model names are
// "model-00", "model-01", ...
VoteSet make_synthetic_history(const SyntheticSpec& spec);

}  // namespace arenasim

#endif  // ARENASIM_SYNTHETIC_HPP_
