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

#include "arenasim/synthetic.hpp"

#include <cstdio>

#include "arenasim/ratings.hpp"
#include "arenasim/rng.hpp"

namespace arenasim {

std::vector<double> synthetic_true_scores(const SyntheticSpec& spec) {
  std::vector<double> scores(spec.num_models);
  for (int m = 0; m < spec.num_models; ++m) {
    scores[m] = 1000.0 + spec.spacing * m;
  }
  return scores;
}

VoteSet make_synthetic_history(const SyntheticSpec& spec) {
  if (spec.num_models < 2) {
    throw ConfigError("synthetic history needs at least two models");
  }
  std::vector<std::string> names;
  char buf[32];
  for (int m = 0; m < spec.num_models; ++m) {
    std::snprintf(buf, sizeof(buf), "model-%02d", m);
    names.emplace_back(buf);
  }
  VoteSet set(std::move(names));
  const std::vector<double> truth = synthetic_true_scores(spec);
  Rng rng(spec.seed);
  const auto k = static_cast<std::uint64_t>(spec.num_models);
  for (std::int64_t v = 0; v < spec.num_votes; ++v) {
    const auto a = static_cast<ModelId>(rng.below(k));
    auto b = static_cast<ModelId>(rng.below(k - 1));
    if (b >= a) ++b;
    VoteOutcome outcome;
    if (rng.bernoulli(spec.tie_rate)) {
      outcome = VoteOutcome::kTie;
    } else if (rng.bernoulli(win_rate(truth[a], truth[b]))) {
      outcome = VoteOutcome::kAWins;
    } else {
      outcome = VoteOutcome::kBWins;
    }
    set.push(a, b, outcome);
  }
  return set;
}

}  // namespace arenasim
