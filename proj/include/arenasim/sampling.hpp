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

#ifndef ARENASIM_SAMPLING_HPP_
#define ARENASIM_SAMPLING_HPP_

#include <map>
#include <utility>
#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/rng.hpp"
#include "arenasim/votes.hpp"

namespace arenasim {

// Distribution over unordered model pairs. Uniform gives every model the
// marginal 2/K; TargetScaled rescales the target's marginal to beta * 2/K and
// spreads the removed mass uniformly over pairs not containing the target.
class PairDistribution {
 public:
  static PairDistribution uniform(int num_models);
  static PairDistribution target_scaled(int num_models, ModelId target,
                                        double beta);
  // Pair frequencies proportional to historical battle counts.
  static PairDistribution empirical(const VoteSet& hist);

  int num_models() const { return num_models_; }
  // Probability of the unordered pair {a, b}.
  double pair_probability(ModelId a, ModelId b) const;

  // Draw an unordered pair; side order is randomized. a != b.
  std::pair<ModelId, ModelId> sample(Rng& rng) const;

 private:
  PairDistribution(int num_models, std::vector<double> weights);

  int num_models_ = 0;
  std::vector<double> weights_;  // per pair index (a, b), a < b
  std::vector<double> cdf_;
};

// Empirical outcome frequencies per unordered historical pair, with a
// global-tie-rate + rating backoff for unseen pairs.
class OutcomeModel {
 public:
  explicit OutcomeModel(const VoteSet& hist);

  // Never returns Abstain.
  VoteOutcome sample(ModelId a, ModelId b, const RatingVector& ratings,
                     Rng& rng) const;
  // Probability of a specific (non-Abstain) outcome for the pair, under the
  // same law sample() draws from. Used by the likelihood defense.
  double outcome_probability(ModelId a, ModelId b, VoteOutcome outcome,
                             const RatingVector& ratings) const;

  double global_tie_rate() const { return global_tie_rate_; }

 private:
  struct PairStats {
    double a_wins = 0.0;  // wins of the lower-indexed model
    double b_wins = 0.0;
    double ties = 0.0;
  };
  const PairStats* stats_for(ModelId lo, ModelId hi) const;

  std::map<std::pair<ModelId, ModelId>, PairStats> pair_stats_;
  double global_tie_rate_ = 0.0;
};

}  // namespace arenasim

#endif  // ARENASIM_SAMPLING_HPP_
