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

#include "arenasim/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace arenasim {
namespace {

// Index of unordered pair (a, b), a < b, in lexicographic pair order.
std::size_t pair_index(int num_models, ModelId a, ModelId b) {
  // offset of row a: a*K - a*(a+1)/2, then (b - a - 1)
  return static_cast<std::size_t>(a) * num_models -
         static_cast<std::size_t>(a) * (a + 1) / 2 + (b - a - 1);
}

}  // namespace

PairDistribution::PairDistribution(int num_models, std::vector<double> weights)
    : num_models_(num_models), weights_(std::move(weights)) {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (total <= 0.0) {
    throw ConfigError("pair distribution has no mass");
  }
  for (double& w : weights_) {
    w /= total;
  }
  cdf_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cdf_.begin());
}

PairDistribution PairDistribution::uniform(int num_models) {
  if (num_models < 2) {
    throw ConfigError("pair sampling requires at least two models");
  }
  const std::size_t pairs =
      static_cast<std::size_t>(num_models) * (num_models - 1) / 2;
  return PairDistribution(num_models, std::vector<double>(pairs, 1.0));
}

PairDistribution PairDistribution::target_scaled(int num_models, ModelId target,
                                                 double beta) {
  if (num_models < 3) {
    throw ConfigError("target-scaled sampling requires at least three models");
  }
  if (target < 0 || target >= num_models) {
    throw ConfigError("target-scaled sampling: target index out of range");
  }
  if (beta < 0.0 || beta > 1.0) {
    throw ConfigError("target-scaled sampling: beta must be in [0, 1]");
  }
  const std::size_t pairs =
      static_cast<std::size_t>(num_models) * (num_models - 1) / 2;
  const std::size_t target_pairs = num_models - 1;
  const std::size_t other_pairs = pairs - target_pairs;
  // Uniform gives each pair 1/pairs; the target marginal is then 2/K. Scale
  // target pairs by beta and push the deficit onto non-target pairs.
  const double target_w = beta / static_cast<double>(pairs);
  const double removed = (1.0 - beta) * static_cast<double>(target_pairs) /
                         static_cast<double>(pairs);
  const double other_w = 1.0 / static_cast<double>(pairs) +
                         removed / static_cast<double>(other_pairs);
  std::vector<double> weights(pairs, other_w);
  for (ModelId other = 0; other < num_models; ++other) {
    if (other == target) continue;
    const ModelId lo = std::min(target, other);
    const ModelId hi = std::max(target, other);
    weights[pair_index(num_models, lo, hi)] = target_w;
  }
  return PairDistribution(num_models, std::move(weights));
}

PairDistribution PairDistribution::empirical(const VoteSet& hist) {
  if (hist.records().empty()) {
    throw DataError("empirical pair distribution needs a nonempty history");
  }
  const int k = hist.num_models();
  const std::size_t pairs = static_cast<std::size_t>(k) * (k - 1) / 2;
  std::vector<double> weights(pairs, 0.0);
  for (const VoteRecord& r : hist.records()) {
    const ModelId lo = std::min(r.a, r.b);
    const ModelId hi = std::max(r.a, r.b);
    weights[pair_index(k, lo, hi)] += 1.0;
  }
  return PairDistribution(k, std::move(weights));
}

double PairDistribution::pair_probability(ModelId a, ModelId b) const {
  if (a == b) return 0.0;
  const ModelId lo = std::min(a, b);
  const ModelId hi = std::max(a, b);
  return weights_[pair_index(num_models_, lo, hi)];
}

std::pair<ModelId, ModelId> PairDistribution::sample(Rng& rng) const {
  const std::size_t idx = rng.discrete_cdf(cdf_);
  // Invert the lexicographic pair index.
  std::size_t offset = idx;
  ModelId a = 0;
  while (offset >= static_cast<std::size_t>(num_models_ - 1 - a)) {
    offset -= num_models_ - 1 - a;
    ++a;
  }
  const ModelId b = a + 1 + static_cast<ModelId>(offset);
  if (rng.bernoulli(0.5)) {
    return {b, a};
  }
  return {a, b};
}

OutcomeModel::OutcomeModel(const VoteSet& hist) {
  double ties = 0.0;
  double votes = 0.0;
  for (const VoteRecord& r : hist.records()) {
    const ModelId lo = std::min(r.a, r.b);
    const ModelId hi = std::max(r.a, r.b);
    PairStats& s = pair_stats_[{lo, hi}];
    if (r.outcome == VoteOutcome::kTie) {
      s.ties += 1.0;
      ties += 1.0;
    } else {
      const bool lo_won = (r.outcome == VoteOutcome::kAWins) == (r.a == lo);
      (lo_won ? s.a_wins : s.b_wins) += 1.0;
    }
    votes += 1.0;
  }
  global_tie_rate_ = votes > 0.0 ? ties / votes : 0.0;
}

const OutcomeModel::PairStats* OutcomeModel::stats_for(ModelId lo,
                                                       ModelId hi) const {
  auto it = pair_stats_.find({lo, hi});
  return it == pair_stats_.end() ? nullptr : &it->second;
}

double OutcomeModel::outcome_probability(ModelId a, ModelId b,
                                         VoteOutcome outcome,
                                         const RatingVector& ratings) const {
  if (outcome == VoteOutcome::kAbstain) return 0.0;
  const ModelId lo = std::min(a, b);
  const ModelId hi = std::max(a, b);
  if (const PairStats* s = stats_for(lo, hi)) {
    const double total = s->a_wins + s->b_wins + s->ties;
    double p = 0.0;
    switch (outcome) {
      case VoteOutcome::kAWins:
        p = (a == lo) ? s->a_wins : s->b_wins;
        break;
      case VoteOutcome::kBWins:
        p = (b == lo) ? s->a_wins : s->b_wins;
        break;
      default:
        p = s->ties;
        break;
    }
    return p / total;
  }
  // Rating backoff for unseen pairs.
  const double p_tie = global_tie_rate_;
  const double p_a = (1.0 - p_tie) * win_rate(ratings.scores[a],
                                              ratings.scores[b]);
  switch (outcome) {
    case VoteOutcome::kAWins:
      return p_a;
    case VoteOutcome::kBWins:
      return 1.0 - p_tie - p_a;
    default:
      return p_tie;
  }
}

VoteOutcome OutcomeModel::sample(ModelId a, ModelId b,
                                 const RatingVector& ratings, Rng& rng) const {
  if (a == b) {
    throw DataError("outcome model: a model cannot battle itself");
  }
  const double p_a = outcome_probability(a, b, VoteOutcome::kAWins, ratings);
  const double p_b = outcome_probability(a, b, VoteOutcome::kBWins, ratings);
  const double u = rng.next_double();
  if (u < p_a) return VoteOutcome::kAWins;
  if (u < p_a + p_b) return VoteOutcome::kBWins;
  return VoteOutcome::kTie;
}

}  // namespace arenasim
