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

#include "arenasim/defense.hpp"

#include <algorithm>
#include <cmath>

#include "arenasim/kernels.hpp"

namespace arenasim {

void validate(const DefenseConfig& cfg) {
  if (cfg.duplicate_eta > 0 && cfg.duplicate_eta < 2) {
    throw ConfigError("duplicate detection requires eta >= 2");
  }
  if (cfg.duplicate_eta > 0 && cfg.suspension_length < 1) {
    throw ConfigError("suspension length must be >= 1");
  }
  if (cfg.likelihood_alpha < 0.0 || cfg.likelihood_alpha >= 1.0) {
    throw ConfigError("likelihood alpha must be in [0, 1)");
  }
  if (cfg.filter_tau != 0.0 &&
      !(cfg.filter_tau > 0.5 && cfg.filter_tau < 1.0)) {
    throw ConfigError("filter tau must be in (0.5, 1) or 0 to disable");
  }
}

GateResult UserLedger::gate(const std::string& user, VoteOutcome outcome) {
  if (cfg_.duplicate_eta <= 0) {
    return GateResult::kAccept;
  }
  UserState& s = users_[user];
  if (s.suspension_remaining > 0) {
    if (outcome != VoteOutcome::kAbstain) {
      --s.suspension_remaining;
    }
    return GateResult::kDiscard;
  }
  if (s.run_length > 0 && outcome == s.last) {
    ++s.run_length;
  } else {
    s.run_length = 1;
    s.last = outcome;
  }
  if (s.run_length >= cfg_.duplicate_eta) {
    s.suspension_remaining = cfg_.suspension_length;
    s.run_length = 0;
    ++suspensions_started_;
    return GateResult::kDiscard;
  }
  return GateResult::kAccept;
}

LikelihoodDetector::LikelihoodDetector(const DefenseConfig& cfg,
                                       const OutcomeModel& null_model,
                                       const PairDistribution& pair_dist,
                                       const RatingVector& hist_ratings,
                                       std::uint64_t seed)
    : cfg_(cfg),
      null_model_(&null_model),
      pair_dist_(&pair_dist),
      hist_ratings_(&hist_ratings),
      seed_(seed) {}

double LikelihoodDetector::statistic(const std::vector<UserVote>& history) const {
  const std::size_t window = static_cast<std::size_t>(cfg_.likelihood_window);
  const std::size_t start =
      history.size() > window ? history.size() - window : 0;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = start; i < history.size(); ++i) {
    const UserVote& v = history[i];
    const double p = null_model_->outcome_probability(v.a, v.b, v.outcome,
                                                      *hist_ratings_);
    sum += std::log(std::max(p, 1e-300));
    ++n;
  }
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double LikelihoodDetector::threshold_for_length(int length) const {
  auto it = threshold_cache_.find(length);
  if (it != threshold_cache_.end()) {
    return it->second;
  }
  Rng rng(Rng::derive_seed(seed_, static_cast<std::uint64_t>(length)));
  std::vector<double> stats;
  stats.reserve(cfg_.likelihood_null_users);
  std::vector<UserVote> synthetic(length);
  for (int u = 0; u < cfg_.likelihood_null_users; ++u) {
    for (int i = 0; i < length; ++i) {
      const auto [a, b] = pair_dist_->sample(rng);
      synthetic[i] = UserVote{a, b,
                              null_model_->sample(a, b, *hist_ratings_, rng)};
    }
    stats.push_back(statistic(synthetic));
  }
  std::sort(stats.begin(), stats.end());
  const auto idx = static_cast<std::size_t>(
      cfg_.likelihood_alpha * static_cast<double>(stats.size()));
  const double threshold = stats[std::min(idx, stats.size() - 1)];
  threshold_cache_.emplace(length, threshold);
  return threshold;
}

FlagResult LikelihoodDetector::flag(const std::vector<UserVote>& history) const {
  if (static_cast<int>(history.size()) < cfg_.likelihood_min_history) {
    return FlagResult::kClear;  // too short to test
  }
  const int length = std::min(static_cast<int>(history.size()),
                              cfg_.likelihood_window);
  return statistic(history) < threshold_for_length(length)
             ? FlagResult::kFlagged
             : FlagResult::kClear;
}

VoteSet filter_votes(const VoteSet& collected, const RatingVector& hist_ratings,
                     double tau) {
  if (!(tau > 0.5 && tau < 1.0)) {
    throw ConfigError("filter tau must be in (0.5, 1)");
  }
  const auto& records = collected.records();
  const std::size_t n = records.size();
  std::vector<double> ra(n), rb(n), w_ab(n), w_ba(n);
  for (std::size_t i = 0; i < n; ++i) {
    ra[i] = hist_ratings.scores[records[i].a];
    rb[i] = hist_ratings.scores[records[i].b];
  }
  const auto& ops = kernels::active_ops();
  ops.elo_win_prob(ra.data(), rb.data(), w_ab.data(), n);
  ops.elo_win_prob(rb.data(), ra.data(), w_ba.data(), n);

  VoteSet out(collected.names());
  for (std::size_t i = 0; i < n; ++i) {
    const VoteRecord& r = records[i];
    const bool upset_b = r.outcome == VoteOutcome::kBWins && w_ab[i] > tau;
    const bool upset_a = r.outcome == VoteOutcome::kAWins && w_ba[i] > tau;
    if (upset_a || upset_b) {
      continue;  // discard for leaderboard updating
    }
    out.push_with_seq(r.a, r.b, r.outcome, r.user, r.seq);
  }
  return out;
}

}  // namespace arenasim
