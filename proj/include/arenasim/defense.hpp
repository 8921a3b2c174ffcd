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

#ifndef ARENASIM_DEFENSE_HPP_
#define ARENASIM_DEFENSE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/rng.hpp"
#include "arenasim/sampling.hpp"
#include "arenasim/votes.hpp"

namespace arenasim {

struct DefenseConfig {
  // Duplicate detection: a run of duplicate_eta identical options suspends
  // the user for suspension_length discarded votes. <= 0 disables.
  int duplicate_eta = 0;
  int suspension_length = 200;
  // Likelihood test: flag users whose mean log-probability under the normal
  // voting model falls below the alpha-quantile of simulated normal users.
  // alpha <= 0 disables.
  double likelihood_alpha = 0.0;
  int likelihood_min_history = 20;
  int likelihood_null_users = 1000;
  // Only the most recent window of a user's votes enters the statistic; this
  // bounds the null simulation cost at harness scale.
  int likelihood_window = 500;
  // Win-rate vote filtering threshold; 0 disables, else must be in (0.5, 1).
  double filter_tau = 0.0;
};

void validate(const DefenseConfig& cfg);

enum class GateResult { kAccept, kDiscard };

// Per-user duplicate-run tracking and suspension state.
class UserLedger {
 public:
  explicit UserLedger(const DefenseConfig& cfg) : cfg_(cfg) {}

  // Feed one observed option (Abstain included: it is a selectable option and
  // exactly what T-Abstain duplicates). Suspension consumes actual votes
  // only; abstains during suspension neither count nor decrement.
  GateResult gate(const std::string& user, VoteOutcome outcome);

  std::int64_t suspensions_started() const { return suspensions_started_; }

 private:
  struct UserState {
    VoteOutcome last = VoteOutcome::kAbstain;
    int run_length = 0;
    int suspension_remaining = 0;
  };
  DefenseConfig cfg_;
  std::unordered_map<std::string, UserState> users_;
  std::int64_t suspensions_started_ = 0;
};

// One entry of a user's non-abstain voting history.
struct UserVote {
  ModelId a;
  ModelId b;
  VoteOutcome outcome;
};

enum class FlagResult { kClear, kFlagged };

// Null-hypothesis test against the normal voting distribution. The statistic
// is the mean log-probability of the user's recent outcomes; thresholds come
// from seeded simulations of normal users and are cached per history length.
class LikelihoodDetector {
 public:
  LikelihoodDetector(const DefenseConfig& cfg, const OutcomeModel& null_model,
                     const PairDistribution& pair_dist,
                     const RatingVector& hist_ratings, std::uint64_t seed);

  FlagResult flag(const std::vector<UserVote>& history) const;
  // The statistic itself, exposed for calibration tests.
  double statistic(const std::vector<UserVote>& history) const;

 private:
  double threshold_for_length(int length) const;

  DefenseConfig cfg_;
  const OutcomeModel* null_model_;
  const PairDistribution* pair_dist_;
  const RatingVector* hist_ratings_;
  std::uint64_t seed_;
  mutable std::map<int, double> threshold_cache_;
};

// Algorithm-style win-rate filter: discard votes where the historical
// underdog is recorded winning with confidence above tau. Ties always pass;
// order is preserved.
VoteSet filter_votes(const VoteSet& collected, const RatingVector& hist_ratings,
                     double tau);

}  // namespace arenasim

#endif  // ARENASIM_DEFENSE_HPP_
