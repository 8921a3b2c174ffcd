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

#ifndef ARENASIM_RIGGING_HPP_
#define ARENASIM_RIGGING_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/deanon.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/rng.hpp"
#include "arenasim/sampling.hpp"
#include "arenasim/votes.hpp"

namespace arenasim {

enum class PassiveMode { kTie, kAbstain, kRandom, kNormal };
enum class OmniBtObjective { kRelative, kAbsolute };
enum class OmniOnObjective { kAvgWinRate, kMinWinRate, kMaxWinRate };

struct StrategyConfig {
  enum class Kind { kNone, kTargetOnly, kOmniBt, kOmniOn };
  Kind kind = Kind::kNone;
  ModelId target = -1;
  PassiveMode passive = PassiveMode::kAbstain;
  OmniBtObjective bt_objective = OmniBtObjective::kRelative;
  OmniOnObjective on_objective = OmniOnObjective::kAvgWinRate;
  double mu = 4.0;            // online Elo step size, > 0 for OmniOn
  bool update_local = false;  // overwrite the Omni-On snapshot after deciding
  double normal_mix = 0.0;    // probability of casting a normal vote instead
  int cold_refit_every = 100; // Omni-BT drift guard
};

void validate(const StrategyConfig& cfg, int num_models);

// Candidate evaluation order is fixed: a-wins, b-wins, tie, abstain. Ties in
// the objective resolve to the earliest candidate.
inline constexpr std::array<VoteOutcome, 4> kCandidateOrder = {
    VoteOutcome::kAWins, VoteOutcome::kBWins, VoteOutcome::kTie,
    VoteOutcome::kAbstain};

struct VoteDecision {
  VoteOutcome outcome = VoteOutcome::kAbstain;
  // Objective per candidate in kCandidateOrder; NaN when not evaluated.
  std::array<double, 4> objective_values;

  VoteDecision();
};

// Target-only manipulation: vote for the target whenever a guess names it,
// otherwise take the configured passive option. true_a/true_b are only used
// to sample the T-Normal passive vote.
VoteDecision manipulate_target_only(const StrategyConfig& cfg,
                                    const IdentityGuess& a_guess,
                                    const IdentityGuess& b_guess,
                                    ModelId true_a, ModelId true_b,
                                    const OutcomeModel& outcomes,
                                    const RatingVector& ratings, Rng& rng);

// Rigging objective over a fitted rating vector: Relative is the score margin
// of the target over the model ranked one position ahead (the runner-up when
// the target leads); Absolute is the target's own score.
double omni_bt_objective(const RatingVector& ratings, ModelId t,
                         OmniBtObjective objective);

// The model ranked one position ahead of t (the runner-up when t leads).
ModelId omni_bt_reference(const RatingVector& ratings, ModelId t);

// Relative objective against a reference fixed before the candidate vote, so
// overtaking the reference reads as a gain rather than a reshuffled margin.
double omni_bt_objective(const RatingVector& ratings, ModelId t,
                         OmniBtObjective objective, ModelId reference);

// Omni-BT adversary state: a private copy of the vote set plus its running
// fit, refit incrementally per decision and cold-refit periodically.
class OmniBtStrategy {
 public:
  OmniBtStrategy(const VoteSet& historical, const StrategyConfig& cfg,
                 const FitOptions& fit);

  // Evaluates all four candidate vote sets and picks the argmax. Unknown
  // guesses fall back to Abstain. Does not change the local view.
  VoteDecision decide(const IdentityGuess& a_guess,
                      const IdentityGuess& b_guess);

  // Commit the vote that was actually cast for the last decided battle (it
  // may differ from the decision under normal_mix). Appends to the local
  // view under the guessed identities and updates the running fit.
  void observe(VoteOutcome cast);

  const RatingVector& local_fit() const { return fit_; }

 private:
  RatingVector refit(std::span<const std::int64_t> counts, bool warm) const;
  void apply(std::vector<std::int64_t>& counts, ModelId a, ModelId b,
             VoteOutcome outcome) const;

  int num_models_;
  std::vector<std::int64_t> counts_;
  StrategyConfig cfg_;
  FitOptions fit_opts_;
  RatingVector fit_;
  std::int64_t decisions_ = 0;
  ModelId pending_a_ = -1;  // guessed pair of the last decide()
  ModelId pending_b_ = -1;
  std::array<RatingVector, 4> candidate_fits_;
};

// Omni-On manipulation over a public score snapshot. With update_local the
// snapshot entries of the (guessed) battle models are overwritten with the
// online values after the decision.
VoteDecision manipulate_omni_on(RatingVector& snapshot,
                                const IdentityGuess& a_guess,
                                const IdentityGuess& b_guess,
                                const StrategyConfig& cfg);

// Defense evasion: with probability cfg.normal_mix replace the decision with
// a normal-user vote on the true pair.
VoteDecision apply_normal_mix(const StrategyConfig& cfg, VoteDecision decision,
                              const OutcomeModel& outcomes, ModelId true_a,
                              ModelId true_b, const RatingVector& ratings,
                              Rng& rng);

}  // namespace arenasim

#endif  // ARENASIM_RIGGING_HPP_
