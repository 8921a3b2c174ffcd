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

#include "arenasim/rigging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arenasim {

VoteDecision::VoteDecision() {
  objective_values.fill(std::numeric_limits<double>::quiet_NaN());
}

void validate(const StrategyConfig& cfg, int num_models) {
  if (cfg.kind == StrategyConfig::Kind::kNone) return;
  if (cfg.target < 0 || cfg.target >= num_models) {
    throw ConfigError("strategy target model index out of range");
  }
  if (cfg.normal_mix < 0.0 || cfg.normal_mix > 1.0) {
    throw ConfigError("normal_mix must be in [0, 1]");
  }
  if (cfg.kind == StrategyConfig::Kind::kOmniOn && !(cfg.mu > 0.0)) {
    throw ConfigError("omni-on requires a positive step size mu");
  }
  if (cfg.kind == StrategyConfig::Kind::kOmniBt && cfg.cold_refit_every < 1) {
    throw ConfigError("omni-bt cold refit cadence must be >= 1");
  }
}

VoteDecision manipulate_target_only(const StrategyConfig& cfg,
                                    const IdentityGuess& a_guess,
                                    const IdentityGuess& b_guess,
                                    ModelId true_a, ModelId true_b,
                                    const OutcomeModel& outcomes,
                                    const RatingVector& ratings, Rng& rng) {
  VoteDecision decision;
  if (a_guess.known() && a_guess.guess == cfg.target) {
    decision.outcome = VoteOutcome::kAWins;
    return decision;
  }
  if (b_guess.known() && b_guess.guess == cfg.target) {
    decision.outcome = VoteOutcome::kBWins;
    return decision;
  }
  switch (cfg.passive) {
    case PassiveMode::kTie:
      decision.outcome = VoteOutcome::kTie;
      break;
    case PassiveMode::kAbstain:
      decision.outcome = VoteOutcome::kAbstain;
      break;
    case PassiveMode::kRandom: {
      constexpr VoteOutcome kActive[3] = {VoteOutcome::kAWins,
                                          VoteOutcome::kBWins,
                                          VoteOutcome::kTie};
      decision.outcome = kActive[rng.below(3)];
      break;
    }
    case PassiveMode::kNormal:
      decision.outcome = outcomes.sample(true_a, true_b, ratings, rng);
      break;
  }
  return decision;
}

ModelId omni_bt_reference(const RatingVector& ratings, ModelId t) {
  if (ratings.num_models() < 2) {
    throw DataError("omni-bt objective needs at least two models");
  }
  const auto table = ranking_table(ratings);
  std::size_t t_pos = table.size();
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (table[p].model == t) {
      t_pos = p;
      break;
    }
  }
  if (t_pos == table.size()) {
    throw DataError("omni-bt objective: target model is unrated");
  }
  // When the target leads, preserve the margin over the runner-up instead.
  return (t_pos == 0) ? table[1].model : table[t_pos - 1].model;
}

double omni_bt_objective(const RatingVector& ratings, ModelId t,
                         OmniBtObjective objective) {
  return omni_bt_objective(ratings, t, objective,
                           omni_bt_reference(ratings, t));
}

double omni_bt_objective(const RatingVector& ratings, ModelId t,
                         OmniBtObjective objective, ModelId reference) {
  if (ratings.num_models() < 2) {
    throw DataError("omni-bt objective needs at least two models");
  }
  if (objective == OmniBtObjective::kAbsolute) {
    return ratings.scores[t];
  }
  return ratings.scores[t] - ratings.scores[reference];
}

OmniBtStrategy::OmniBtStrategy(const VoteSet& historical,
                               const StrategyConfig& cfg,
                               const FitOptions& fit)
    : num_models_(historical.num_models()), cfg_(cfg), fit_opts_(fit) {
  counts_.resize(static_cast<std::size_t>(num_models_) * num_models_);
  for (int a = 0; a < num_models_; ++a) {
    for (int b = 0; b < num_models_; ++b) {
      counts_[static_cast<std::size_t>(a) * num_models_ + b] =
          historical.counts(a, b);
    }
  }
  fit_ = fit_bt_counts(num_models_, counts_, fit_opts_);
}

RatingVector OmniBtStrategy::refit(std::span<const std::int64_t> counts,
                                   bool warm) const {
  FitOptions opts = fit_opts_;
  opts.warm_start = warm ? &fit_.natural : nullptr;
  return fit_bt_counts(num_models_, counts, opts);
}

void OmniBtStrategy::apply(std::vector<std::int64_t>& counts, ModelId a,
                           ModelId b, VoteOutcome outcome) const {
  const auto k = static_cast<std::size_t>(num_models_);
  switch (outcome) {
    case VoteOutcome::kAWins:
      counts[static_cast<std::size_t>(a) * k + b] += 1;
      break;
    case VoteOutcome::kBWins:
      counts[static_cast<std::size_t>(b) * k + a] += 1;
      break;
    case VoteOutcome::kTie:
      counts[static_cast<std::size_t>(a) * k + b] += 1;
      counts[static_cast<std::size_t>(b) * k + a] += 1;
      break;
    case VoteOutcome::kAbstain:
      break;
  }
}

VoteDecision OmniBtStrategy::decide(const IdentityGuess& a_guess,
                                    const IdentityGuess& b_guess) {
  VoteDecision decision;
  pending_a_ = -1;
  pending_b_ = -1;
  if (!a_guess.known() || !b_guess.known() ||
      a_guess.guess == b_guess.guess) {
    // Anonymous (or self-contradictory) battle: abstain.
    decision.outcome = VoteOutcome::kAbstain;
    return decision;
  }
  const ModelId a = a_guess.guess;
  const ModelId b = b_guess.guess;

  ++decisions_;
  if (decisions_ % cfg_.cold_refit_every == 0) {
    fit_ = refit(counts_, /*warm=*/false);  // drift guard
  }

  // The relative objective measures every candidate against the model
  // currently one position ahead, so overtaking it counts as progress.
  const ModelId reference = omni_bt_reference(fit_, cfg_.target);
  double best = -std::numeric_limits<double>::infinity();
  VoteOutcome best_outcome = VoteOutcome::kAbstain;
  std::vector<std::int64_t> scratch;
  for (std::size_t c = 0; c < kCandidateOrder.size(); ++c) {
    const VoteOutcome candidate = kCandidateOrder[c];
    if (candidate == VoteOutcome::kAbstain) {
      candidate_fits_[c] = fit_;
    } else {
      scratch = counts_;
      apply(scratch, a, b, candidate);
      candidate_fits_[c] = refit(scratch, /*warm=*/true);
    }
    const double value = omni_bt_objective(candidate_fits_[c], cfg_.target,
                                           cfg_.bt_objective, reference);
    decision.objective_values[c] = value;
    if (value > best) {
      best = value;
      best_outcome = candidate;
    }
  }
  decision.outcome = best_outcome;
  pending_a_ = a;
  pending_b_ = b;
  return decision;
}

void OmniBtStrategy::observe(VoteOutcome cast) {
  if (pending_a_ < 0 || cast == VoteOutcome::kAbstain) {
    return;
  }
  apply(counts_, pending_a_, pending_b_, cast);
  for (std::size_t c = 0; c < kCandidateOrder.size(); ++c) {
    if (kCandidateOrder[c] == cast) {
      fit_ = candidate_fits_[c];
      return;
    }
  }
}

namespace {

double omni_on_value(const RatingVector& snapshot, ModelId t, ModelId a,
                     ModelId b, double gamma, double mu,
                     OmniOnObjective objective) {
  const OnlinePair on = online_update(snapshot, a, b, gamma, mu);
  // When the target itself is in the battle its own term drops out and the
  // comparison reference tracks its online value instead of the snapshot.
  double r_t = snapshot.scores[t];
  if (a == t) r_t = on.r_a_on;
  if (b == t) r_t = on.r_b_on;
  const double wa = win_rate(r_t, on.r_a_on);
  const double wb = win_rate(r_t, on.r_b_on);
  if (a == t || b == t) {
    return a == t ? wb : wa;
  }
  switch (objective) {
    case OmniOnObjective::kAvgWinRate:
      return wa + wb;
    case OmniOnObjective::kMinWinRate:
      return std::min(wa, wb);
    case OmniOnObjective::kMaxWinRate:
      return std::max(wa, wb);
  }
  return 0.0;
}

}  // namespace

VoteDecision manipulate_omni_on(RatingVector& snapshot,
                                const IdentityGuess& a_guess,
                                const IdentityGuess& b_guess,
                                const StrategyConfig& cfg) {
  VoteDecision decision;
  if (!a_guess.known() || !b_guess.known() ||
      a_guess.guess == b_guess.guess) {
    decision.outcome = VoteOutcome::kAbstain;
    return decision;
  }
  const ModelId a = a_guess.guess;
  const ModelId b = b_guess.guess;
  // (gamma, mu) per candidate: a-wins (1, mu), b-wins (0, mu), tie (0.5, mu),
  // abstain (mu = 0).
  const double gammas[4] = {1.0, 0.0, 0.5, 0.5};
  const double mus[4] = {cfg.mu, cfg.mu, cfg.mu, 0.0};
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_c = 3;
  for (std::size_t c = 0; c < kCandidateOrder.size(); ++c) {
    const double value = omni_on_value(snapshot, cfg.target, a, b, gammas[c],
                                       mus[c], cfg.on_objective);
    decision.objective_values[c] = value;
    if (value > best) {
      best = value;
      best_c = c;
    }
  }
  decision.outcome = kCandidateOrder[best_c];
  if (cfg.update_local) {
    const OnlinePair on =
        online_update(snapshot, a, b, gammas[best_c], mus[best_c]);
    snapshot.scores[a] = on.r_a_on;
    snapshot.scores[b] = on.r_b_on;
  }
  return decision;
}

VoteDecision apply_normal_mix(const StrategyConfig& cfg, VoteDecision decision,
                              const OutcomeModel& outcomes, ModelId true_a,
                              ModelId true_b, const RatingVector& ratings,
                              Rng& rng) {
  if (cfg.normal_mix > 0.0 && rng.bernoulli(cfg.normal_mix)) {
    VoteDecision normal;
    normal.outcome = outcomes.sample(true_a, true_b, ratings, rng);
    return normal;
  }
  return decision;
}

}  // namespace arenasim
