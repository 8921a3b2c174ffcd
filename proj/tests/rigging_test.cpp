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

#include <array>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "arenasim/common.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/rng.hpp"
#include "arenasim/sampling.hpp"
#include "arenasim/synthetic.hpp"
#include "arenasim/votes.hpp"

using namespace arenasim;

namespace {

IdentityGuess known(ModelId m) { return IdentityGuess{m, false}; }
IdentityGuess unknown() { return IdentityGuess{-1, true}; }

RatingVector from_scores(std::vector<double> scores) {
  RatingVector r;
  r.scores = std::move(scores);
  r.natural.resize(r.scores.size());
  r.component.assign(r.scores.size(), 0);
  for (std::size_t i = 0; i < r.scores.size(); ++i) {
    r.natural[i] = (r.scores[i] - kEloOffset) / kEloScale;
  }
  return r;
}

// Cold-refit evaluation of every candidate vote set; the reference the
// incremental strategy must agree with.
VoteOutcome exhaustive_bt_choice(const VoteSet& votes, ModelId a, ModelId b,
                                 ModelId t, OmniBtObjective objective) {
  const ModelId reference =
      omni_bt_reference(fit_bt(votes, {.tolerance = 1e-10}), t);
  double best = -1e300;
  VoteOutcome best_outcome = VoteOutcome::kAbstain;
  for (const VoteOutcome candidate : kCandidateOrder) {
    const VoteSet trial = append_vote(votes, a, b, candidate);
    const double value = omni_bt_objective(
        fit_bt(trial, {.tolerance = 1e-10}), t, objective, reference);
    if (value > best + 1e-9) {
      best = value;
      best_outcome = candidate;
    }
  }
  return best_outcome;
}

}  // namespace

TEST_CASE("target-only always backs the target when a guess names it") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 400,
                                               .seed = 1});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  Rng rng(2);
  for (const PassiveMode passive :
       {PassiveMode::kTie, PassiveMode::kAbstain, PassiveMode::kRandom,
        PassiveMode::kNormal}) {
    const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                             .target = 2,
                             .passive = passive};
    CHECK(manipulate_target_only(cfg, known(2), known(0), 2, 0, outcomes,
                                 ratings, rng)
              .outcome == VoteOutcome::kAWins);
    CHECK(manipulate_target_only(cfg, known(1), known(2), 1, 2, outcomes,
                                 ratings, rng)
              .outcome == VoteOutcome::kBWins);
  }
}

TEST_CASE("target-only abstain passive abstains on off-target battles") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 400,
                                               .seed = 1});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                           .target = 2,
                           .passive = PassiveMode::kAbstain};
  Rng rng(3);
  CHECK(manipulate_target_only(cfg, known(0), known(1), 0, 1, outcomes,
                               ratings, rng)
            .outcome == VoteOutcome::kAbstain);
  CHECK(manipulate_target_only(cfg, known(0), known(3), 0, 3, outcomes,
                               ratings, rng)
            .outcome == VoteOutcome::kAbstain);
}

TEST_CASE("target-only random passive is uniform over the active options") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 400,
                                               .seed = 1});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                           .target = 2,
                           .passive = PassiveMode::kRandom};
  Rng rng(4);
  std::array<int, 4> freq{};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const VoteDecision d = manipulate_target_only(cfg, known(0), known(1), 0,
                                                  1, outcomes, ratings, rng);
    ++freq[static_cast<int>(d.outcome)];
  }
  CHECK(freq[static_cast<int>(VoteOutcome::kAbstain)] == 0);
  for (const VoteOutcome o :
       {VoteOutcome::kAWins, VoteOutcome::kBWins, VoteOutcome::kTie}) {
    CHECK(std::abs(freq[static_cast<int>(o)] / double(trials) - 1.0 / 3.0) <
          0.01);
  }
}

TEST_CASE("relative objective is the margin over the next rank up") {
  const RatingVector r = from_scores({1200.0, 1100.0, 1000.0});
  CHECK(omni_bt_objective(r, 2, OmniBtObjective::kRelative) ==
        doctest::Approx(-100.0));
}

TEST_CASE("relative objective at rank one falls back to the runner-up") {
  const RatingVector r = from_scores({1200.0, 1100.0});
  CHECK(omni_bt_objective(r, 0, OmniBtObjective::kRelative) ==
        doctest::Approx(100.0));
}

TEST_CASE("absolute objective is the target's own score") {
  const RatingVector r = from_scores({1200.0, 1100.0, 1000.0});
  CHECK(omni_bt_objective(r, 1, OmniBtObjective::kAbsolute) ==
        doctest::Approx(1100.0));
}

TEST_CASE("incremental omni decisions match cold-start refits") {
  // Small instances, every decision cross-checked against the exhaustive
  // cold-refit argmax over the four candidate vote sets.
  Rng meta(1000);
  for (int instance = 0; instance < 10; ++instance) {
    const int k = 4 + static_cast<int>(meta.below(3));
    const VoteSet hist =
        make_synthetic_history({.num_models = k,
                                .num_votes = 100 + std::int64_t(meta.below(200)),
                                .seed = 5000 + std::uint64_t(instance)});
    const StrategyConfig cfg{
        .kind = StrategyConfig::Kind::kOmniBt,
        .target = static_cast<ModelId>(meta.below(std::uint64_t(k))),
        .bt_objective = instance % 2 ? OmniBtObjective::kAbsolute
                                     : OmniBtObjective::kRelative};
    OmniBtStrategy strategy(hist, cfg, {.tolerance = 1e-10});
    VoteSet mirror = hist;
    Rng rng(instance);
    for (int step = 0; step < 10; ++step) {
      const ModelId a = static_cast<ModelId>(rng.below(std::uint64_t(k)));
      ModelId b = static_cast<ModelId>(rng.below(std::uint64_t(k) - 1));
      if (b >= a) ++b;
      const VoteDecision d = strategy.decide(known(a), known(b));
      CHECK(d.outcome ==
            exhaustive_bt_choice(mirror, a, b, cfg.target, cfg.bt_objective));
      strategy.observe(d.outcome);
      mirror = append_vote(mirror, a, b, d.outcome);
    }
  }
}

TEST_CASE("omni never votes against a recognized target") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 300,
                                               .seed = 77});
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniBt,
                           .target = 1,
                           .bt_objective = OmniBtObjective::kRelative};
  OmniBtStrategy strategy(hist, cfg, {.tolerance = 1e-10});
  for (ModelId opp = 0; opp < 4; ++opp) {
    if (opp == 1) continue;
    const VoteDecision d = strategy.decide(known(1), known(opp));
    CHECK(d.outcome != VoteOutcome::kBWins);
  }
}

TEST_CASE("omni falls back to abstain when identities are unknown") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 300,
                                               .seed = 78});
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniBt, .target = 1};
  OmniBtStrategy strategy(hist, cfg, {});
  CHECK(strategy.decide(unknown(), unknown()).outcome ==
        VoteOutcome::kAbstain);
  CHECK(strategy.decide(unknown(), known(2)).outcome == VoteOutcome::kAbstain);
}

TEST_CASE("online omni beats abstain whenever some option scores higher") {
  // Target below both opponents; any vote that drags an opponent down beats
  // doing nothing.
  RatingVector snapshot = from_scores({950.0, 1100.0, 1080.0});
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn,
                           .target = 0,
                           .on_objective = OmniOnObjective::kAvgWinRate,
                           .mu = 4.0};
  const VoteDecision d = manipulate_omni_on(snapshot, known(1), known(2), cfg);
  const double abstain_value =
      d.objective_values[static_cast<int>(VoteOutcome::kAbstain)];
  const double chosen_value =
      d.objective_values[static_cast<int>(d.outcome)];
  CHECK(chosen_value >= abstain_value);
  for (const double v : d.objective_values) {
    CHECK(chosen_value >= v - 1e-12);
  }
}

TEST_CASE("online omni backs the target in its own battles") {
  RatingVector snapshot = from_scores({950.0, 1100.0, 1080.0});
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn,
                           .target = 0,
                           .on_objective = OmniOnObjective::kAvgWinRate,
                           .mu = 4.0};
  const VoteDecision d = manipulate_omni_on(snapshot, known(0), known(1), cfg);
  CHECK(d.outcome == VoteOutcome::kAWins);
}

TEST_CASE("the zero-step option always equals the no-op baseline") {
  RatingVector snapshot = from_scores({1000.0, 1050.0, 990.0});
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn,
                           .target = 2,
                           .on_objective = OmniOnObjective::kAvgWinRate,
                           .mu = 4.0};
  const VoteDecision d = manipulate_omni_on(snapshot, known(0), known(1), cfg);
  const double baseline = win_rate(snapshot.scores[2], snapshot.scores[0]) +
                          win_rate(snapshot.scores[2], snapshot.scores[1]);
  CHECK(d.objective_values[static_cast<int>(VoteOutcome::kAbstain)] ==
        doctest::Approx(baseline).epsilon(1e-12));
}

TEST_CASE("local updates change the snapshot only when enabled") {
  const RatingVector base = from_scores({1000.0, 1050.0, 990.0});
  StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn,
                     .target = 2,
                     .on_objective = OmniOnObjective::kAvgWinRate,
                     .mu = 4.0};
  RatingVector frozen = base;
  manipulate_omni_on(frozen, known(0), known(1), cfg);
  CHECK(frozen.scores == base.scores);

  cfg.update_local = true;
  RatingVector tracked = base;
  const VoteDecision d = manipulate_omni_on(tracked, known(0), known(1), cfg);
  if (d.outcome != VoteOutcome::kAbstain) {
    CHECK((tracked.scores[0] != base.scores[0] ||
           tracked.scores[1] != base.scores[1]));
  }
  CHECK(tracked.scores[2] == base.scores[2]);
}

TEST_CASE("min and max online objectives differ from the average") {
  RatingVector snapshot = from_scores({950.0, 1200.0, 960.0});
  StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn,
                     .target = 0,
                     .mu = 8.0};
  for (const OmniOnObjective obj :
       {OmniOnObjective::kAvgWinRate, OmniOnObjective::kMinWinRate,
        OmniOnObjective::kMaxWinRate}) {
    cfg.on_objective = obj;
    RatingVector snap = snapshot;
    const VoteDecision d = manipulate_omni_on(snap, known(1), known(2), cfg);
    const double chosen = d.objective_values[static_cast<int>(d.outcome)];
    for (const double v : d.objective_values) CHECK(chosen >= v - 1e-12);
  }
}

TEST_CASE("normal mix at zero passes decisions through") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 400,
                                               .seed = 9});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                           .target = 0,
                           .normal_mix = 0.0};
  Rng rng(10);
  VoteDecision d;
  d.outcome = VoteOutcome::kBWins;
  CHECK(apply_normal_mix(cfg, d, outcomes, 1, 2, ratings, rng).outcome ==
        VoteOutcome::kBWins);
}

TEST_CASE("normal mix replaces at the configured rate") {
  const VoteSet hist = make_synthetic_history({.num_models = 4,
                                               .num_votes = 400,
                                               .seed = 9});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                           .target = 0,
                           .normal_mix = 0.2};
  Rng rng(11);
  int replaced = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    VoteDecision d;
    d.outcome = VoteOutcome::kAbstain;  // normal votes are never Abstain
    if (apply_normal_mix(cfg, d, outcomes, 1, 2, ratings, rng).outcome !=
        VoteOutcome::kAbstain) {
      ++replaced;
    }
  }
  CHECK(std::abs(replaced / double(trials) - 0.2) < 0.01);
}

TEST_CASE("full normal mix is distributed like normal voting") {
  const VoteSet hist = make_synthetic_history({.num_models = 3,
                                               .num_votes = 2000,
                                               .seed = 13});
  const OutcomeModel outcomes(hist);
  const RatingVector ratings = fit_bt(hist);
  const StrategyConfig cfg{.kind = StrategyConfig::Kind::kTargetOnly,
                           .target = 0,
                           .normal_mix = 1.0};
  Rng rng_mix(14), rng_normal(14);
  std::array<int, 4> mix_freq{}, normal_freq{};
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    VoteDecision d;
    d.outcome = VoteOutcome::kTie;
    ++mix_freq[static_cast<int>(
        apply_normal_mix(cfg, d, outcomes, 1, 2, ratings, rng_mix).outcome)];
    ++normal_freq[static_cast<int>(
        outcomes.sample(1, 2, ratings, rng_normal))];
  }
  for (int o = 0; o < 4; ++o) {
    CHECK(std::abs(mix_freq[o] / double(trials) -
                   normal_freq[o] / double(trials)) < 0.01);
  }
}

TEST_CASE("strategy validation rejects bad parameters") {
  StrategyConfig cfg{.kind = StrategyConfig::Kind::kOmniOn, .target = 1,
                     .mu = 0.0};
  CHECK_THROWS_AS(validate(cfg, 4), ConfigError);
  cfg = {.kind = StrategyConfig::Kind::kTargetOnly, .target = 9};
  CHECK_THROWS_AS(validate(cfg, 4), ConfigError);
  cfg = {.kind = StrategyConfig::Kind::kTargetOnly, .target = 1,
         .normal_mix = 1.5};
  CHECK_THROWS_AS(validate(cfg, 4), ConfigError);
}
