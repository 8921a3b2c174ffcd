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

#include "arenasim/deanon.hpp"

#include <algorithm>
#include <utility>

namespace arenasim {
namespace {

bool is_recognized(const OracleConfig& cfg, ModelId id) {
  if (cfg.recognized.empty()) return true;
  return std::find(cfg.recognized.begin(), cfg.recognized.end(), id) !=
         cfg.recognized.end();
}

// Uniform draw over recognized models, optionally excluding one.
ModelId random_recognized(const OracleConfig& cfg, ModelId exclude, Rng& rng) {
  const auto& pool = cfg.recognized;
  if (pool.empty()) {
    throw ConfigError("noisy oracle needs a recognized-model set");
  }
  const bool has_exclude =
      exclude >= 0 && std::find(pool.begin(), pool.end(), exclude) != pool.end();
  const std::size_t n = pool.size() - (has_exclude ? 1 : 0);
  if (n == 0) return exclude;
  std::size_t pick = rng.below(n);
  for (const ModelId m : pool) {
    if (m == exclude) continue;
    if (pick == 0) return m;
    --pick;
  }
  return pool.back();
}

}  // namespace

void validate(const OracleConfig& cfg, int num_models) {
  if (cfg.anonymous_fraction < 0.0 || cfg.anonymous_fraction > 1.0) {
    throw ConfigError("oracle anonymous fraction must be in [0, 1]");
  }
  if (cfg.accuracy < 0.0 || cfg.accuracy > 1.0) {
    throw ConfigError("oracle accuracy must be in [0, 1]");
  }
  if (cfg.mode == OracleConfig::Mode::kBinaryTarget &&
      (cfg.target < 0 || cfg.target >= num_models)) {
    throw ConfigError("binary-target oracle needs a valid target model");
  }
  if (cfg.recognized.empty()) {
    throw ConfigError("oracle recognized set must be nonempty");
  }
  for (const ModelId m : cfg.recognized) {
    if (m < 0 || m >= num_models) {
      throw ConfigError("oracle recognized set references unknown model");
    }
  }
}

IdentityGuess predict_identity(const OracleConfig& cfg, ModelId true_id,
                               Rng& rng) {
  switch (cfg.mode) {
    case OracleConfig::Mode::kPerfect:
      return IdentityGuess{true_id, false};
    case OracleConfig::Mode::kAnonymousFraction:
      if (rng.bernoulli(cfg.anonymous_fraction)) {
        return IdentityGuess{-1, true};
      }
      return IdentityGuess{true_id, false};
    case OracleConfig::Mode::kNoisyMulticlass: {
      if (!is_recognized(cfg, true_id)) {
        // Outside the classification range: the guess is a uniform
        // recognized model and never the truth.
        return IdentityGuess{random_recognized(cfg, -1, rng), false};
      }
      if (rng.bernoulli(cfg.accuracy)) {
        return IdentityGuess{true_id, false};
      }
      return IdentityGuess{random_recognized(cfg, true_id, rng), false};
    }
    case OracleConfig::Mode::kBinaryTarget: {
      const bool correct = rng.bernoulli(cfg.accuracy);
      const bool is_target = true_id == cfg.target;
      const bool says_target = correct == is_target;
      // The binary oracle only ever names the target; a "not target" answer
      // carries no identity.
      return IdentityGuess{says_target ? cfg.target : -1, false};
    }
  }
  return IdentityGuess{};
}

std::pair<IdentityGuess, IdentityGuess> predict_battle(const OracleConfig& cfg,
                                                       ModelId true_a,
                                                       ModelId true_b,
                                                       Rng& rng) {
  if (cfg.mode == OracleConfig::Mode::kAnonymousFraction &&
      rng.bernoulli(cfg.anonymous_fraction)) {
    return {IdentityGuess{-1, true}, IdentityGuess{-1, true}};
  }
  OracleConfig per_side = cfg;
  if (per_side.mode == OracleConfig::Mode::kAnonymousFraction) {
    per_side.mode = OracleConfig::Mode::kPerfect;
  }
  IdentityGuess ga = predict_identity(per_side, true_a, rng);
  IdentityGuess gb = predict_identity(per_side, true_b, rng);
  return {ga, gb};
}

}  // namespace arenasim
