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

#ifndef ARENASIM_DEANON_HPP_
#define ARENASIM_DEANON_HPP_

#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/rng.hpp"

namespace arenasim {

// Identity oracle standing in for a response classifier or watermark
// detector. Accuracy is realized stochastically per query.
struct OracleConfig {
  enum class Mode {
    kPerfect,
    kAnonymousFraction,  // whole battles hidden with probability p
    kNoisyMulticlass,    // correct with probability `accuracy`, else a
                         // uniform other recognized model
    kBinaryTarget,       // correct target / non-target label
  };
  Mode mode = Mode::kPerfect;
  double anonymous_fraction = 0.0;
  double accuracy = 1.0;
  ModelId target = -1;  // kBinaryTarget only
  // Models the oracle can name. Empty means all models are recognized; the
  // harness fills this with [0, K) by default.
  std::vector<ModelId> recognized;
};

struct IdentityGuess {
  ModelId guess = -1;  // -1 = Unknown
  bool truth_hidden = false;

  bool known() const { return guess >= 0; }
};

// One identity query. For kAnonymousFraction the battle-level coin is thrown
// by the caller (both sides share it); this call then only reveals or hides.
IdentityGuess predict_identity(const OracleConfig& cfg, ModelId true_id,
                               Rng& rng);

// Guesses for both sides of one battle. Under kAnonymousFraction a single
// coin hides the whole battle, so both sides are Unknown together.
std::pair<IdentityGuess, IdentityGuess> predict_battle(const OracleConfig& cfg,
                                                       ModelId true_a,
                                                       ModelId true_b,
                                                       Rng& rng);

void validate(const OracleConfig& cfg, int num_models);

}  // namespace arenasim

#endif  // ARENASIM_DEANON_HPP_
