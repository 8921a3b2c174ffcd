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

#ifndef ARENASIM_RATINGS_HPP_
#define ARENASIM_RATINGS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/votes.hpp"

namespace arenasim {

// Elo display scale: scores = kEloScale * xi + kEloOffset. With this mapping
// the Elo win-rate curve equals the natural-units sigmoid exactly.
inline constexpr double kEloScale = 400.0 / 2.302585092994046;  // 400/ln 10
inline constexpr double kEloOffset = 1000.0;

// Fitted strengths for all K models. Models with zero comparisons carry
// xi = 0, component -1, and are excluded from rankings.
struct RatingVector {
  std::vector<double> scores;   // Elo-like display scale
  std::vector<double> natural;  // xi, natural-log units
  std::vector<int> component;   // connected component id, -1 if unrated
  std::string anchor;
  bool converged = false;
  int iterations = 0;

  int num_models() const { return static_cast<int>(scores.size()); }
  bool rated(ModelId m) const { return component[m] >= 0; }
};

struct FitOptions {
  double tolerance = 1e-9;  // gradient max-norm stopping threshold
  int max_iterations = 500;
  // Optional warm start in natural units; size K when set.
  const std::vector<double>* warm_start = nullptr;
};

// Probability that a rating-x model beats a rating-y model:
// W(x, y) = 1 / (1 + 10^((y - x) / 400)).
double win_rate(double x, double y);

// Maximum-likelihood Bradley-Terry fit of the average BCE loss over all
// directed comparisons, by damped Newton in natural units with a mean-zero
// anchor per connected component. Deterministic for fixed inputs.
RatingVector fit_bt(const VoteSet& set, const FitOptions& opts = {});

// Same fit from a bare K x K directed-counts matrix (row-major). This is the
// entry point for strategies that perturb counts without materializing
// records.
RatingVector fit_bt_counts(int num_models, std::span<const std::int64_t> counts,
                           const FitOptions& opts = {});

// One online Elo step for a battle between a and b. gamma is 1 / 0 / 0.5 for
// a-wins / b-wins / tie; mu = 0 leaves both ratings unchanged (abstain).
struct OnlinePair {
  double r_a_on = 0.0;
  double r_b_on = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
};
OnlinePair online_update(const RatingVector& scores, ModelId a, ModelId b,
                         double gamma, double mu);

// 1 + the number of rated models with a strictly higher score.
int rank_of(const RatingVector& scores, ModelId t);

struct RankedEntry {
  ModelId model;
  double score;
  int rank;
};
// Rated models sorted by descending score; equal scores tie-break by index.
std::vector<RankedEntry> ranking_table(const RatingVector& scores);

// One model per line: name, score to 6 decimals, rank.
void export_ratings(const RatingVector& scores, const VoteSet& set,
                    std::ostream& out);

}  // namespace arenasim

#endif  // ARENASIM_RATINGS_HPP_
