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

#ifndef ARENASIM_HARNESS_HPP_
#define ARENASIM_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "arenasim/common.hpp"
#include "arenasim/deanon.hpp"
#include "arenasim/defense.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/rigging.hpp"
#include "arenasim/votes.hpp"

namespace arenasim {

// The adversary's accessibility axes: historical-vote access, identity
// access, sampling-distribution knowledge, and concurrent voters.
struct ThreatModel {
  enum class HistAccess { kFullVotes, kScoresOnly };
  HistAccess hist_access = HistAccess::kFullVotes;
  bool real_name = true;      // false => identities come through the oracle
  OracleConfig oracle;
  bool sampling_known = true; // descriptive; echoed into reports
  std::int64_t concurrent_votes = 0;
};

struct SimulationConfig {
  std::string dataset_path;
  std::vector<std::string> model_filter;  // empty keeps every model
  double split_fraction = 0.9;
  std::uint64_t split_seed = 1;

  ThreatModel threat;

  enum class SamplingKind { kUniform, kTargetScaled, kEmpirical };
  SamplingKind sampling = SamplingKind::kUniform;
  double beta = 1.0;  // TargetScaled marginal factor

  // strategy.target is resolved from target_name after the dataset loads.
  StrategyConfig strategy;
  std::string target_name;

  DefenseConfig defense;

  std::int64_t total_votes = 1000;
  std::int64_t checkpoint_interval = 500;
  std::uint64_t run_seed = 1;
  int num_accounts = 1;  // rigged votes rotate over this many user tags

  FitOptions fit;
};

// Flat key = value configuration, one pair per line, '#' comments. Unknown
// keys are errors.
SimulationConfig parse_config(std::istream& in);
SimulationConfig parse_config_file(const std::string& path);
std::string config_echo(const SimulationConfig& cfg);
// Throws ConfigError on invalid combinations (e.g. Omni-BT without
// full-vote access) before any work happens.
void validate(const SimulationConfig& cfg, int num_models);

struct CheckpointRow {
  std::int64_t votes_cast = 0;
  int target_rank = 0;
  double target_score = 0.0;
  // The model ranked one position ahead of the target at this checkpoint
  // (runner-up when the target leads) and its rank.
  ModelId ahead_model = -1;
  int ahead_rank = 0;
};

struct DefenseStats {
  std::int64_t duplicate_discarded = 0;
  std::int64_t suspensions = 0;
  std::int64_t filter_discarded = 0;
  std::vector<std::string> flagged_users;
  std::int64_t flagged_votes_excluded = 0;
};

struct FinalRow {
  std::string name;
  double score = 0.0;
  int rank = 0;
};

struct SimulationReport {
  std::string config;  // canonical key=value echo
  std::string target_name;
  std::int64_t checkpoint_interval = 0;
  int initial_rank = 0;
  int final_rank = 0;
  int rank_increase = 0;  // initial - final; positive = promotion
  double initial_score = 0.0;
  double final_score = 0.0;
  std::vector<CheckpointRow> checkpoints;
  std::vector<FinalRow> final_table;
  DefenseStats defense;
  // Conservation buckets over the N adversary actions.
  std::int64_t surviving_votes = 0;
  std::int64_t discarded_votes = 0;
  std::int64_t abstained_votes = 0;
  std::string error;  // nonempty when a sweep cell failed
};

SimulationReport run_simulation(const SimulationConfig& cfg);
// Same loop on a pre-parsed dataset (the dataset path is ignored).
SimulationReport run_simulation(const SimulationConfig& cfg,
                                const VoteSet& dataset);

// Parameter sweep along one axis; each cell gets an independent seed derived
// from the base run seed. Cell failures are recorded, not propagated.
SimulationReport run_sweep_cell(const SimulationConfig& base,
                                const std::string& axis, double value,
                                std::size_t cell_index);
std::vector<SimulationReport> run_grid(const SimulationConfig& base,
                                       const std::string& axis,
                                       const std::vector<double>& values);
std::vector<SimulationReport> run_grid(const SimulationConfig& base,
                                       const std::string& axis,
                                       const std::vector<double>& values,
                                       const VoteSet& dataset);

enum class ReportFormat { kTableText, kTrajectory, kStructured };
void emit_report(const SimulationReport& report, ReportFormat format,
                 std::ostream& out);
// Reload of the structured (JSON) form; round-trips all fields.
SimulationReport load_structured_report(std::istream& in);

// "84 (+8)" presentation of a final rank against the initial one.
std::string format_rank_cell(int final_rank, int initial_rank);

}  // namespace arenasim

#endif  // ARENASIM_HARNESS_HPP_
