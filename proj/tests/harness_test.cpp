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

#include "arenasim/harness.hpp"

#include <sstream>
#include <string>

#include <doctest.h>

#include "arenasim/common.hpp"
#include "arenasim/synthetic.hpp"

using namespace arenasim;

namespace {

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.split_fraction = 0.9;
  cfg.split_seed = 1;
  cfg.target_name = "model-03";
  cfg.strategy.kind = StrategyConfig::Kind::kTargetOnly;
  cfg.strategy.passive = PassiveMode::kAbstain;
  cfg.total_votes = 200;
  cfg.checkpoint_interval = 100;
  cfg.run_seed = 7;
  return cfg;
}

VoteSet small_history() {
  return make_synthetic_history({.num_models = 8,
                                 .num_votes = 3000,
                                 .seed = 5});
}

}  // namespace

TEST_CASE("config parsing reads flat key-value lines") {
  std::istringstream in(
      "dataset = votes.json\n"
      "# comment line\n"
      "strategy = omni_bt\n"
      "target = model-x\n"
      "total_votes = 500\n"
      "beta = 0.3\n"
      "sampling = target_scaled\n");
  const SimulationConfig cfg = parse_config(in);
  CHECK(cfg.dataset_path == "votes.json");
  CHECK(cfg.strategy.kind == StrategyConfig::Kind::kOmniBt);
  CHECK(cfg.target_name == "model-x");
  CHECK(cfg.total_votes == 500);
  CHECK(cfg.beta == 0.3);
  CHECK(cfg.sampling == SimulationConfig::SamplingKind::kTargetScaled);
}

TEST_CASE("unknown config keys are rejected") {
  std::istringstream in("strateg = omni_bt\n");
  CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("strateg"),
                       ConfigError);
}

TEST_CASE("malformed config values are rejected") {
  std::istringstream bad_int("total_votes = soon\n");
  CHECK_THROWS_AS(parse_config(bad_int), ConfigError);
  std::istringstream bad_line("total_votes\n");
  CHECK_THROWS_AS(parse_config(bad_line), ConfigError);
  std::istringstream bad_enum("strategy = sideways\n");
  CHECK_THROWS_AS(parse_config(bad_enum), ConfigError);
}

TEST_CASE("the config echo reparses to the same configuration") {
  SimulationConfig cfg = small_config();
  cfg.dataset_path = "votes.json";
  cfg.defense.filter_tau = 0.7;
  const std::string echo = config_echo(cfg);
  std::istringstream in(echo);
  const SimulationConfig back = parse_config(in);
  CHECK(config_echo(back) == echo);
}

TEST_CASE("omni strategies need matching historical access") {
  SimulationConfig cfg = small_config();
  cfg.strategy.kind = StrategyConfig::Kind::kOmniBt;
  cfg.strategy.target = 2;
  cfg.threat.hist_access = ThreatModel::HistAccess::kScoresOnly;
  CHECK_THROWS_AS(validate(cfg, 8), ConfigError);
  cfg.threat.hist_access = ThreatModel::HistAccess::kFullVotes;
  CHECK_NOTHROW(validate(cfg, 8));
}

TEST_CASE("zero new votes reproduces the initial fit") {
  SimulationConfig cfg = small_config();
  cfg.total_votes = 0;
  const SimulationReport report = run_simulation(cfg, small_history());
  CHECK(report.final_rank == report.initial_rank);
  CHECK(report.rank_increase == 0);
  CHECK(report.final_score == doctest::Approx(report.initial_score));
  CHECK(report.surviving_votes + report.discarded_votes +
            report.abstained_votes == 0);
}

TEST_CASE("identical config and seed produce byte-identical reports") {
  const SimulationConfig cfg = small_config();
  const VoteSet hist = small_history();
  std::ostringstream first, second;
  emit_report(run_simulation(cfg, hist), ReportFormat::kStructured, first);
  emit_report(run_simulation(cfg, hist), ReportFormat::kStructured, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("the three vote buckets account for every adversary action") {
  SimulationConfig cfg = small_config();
  cfg.defense.duplicate_eta = 5;
  cfg.threat.concurrent_votes = 100;
  const SimulationReport report = run_simulation(cfg, small_history());
  CHECK(report.surviving_votes + report.discarded_votes +
            report.abstained_votes == cfg.total_votes);
}

TEST_CASE("checkpoints are monotone and end at the final vote count") {
  const SimulationConfig cfg = small_config();
  const SimulationReport report = run_simulation(cfg, small_history());
  REQUIRE(!report.checkpoints.empty());
  CHECK(report.checkpoints.front().votes_cast == 0);
  CHECK(report.checkpoints.back().votes_cast == cfg.total_votes);
  for (std::size_t i = 1; i < report.checkpoints.size(); ++i) {
    CHECK(report.checkpoints[i].votes_cast >
          report.checkpoints[i - 1].votes_cast);
  }
  CHECK(report.rank_increase == report.initial_rank - report.final_rank);
}

TEST_CASE("a grid produces one report per value with derived seeds") {
  SimulationConfig base = small_config();
  base.sampling = SimulationConfig::SamplingKind::kTargetScaled;
  const VoteSet hist = small_history();
  const auto reports =
      run_grid(base, "beta", {0.0, 0.3, 0.5, 0.7, 0.9}, hist);
  CHECK(reports.size() == 5);
  for (const SimulationReport& r : reports) CHECK(r.error.empty());
  // Re-running the sweep gives identical cells.
  const auto again = run_grid(base, "beta", {0.0, 0.3, 0.5, 0.7, 0.9}, hist);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::ostringstream a, b;
    emit_report(reports[i], ReportFormat::kStructured, a);
    emit_report(again[i], ReportFormat::kStructured, b);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("an empty grid is an empty list") {
  const SimulationConfig base = small_config();
  CHECK(run_grid(base, "beta", {}).empty());
}

TEST_CASE("a failing grid cell is recorded without stopping the sweep") {
  SimulationConfig base = small_config();
  const VoteSet hist = small_history();
  const auto reports = run_grid(base, "tau", {0.7, 0.2, 0.8}, hist);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].error.empty());
  CHECK(!reports[1].error.empty());  // tau must stay in (0.5, 1)
  CHECK(reports[2].error.empty());
}

TEST_CASE("rank cells render final rank with the signed increase") {
  CHECK(format_rank_cell(84, 92) == "84 (+8)");
  CHECK(format_rank_cell(12, 12) == "12 (+0)");
  CHECK(format_rank_cell(15, 12) == "15 (-3)");
}

TEST_CASE("a structured report reloads with all fields intact") {
  SimulationConfig cfg = small_config();
  cfg.defense.duplicate_eta = 5;
  const SimulationReport report = run_simulation(cfg, small_history());
  std::stringstream buffer;
  emit_report(report, ReportFormat::kStructured, buffer);
  const SimulationReport back = load_structured_report(buffer);
  std::ostringstream a, b;
  emit_report(report, ReportFormat::kStructured, a);
  emit_report(back, ReportFormat::kStructured, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("the trajectory format is one checkpoint per line") {
  const SimulationReport report =
      run_simulation(small_config(), small_history());
  std::ostringstream out;
  emit_report(report, ReportFormat::kTrajectory, out);
  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "votes_cast,rank,score");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == report.checkpoints.size());
}

TEST_CASE("the table format leads with the rank cell") {
  const SimulationReport report =
      run_simulation(small_config(), small_history());
  std::ostringstream out;
  emit_report(report, ReportFormat::kTableText, out);
  const std::string text = out.str();
  CHECK(text.find("target: model-03") != std::string::npos);
  CHECK(text.find(format_rank_cell(report.final_rank, report.initial_rank)) !=
        std::string::npos);
}

TEST_CASE("an unknown target name is a data error") {
  SimulationConfig cfg = small_config();
  cfg.target_name = "model-99";
  CHECK_THROWS_AS(run_simulation(cfg, small_history()), DataError);
}
