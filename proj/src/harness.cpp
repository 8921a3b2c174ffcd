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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "arenasim/rng.hpp"
#include "arenasim/sampling.hpp"

namespace arenasim {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v +
                    "'");
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      v + "'");
  }
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::int64_t x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream stream(v);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const char* strategy_name(const StrategyConfig& s) {
  switch (s.kind) {
    case StrategyConfig::Kind::kNone:
      return "none";
    case StrategyConfig::Kind::kTargetOnly:
      switch (s.passive) {
        case PassiveMode::kTie:
          return "t_tie";
        case PassiveMode::kAbstain:
          return "t_abstain";
        case PassiveMode::kRandom:
          return "t_random";
        case PassiveMode::kNormal:
          return "t_normal";
      }
      return "t_abstain";
    case StrategyConfig::Kind::kOmniBt:
      return "omni_bt";
    case StrategyConfig::Kind::kOmniOn:
      return "omni_on";
  }
  return "none";
}

void set_strategy(StrategyConfig& s, const std::string& v) {
  if (v == "none") {
    s.kind = StrategyConfig::Kind::kNone;
  } else if (v == "t_tie" || v == "t_abstain" || v == "t_random" ||
             v == "t_normal") {
    s.kind = StrategyConfig::Kind::kTargetOnly;
    if (v == "t_tie") s.passive = PassiveMode::kTie;
    if (v == "t_abstain") s.passive = PassiveMode::kAbstain;
    if (v == "t_random") s.passive = PassiveMode::kRandom;
    if (v == "t_normal") s.passive = PassiveMode::kNormal;
  } else if (v == "omni_bt") {
    s.kind = StrategyConfig::Kind::kOmniBt;
  } else if (v == "omni_on") {
    s.kind = StrategyConfig::Kind::kOmniOn;
  } else {
    throw ConfigError("unknown strategy '" + v + "'");
  }
}

}  // namespace

SimulationConfig parse_config(std::istream& in) {
  SimulationConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "dataset") {
      cfg.dataset_path = value;
    } else if (key == "models") {
      cfg.model_filter = split_list(value);
    } else if (key == "split_fraction") {
      cfg.split_fraction = parse_double(value, key);
    } else if (key == "split_seed") {
      cfg.split_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "hist_access") {
      if (value == "full") {
        cfg.threat.hist_access = ThreatModel::HistAccess::kFullVotes;
      } else if (value == "scores") {
        cfg.threat.hist_access = ThreatModel::HistAccess::kScoresOnly;
      } else {
        throw ConfigError("hist_access must be 'full' or 'scores'");
      }
    } else if (key == "identity") {
      if (value == "real") {
        cfg.threat.real_name = true;
      } else if (value == "anonymous") {
        cfg.threat.real_name = false;
      } else {
        throw ConfigError("identity must be 'real' or 'anonymous'");
      }
    } else if (key == "oracle_mode") {
      if (value == "perfect") {
        cfg.threat.oracle.mode = OracleConfig::Mode::kPerfect;
      } else if (value == "anonymous_fraction") {
        cfg.threat.oracle.mode = OracleConfig::Mode::kAnonymousFraction;
      } else if (value == "noisy_multiclass") {
        cfg.threat.oracle.mode = OracleConfig::Mode::kNoisyMulticlass;
      } else if (value == "binary_target") {
        cfg.threat.oracle.mode = OracleConfig::Mode::kBinaryTarget;
      } else {
        throw ConfigError("unknown oracle_mode '" + value + "'");
      }
    } else if (key == "oracle_anonymous_fraction") {
      cfg.threat.oracle.anonymous_fraction = parse_double(value, key);
    } else if (key == "oracle_accuracy") {
      cfg.threat.oracle.accuracy = parse_double(value, key);
    } else if (key == "sampling_known") {
      cfg.threat.sampling_known = parse_bool(value, key);
    } else if (key == "concurrent_votes") {
      cfg.threat.concurrent_votes = parse_int(value, key);
    } else if (key == "sampling") {
      if (value == "uniform") {
        cfg.sampling = SimulationConfig::SamplingKind::kUniform;
      } else if (value == "target_scaled") {
        cfg.sampling = SimulationConfig::SamplingKind::kTargetScaled;
      } else if (value == "empirical") {
        cfg.sampling = SimulationConfig::SamplingKind::kEmpirical;
      } else {
        throw ConfigError("unknown sampling kind '" + value + "'");
      }
    } else if (key == "beta") {
      cfg.beta = parse_double(value, key);
    } else if (key == "strategy") {
      set_strategy(cfg.strategy, value);
    } else if (key == "target") {
      cfg.target_name = value;
    } else if (key == "bt_objective") {
      if (value == "relative") {
        cfg.strategy.bt_objective = OmniBtObjective::kRelative;
      } else if (value == "absolute") {
        cfg.strategy.bt_objective = OmniBtObjective::kAbsolute;
      } else {
        throw ConfigError("bt_objective must be 'relative' or 'absolute'");
      }
    } else if (key == "on_objective") {
      if (value == "avg") {
        cfg.strategy.on_objective = OmniOnObjective::kAvgWinRate;
      } else if (value == "min") {
        cfg.strategy.on_objective = OmniOnObjective::kMinWinRate;
      } else if (value == "max") {
        cfg.strategy.on_objective = OmniOnObjective::kMaxWinRate;
      } else {
        throw ConfigError("on_objective must be 'avg', 'min' or 'max'");
      }
    } else if (key == "mu") {
      cfg.strategy.mu = parse_double(value, key);
    } else if (key == "update_local") {
      cfg.strategy.update_local = parse_bool(value, key);
    } else if (key == "normal_mix") {
      cfg.strategy.normal_mix = parse_double(value, key);
    } else if (key == "cold_refit_every") {
      cfg.strategy.cold_refit_every =
          static_cast<int>(parse_int(value, key));
    } else if (key == "duplicate_eta") {
      cfg.defense.duplicate_eta = static_cast<int>(parse_int(value, key));
    } else if (key == "suspension_length") {
      cfg.defense.suspension_length = static_cast<int>(parse_int(value, key));
    } else if (key == "likelihood_alpha") {
      cfg.defense.likelihood_alpha = parse_double(value, key);
    } else if (key == "likelihood_min_history") {
      cfg.defense.likelihood_min_history =
          static_cast<int>(parse_int(value, key));
    } else if (key == "likelihood_null_users") {
      cfg.defense.likelihood_null_users =
          static_cast<int>(parse_int(value, key));
    } else if (key == "likelihood_window") {
      cfg.defense.likelihood_window = static_cast<int>(parse_int(value, key));
    } else if (key == "filter_tau") {
      cfg.defense.filter_tau = parse_double(value, key);
    } else if (key == "total_votes") {
      cfg.total_votes = parse_int(value, key);
    } else if (key == "checkpoint_interval") {
      cfg.checkpoint_interval = parse_int(value, key);
    } else if (key == "run_seed") {
      cfg.run_seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "accounts") {
      cfg.num_accounts = static_cast<int>(parse_int(value, key));
    } else if (key == "fit_tolerance") {
      cfg.fit.tolerance = parse_double(value, key);
    } else if (key == "fit_max_iterations") {
      cfg.fit.max_iterations = static_cast<int>(parse_int(value, key));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

std::string config_echo(const SimulationConfig& cfg) {
  std::ostringstream out;
  out << "dataset = " << cfg.dataset_path << '\n';
  if (!cfg.model_filter.empty()) {
    out << "models = ";
    for (std::size_t i = 0; i < cfg.model_filter.size(); ++i) {
      out << (i ? "," : "") << cfg.model_filter[i];
    }
    out << '\n';
  }
  out << "split_fraction = " << cfg.split_fraction << '\n'
      << "split_seed = " << cfg.split_seed << '\n'
      << "hist_access = "
      << (cfg.threat.hist_access == ThreatModel::HistAccess::kFullVotes
              ? "full"
              : "scores")
      << '\n'
      << "identity = " << (cfg.threat.real_name ? "real" : "anonymous") << '\n';
  switch (cfg.threat.oracle.mode) {
    case OracleConfig::Mode::kPerfect:
      out << "oracle_mode = perfect\n";
      break;
    case OracleConfig::Mode::kAnonymousFraction:
      out << "oracle_mode = anonymous_fraction\n"
          << "oracle_anonymous_fraction = "
          << cfg.threat.oracle.anonymous_fraction << '\n';
      break;
    case OracleConfig::Mode::kNoisyMulticlass:
      out << "oracle_mode = noisy_multiclass\n"
          << "oracle_accuracy = " << cfg.threat.oracle.accuracy << '\n';
      break;
    case OracleConfig::Mode::kBinaryTarget:
      out << "oracle_mode = binary_target\n"
          << "oracle_accuracy = " << cfg.threat.oracle.accuracy << '\n';
      break;
  }
  out << "sampling_known = " << (cfg.threat.sampling_known ? "true" : "false")
      << '\n'
      << "concurrent_votes = " << cfg.threat.concurrent_votes << '\n';
  switch (cfg.sampling) {
    case SimulationConfig::SamplingKind::kUniform:
      out << "sampling = uniform\n";
      break;
    case SimulationConfig::SamplingKind::kTargetScaled:
      out << "sampling = target_scaled\n" << "beta = " << cfg.beta << '\n';
      break;
    case SimulationConfig::SamplingKind::kEmpirical:
      out << "sampling = empirical\n";
      break;
  }
  out << "strategy = " << strategy_name(cfg.strategy) << '\n'
      << "target = " << cfg.target_name << '\n';
  if (cfg.strategy.kind == StrategyConfig::Kind::kOmniBt) {
    out << "bt_objective = "
        << (cfg.strategy.bt_objective == OmniBtObjective::kRelative
                ? "relative"
                : "absolute")
        << '\n'
        << "cold_refit_every = " << cfg.strategy.cold_refit_every << '\n';
  }
  if (cfg.strategy.kind == StrategyConfig::Kind::kOmniOn) {
    const char* obj = "avg";
    if (cfg.strategy.on_objective == OmniOnObjective::kMinWinRate) obj = "min";
    if (cfg.strategy.on_objective == OmniOnObjective::kMaxWinRate) obj = "max";
    out << "on_objective = " << obj << '\n'
        << "mu = " << cfg.strategy.mu << '\n'
        << "update_local = " << (cfg.strategy.update_local ? "true" : "false")
        << '\n';
  }
  out << "normal_mix = " << cfg.strategy.normal_mix << '\n'
      << "duplicate_eta = " << cfg.defense.duplicate_eta << '\n'
      << "suspension_length = " << cfg.defense.suspension_length << '\n'
      << "likelihood_alpha = " << cfg.defense.likelihood_alpha << '\n'
      << "likelihood_min_history = " << cfg.defense.likelihood_min_history
      << '\n'
      << "likelihood_null_users = " << cfg.defense.likelihood_null_users
      << '\n'
      << "likelihood_window = " << cfg.defense.likelihood_window << '\n'
      << "filter_tau = " << cfg.defense.filter_tau << '\n'
      << "total_votes = " << cfg.total_votes << '\n'
      << "checkpoint_interval = " << cfg.checkpoint_interval << '\n'
      << "run_seed = " << cfg.run_seed << '\n'
      << "accounts = " << cfg.num_accounts << '\n'
      << "fit_tolerance = " << cfg.fit.tolerance << '\n'
      << "fit_max_iterations = " << cfg.fit.max_iterations << '\n';
  return out.str();
}

void validate(const SimulationConfig& cfg, int num_models) {
  if (cfg.total_votes < 0) {
    throw ConfigError("total_votes must be >= 0");
  }
  if (cfg.checkpoint_interval < 1) {
    throw ConfigError("checkpoint_interval must be >= 1");
  }
  if (cfg.num_accounts < 1) {
    throw ConfigError("accounts must be >= 1");
  }
  if (cfg.strategy.kind == StrategyConfig::Kind::kOmniBt &&
      cfg.threat.hist_access != ThreatModel::HistAccess::kFullVotes) {
    throw ConfigError(
        "omni_bt requires full historical-vote access in the threat model");
  }
  validate(cfg.strategy, num_models);
  validate(cfg.defense);
  if (!cfg.threat.real_name) {
    validate(cfg.threat.oracle, num_models);
  }
  if (cfg.sampling == SimulationConfig::SamplingKind::kTargetScaled &&
      (cfg.beta < 0.0 || cfg.beta > 1.0)) {
    throw ConfigError("beta must be in [0, 1]");
  }
}

namespace {

struct NewVote {
  ModelId a;
  ModelId b;
  VoteOutcome outcome;
  std::string user;
  std::int64_t arrival;
};

// Position of the model one rank ahead of the target in the table (the
// runner-up when the target leads).
std::pair<ModelId, int> model_ahead(const std::vector<RankedEntry>& table,
                                    ModelId target) {
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (table[p].model == target) {
      const std::size_t q = (p == 0) ? (table.size() > 1 ? 1 : 0) : p - 1;
      return {table[q].model, table[q].rank};
    }
  }
  return {-1, 0};
}

}  // namespace

SimulationReport run_simulation(const SimulationConfig& cfg,
                                const VoteSet& dataset) {
  const VoteSet working = cfg.model_filter.empty()
                              ? dataset
                              : filter_by_names(dataset, cfg.model_filter);
  const int k = working.num_models();

  SimulationConfig resolved = cfg;
  if (!resolved.target_name.empty()) {
    const ModelId t = working.find_model(resolved.target_name);
    if (t < 0) {
      throw DataError("target model '" + resolved.target_name +
                      "' not in dataset");
    }
    resolved.strategy.target = t;
  }
  if (resolved.strategy.target < 0) {
    throw ConfigError("a target model is required");
  }
  if (resolved.threat.oracle.recognized.empty()) {
    resolved.threat.oracle.recognized.resize(k);
    for (int m = 0; m < k; ++m) resolved.threat.oracle.recognized[m] = m;
  }
  if (resolved.threat.oracle.mode == OracleConfig::Mode::kBinaryTarget) {
    resolved.threat.oracle.target = resolved.strategy.target;
  }
  validate(resolved, k);
  const ModelId target = resolved.strategy.target;

  auto split =
      split_historical(working, resolved.split_fraction, resolved.split_seed);
  const VoteSet& hist = split.historical;
  const VoteSet& vo_pool = split.concurrent;

  const RatingVector hist_fit = fit_bt(hist, resolved.fit);
  const OutcomeModel outcomes(hist);

  std::optional<PairDistribution> dist;
  switch (resolved.sampling) {
    case SimulationConfig::SamplingKind::kUniform:
      dist = PairDistribution::uniform(k);
      break;
    case SimulationConfig::SamplingKind::kTargetScaled:
      dist = PairDistribution::target_scaled(k, target, resolved.beta);
      break;
    case SimulationConfig::SamplingKind::kEmpirical:
      dist = PairDistribution::empirical(hist);
      break;
  }

  Rng rng_pair(Rng::derive_seed(resolved.run_seed, 1));
  Rng rng_oracle(Rng::derive_seed(resolved.run_seed, 2));
  Rng rng_strategy(Rng::derive_seed(resolved.run_seed, 3));
  Rng rng_crowd(Rng::derive_seed(resolved.run_seed, 4));

  std::unique_ptr<OmniBtStrategy> omni_bt;
  RatingVector omni_on_snapshot;
  if (resolved.strategy.kind == StrategyConfig::Kind::kOmniBt) {
    omni_bt = std::make_unique<OmniBtStrategy>(hist, resolved.strategy,
                                               resolved.fit);
  } else if (resolved.strategy.kind == StrategyConfig::Kind::kOmniOn) {
    omni_on_snapshot = hist_fit;
  }

  UserLedger ledger(resolved.defense);
  const bool use_likelihood = resolved.defense.likelihood_alpha > 0.0;
  std::optional<LikelihoodDetector> detector;
  if (use_likelihood) {
    detector.emplace(resolved.defense, outcomes, *dist, hist_fit,
                     Rng::derive_seed(resolved.run_seed, 5));
  }

  std::vector<NewVote> accepted;
  std::unordered_map<std::string, std::vector<UserVote>> user_history;
  std::unordered_map<std::string, std::int64_t> flagged_at;
  std::int64_t arrival_counter = 0;

  SimulationReport report;
  report.config = config_echo(resolved);
  report.target_name = working.name(target);
  report.checkpoint_interval = resolved.checkpoint_interval;
  report.initial_rank = rank_of(hist_fit, target);
  report.initial_score = hist_fit.scores[target];
  {
    const auto table = ranking_table(hist_fit);
    const auto [ahead, ahead_rank] = model_ahead(table, target);
    report.checkpoints.push_back(CheckpointRow{0, report.initial_rank,
                                               report.initial_score, ahead,
                                               ahead_rank});
  }

  // One observed platform event: runs the gate, records history, stores the
  // vote when it survives. Returns whether the vote was accepted.
  auto submit = [&](const std::string& user, ModelId a, ModelId b,
                    VoteOutcome outcome) {
    const GateResult gate = ledger.gate(user, outcome);
    if (outcome == VoteOutcome::kAbstain) {
      return false;
    }
    if (gate == GateResult::kDiscard) {
      return false;
    }
    accepted.push_back(NewVote{a, b, outcome, user, arrival_counter});
    if (use_likelihood) {
      user_history[user].push_back(UserVote{a, b, outcome});
    }
    return true;
  };

  RatingVector checkpoint_fit = hist_fit;
  std::vector<double> warm = hist_fit.natural;
  auto refit_checkpoint = [&](std::int64_t votes_cast) {
    // Likelihood accounting: evaluate unflagged users with enough history.
    if (use_likelihood) {
      std::vector<std::string> users;
      users.reserve(user_history.size());
      for (const auto& [user, votes] : user_history) users.push_back(user);
      std::sort(users.begin(), users.end());  // deterministic order
      for (const std::string& user : users) {
        if (flagged_at.count(user) != 0) continue;
        const auto& votes = user_history[user];
        if (static_cast<int>(votes.size()) <
            resolved.defense.likelihood_min_history) {
          continue;
        }
        if (detector->flag(votes) == FlagResult::kFlagged) {
          flagged_at.emplace(user, arrival_counter);
          report.defense.flagged_users.push_back(user);
        }
      }
    }
    // Assemble V_H plus the surviving new votes, minus flagged users'
    // subsequent votes, run through the tau filter.
    VoteSet fitset(working.names());
    for (const VoteRecord& r : hist.records()) {
      fitset.push(r.a, r.b, r.outcome, r.user);
    }
    std::int64_t filter_discarded = 0;
    std::int64_t flag_excluded = 0;
    const double tau = resolved.defense.filter_tau;
    for (const NewVote& v : accepted) {
      auto it = flagged_at.find(v.user);
      if (it != flagged_at.end() && v.arrival >= it->second) {
        ++flag_excluded;
        continue;
      }
      if (tau > 0.0) {
        const double w_ab =
            win_rate(hist_fit.scores[v.a], hist_fit.scores[v.b]);
        const bool upset_b = v.outcome == VoteOutcome::kBWins && w_ab > tau;
        const bool upset_a =
            v.outcome == VoteOutcome::kAWins && (1.0 - w_ab) > tau;
        if (upset_a || upset_b) {
          ++filter_discarded;
          continue;
        }
      }
      fitset.push(v.a, v.b, v.outcome, v.user);
    }
    report.defense.filter_discarded = filter_discarded;
    report.defense.flagged_votes_excluded = flag_excluded;

    FitOptions opts = resolved.fit;
    opts.warm_start = &warm;
    checkpoint_fit = fit_bt(fitset, opts);
    warm = checkpoint_fit.natural;

    const auto table = ranking_table(checkpoint_fit);
    const auto [ahead, ahead_rank] = model_ahead(table, target);
    report.checkpoints.push_back(
        CheckpointRow{votes_cast, rank_of(checkpoint_fit, target),
                      checkpoint_fit.scores[target], ahead, ahead_rank});
  };

  // Concurrent votes are spread uniformly over the adversary's run; the V_O
  // pool is replayed first and fresh normal votes fill any remainder.
  const std::int64_t n = resolved.total_votes;
  const std::int64_t c_total = resolved.threat.concurrent_votes;
  std::int64_t c_emitted = 0;
  std::size_t vo_next = 0;
  auto emit_concurrent_until = [&](std::int64_t quota) {
    while (c_emitted < quota) {
      ModelId a, b;
      VoteOutcome outcome;
      if (vo_next < vo_pool.records().size()) {
        const VoteRecord& r = vo_pool.records()[vo_next++];
        a = r.a;
        b = r.b;
        outcome = r.outcome;
      } else {
        std::tie(a, b) = dist->sample(rng_crowd);
        outcome = outcomes.sample(a, b, hist_fit, rng_crowd);
      }
      const std::string user =
          "crowd-" + std::to_string(c_emitted % 97);
      submit(user, a, b, outcome);
      ++arrival_counter;
      ++c_emitted;
    }
  };

  for (std::int64_t i = 0; i < n; ++i) {
    if (c_total > 0 && n > 0) {
      emit_concurrent_until(i * c_total / n);
    }
    const auto [a, b] = dist->sample(rng_pair);

    IdentityGuess ga{a, false}, gb{b, false};
    if (!resolved.threat.real_name) {
      std::tie(ga, gb) =
          predict_battle(resolved.threat.oracle, a, b, rng_oracle);
    }

    VoteDecision decision;
    switch (resolved.strategy.kind) {
      case StrategyConfig::Kind::kNone:
        decision.outcome = outcomes.sample(a, b, hist_fit, rng_strategy);
        break;
      case StrategyConfig::Kind::kTargetOnly:
        decision = manipulate_target_only(resolved.strategy, ga, gb, a, b,
                                          outcomes, hist_fit, rng_strategy);
        break;
      case StrategyConfig::Kind::kOmniBt:
        decision = omni_bt->decide(ga, gb);
        break;
      case StrategyConfig::Kind::kOmniOn:
        decision = manipulate_omni_on(omni_on_snapshot, ga, gb,
                                      resolved.strategy);
        break;
    }
    if (resolved.strategy.kind != StrategyConfig::Kind::kNone) {
      decision = apply_normal_mix(resolved.strategy, decision, outcomes, a, b,
                                  hist_fit, rng_strategy);
    }
    if (omni_bt) {
      omni_bt->observe(decision.outcome);
    }

    const std::string user =
        "adv-" + std::to_string(i % resolved.num_accounts);
    const bool accepted_vote = submit(user, a, b, decision.outcome);
    if (decision.outcome == VoteOutcome::kAbstain) {
      ++report.abstained_votes;
    } else if (accepted_vote) {
      ++report.surviving_votes;
    } else {
      ++report.discarded_votes;
      ++report.defense.duplicate_discarded;
    }
    ++arrival_counter;

    if ((i + 1) % resolved.checkpoint_interval == 0 && (i + 1) < n) {
      refit_checkpoint(i + 1);
    }
  }
  emit_concurrent_until(c_total);
  report.defense.suspensions = ledger.suspensions_started();
  if (n > 0) {
    refit_checkpoint(n);
  }

  const RatingVector& final_fit = n > 0 ? checkpoint_fit : hist_fit;
  report.final_rank = rank_of(final_fit, target);
  report.final_score = final_fit.scores[target];
  report.rank_increase = report.initial_rank - report.final_rank;
  for (const RankedEntry& e : ranking_table(final_fit)) {
    report.final_table.push_back(
        FinalRow{working.name(e.model), e.score, e.rank});
  }
  return report;
}

SimulationReport run_simulation(const SimulationConfig& cfg) {
  return run_simulation(cfg, parse_battle_records_file(cfg.dataset_path));
}

namespace {

void apply_axis(SimulationConfig& cfg, const std::string& axis, double value) {
  if (axis == "anonymous_fraction") {
    cfg.threat.real_name = false;
    cfg.threat.oracle.mode = OracleConfig::Mode::kAnonymousFraction;
    cfg.threat.oracle.anonymous_fraction = value;
  } else if (axis == "beta") {
    cfg.sampling = SimulationConfig::SamplingKind::kTargetScaled;
    cfg.beta = value;
  } else if (axis == "concurrent_votes") {
    cfg.threat.concurrent_votes = static_cast<std::int64_t>(value);
  } else if (axis == "tau") {
    cfg.defense.filter_tau = value;
  } else if (axis == "total_votes") {
    cfg.total_votes = static_cast<std::int64_t>(value);
  } else if (axis == "duplicate_eta") {
    cfg.defense.duplicate_eta = static_cast<int>(value);
  } else if (axis == "normal_mix") {
    cfg.strategy.normal_mix = value;
  } else if (axis == "oracle_accuracy") {
    cfg.threat.oracle.accuracy = value;
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'");
  }
}

}  // namespace

SimulationReport run_sweep_cell(const SimulationConfig& base,
                                const std::string& axis, double value,
                                std::size_t cell_index) {
  SimulationConfig cell = base;
  apply_axis(cell, axis, value);
  cell.run_seed = Rng::derive_seed(base.run_seed, cell_index);
  return run_simulation(cell);
}

namespace {

std::vector<SimulationReport> run_grid_impl(const SimulationConfig& base,
                                            const std::string& axis,
                                            const std::vector<double>& values,
                                            const VoteSet* dataset) {
  // Validate the axis name up front so an empty sweep still reports typos.
  {
    SimulationConfig probe = base;
    if (!values.empty()) apply_axis(probe, axis, values.front());
  }
  std::vector<SimulationReport> reports;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimulationConfig cell = base;
    try {
      apply_axis(cell, axis, values[i]);
      cell.run_seed = Rng::derive_seed(base.run_seed, i);
      reports.push_back(dataset ? run_simulation(cell, *dataset)
                                : run_simulation(cell));
    } catch (const std::exception& e) {
      SimulationReport failed;
      failed.config = config_echo(cell);
      failed.error = e.what();
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

}  // namespace

std::vector<SimulationReport> run_grid(const SimulationConfig& base,
                                       const std::string& axis,
                                       const std::vector<double>& values) {
  return run_grid_impl(base, axis, values, nullptr);
}

std::vector<SimulationReport> run_grid(const SimulationConfig& base,
                                       const std::string& axis,
                                       const std::vector<double>& values,
                                       const VoteSet& dataset) {
  return run_grid_impl(base, axis, values, &dataset);
}

std::string format_rank_cell(int final_rank, int initial_rank) {
  const int increase = initial_rank - final_rank;
  std::ostringstream out;
  out << final_rank << " (" << (increase >= 0 ? "+" : "") << increase << ")";
  return out.str();
}

namespace {

nlohmann::json checkpoint_to_json(const CheckpointRow& row) {
  return nlohmann::json{{"votes_cast", row.votes_cast},
                        {"target_rank", row.target_rank},
                        {"target_score", row.target_score},
                        {"ahead_model", row.ahead_model},
                        {"ahead_rank", row.ahead_rank}};
}

}  // namespace

void emit_report(const SimulationReport& report, ReportFormat format,
                 std::ostream& out) {
  switch (format) {
    case ReportFormat::kTableText: {
      out << "target: " << report.target_name << '\n'
          << "rank: " << format_rank_cell(report.final_rank,
                                          report.initial_rank)
          << '\n'
          << "votes: surviving=" << report.surviving_votes
          << " discarded=" << report.discarded_votes
          << " abstained=" << report.abstained_votes << '\n';
      if (!report.error.empty()) {
        out << "error: " << report.error << '\n';
        return;
      }
      out << "defense: duplicate_discarded="
          << report.defense.duplicate_discarded
          << " suspensions=" << report.defense.suspensions
          << " filter_discarded=" << report.defense.filter_discarded
          << " flagged_users=" << report.defense.flagged_users.size()
          << " flagged_votes_excluded="
          << report.defense.flagged_votes_excluded << '\n';
      out << std::left << std::setw(6) << "rank" << std::setw(36) << "model"
          << "score" << '\n';
      for (const FinalRow& row : report.final_table) {
        std::ostringstream score;
        score << std::fixed << std::setprecision(2) << row.score;
        out << std::left << std::setw(6) << row.rank << std::setw(36)
            << row.name << score.str() << '\n';
      }
      break;
    }
    case ReportFormat::kTrajectory: {
      out << "votes_cast,rank,score\n";
      for (const CheckpointRow& row : report.checkpoints) {
        std::ostringstream score;
        score << std::fixed << std::setprecision(6) << row.target_score;
        out << row.votes_cast << ',' << row.target_rank << ',' << score.str()
            << '\n';
      }
      break;
    }
    case ReportFormat::kStructured: {
      nlohmann::json doc;
      doc["config"] = report.config;
      doc["target_name"] = report.target_name;
      doc["checkpoint_interval"] = report.checkpoint_interval;
      doc["initial_rank"] = report.initial_rank;
      doc["final_rank"] = report.final_rank;
      doc["rank_increase"] = report.rank_increase;
      doc["initial_score"] = report.initial_score;
      doc["final_score"] = report.final_score;
      doc["surviving_votes"] = report.surviving_votes;
      doc["discarded_votes"] = report.discarded_votes;
      doc["abstained_votes"] = report.abstained_votes;
      doc["error"] = report.error;
      doc["checkpoints"] = nlohmann::json::array();
      for (const CheckpointRow& row : report.checkpoints) {
        doc["checkpoints"].push_back(checkpoint_to_json(row));
      }
      doc["final_table"] = nlohmann::json::array();
      for (const FinalRow& row : report.final_table) {
        doc["final_table"].push_back(nlohmann::json{
            {"name", row.name}, {"score", row.score}, {"rank", row.rank}});
      }
      doc["defense"] = nlohmann::json{
          {"duplicate_discarded", report.defense.duplicate_discarded},
          {"suspensions", report.defense.suspensions},
          {"filter_discarded", report.defense.filter_discarded},
          {"flagged_users", report.defense.flagged_users},
          {"flagged_votes_excluded", report.defense.flagged_votes_excluded}};
      out << doc.dump(2) << '\n';
      break;
    }
  }
}

SimulationReport load_structured_report(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("structured report is not valid JSON: ") +
                    e.what());
  }
  SimulationReport report;
  report.config = doc.at("config").get<std::string>();
  report.target_name = doc.at("target_name").get<std::string>();
  report.checkpoint_interval = doc.at("checkpoint_interval").get<std::int64_t>();
  report.initial_rank = doc.at("initial_rank").get<int>();
  report.final_rank = doc.at("final_rank").get<int>();
  report.rank_increase = doc.at("rank_increase").get<int>();
  report.initial_score = doc.at("initial_score").get<double>();
  report.final_score = doc.at("final_score").get<double>();
  report.surviving_votes = doc.at("surviving_votes").get<std::int64_t>();
  report.discarded_votes = doc.at("discarded_votes").get<std::int64_t>();
  report.abstained_votes = doc.at("abstained_votes").get<std::int64_t>();
  report.error = doc.at("error").get<std::string>();
  for (const auto& row : doc.at("checkpoints")) {
    report.checkpoints.push_back(CheckpointRow{
        row.at("votes_cast").get<std::int64_t>(),
        row.at("target_rank").get<int>(),
        row.at("target_score").get<double>(),
        row.at("ahead_model").get<ModelId>(),
        row.at("ahead_rank").get<int>()});
  }
  for (const auto& row : doc.at("final_table")) {
    report.final_table.push_back(FinalRow{row.at("name").get<std::string>(),
                                          row.at("score").get<double>(),
                                          row.at("rank").get<int>()});
  }
  const auto& defense = doc.at("defense");
  report.defense.duplicate_discarded =
      defense.at("duplicate_discarded").get<std::int64_t>();
  report.defense.suspensions = defense.at("suspensions").get<std::int64_t>();
  report.defense.filter_discarded =
      defense.at("filter_discarded").get<std::int64_t>();
  report.defense.flagged_users =
      defense.at("flagged_users").get<std::vector<std::string>>();
  report.defense.flagged_votes_excluded =
      defense.at("flagged_votes_excluded").get<std::int64_t>();
  return report;
}

}  // namespace arenasim
