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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arenasim/common.hpp"
#include "arenasim/defense.hpp"
#include "arenasim/harness.hpp"
#include "arenasim/kernels.hpp"
#include "arenasim/ratings.hpp"
#include "arenasim/votes.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

std::vector<std::string> read_name_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw arenasim::DataError("cannot open model list '" + path + "'");
  }
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

void write_or_print(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw arenasim::DataError("cannot write '" + out_path + "'");
  }
  out << text;
}

int run(int argc, char** argv) {
  CLI::App app{"pairwise-battle leaderboard simulator"};
  app.require_subcommand(1);

  std::string backend = "auto";
  app.add_option("--backend", backend,
                 "compute backend: auto, scalar or avx2");

  // fit <dataset> [--models file] [--out path]
  auto* fit_cmd = app.add_subcommand("fit", "fit ratings from a dataset");
  std::string fit_dataset, fit_models, fit_out;
  fit_cmd->add_option("dataset", fit_dataset, "battle-record JSON file")
      ->required();
  fit_cmd->add_option("--models", fit_models,
                      "file with one model name per line; others dropped");
  fit_cmd->add_option("--out", fit_out, "output path (default stdout)");

  // simulate --config <file> [--seed S] [--out dir]
  auto* sim_cmd = app.add_subcommand("simulate", "run one rigging simulation");
  std::string sim_config, sim_out;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  sim_cmd->add_option("--config", sim_config, "key = value config file")
      ->required();
  sim_cmd->add_option("--seed", sim_seed, "override run_seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  sim_cmd->add_option("--out", sim_out,
                      "output directory for report.txt, trajectory.csv and "
                      "report.json (default: table to stdout)");

  // sweep --config <file> --axis <name> --values <list>
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep one config axis");
  std::string sweep_config, sweep_axis, sweep_values, sweep_out;
  sweep_cmd->add_option("--config", sweep_config, "key = value config file")
      ->required();
  sweep_cmd->add_option("--axis", sweep_axis, "axis name")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--out", sweep_out,
                        "output directory for per-cell cell-NN.json files");

  // filter --dataset <file> --tau <v>
  auto* filter_cmd =
      app.add_subcommand("filter", "apply the win-rate vote filter");
  std::string filter_dataset;
  double filter_tau = 0.0;
  filter_cmd->add_option("--dataset", filter_dataset, "battle-record JSON")
      ->required();
  filter_cmd->add_option("--tau", filter_tau, "confidence threshold")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  arenasim::kernels::force_backend(backend);

  if (*fit_cmd) {
    arenasim::VoteSet votes = arenasim::parse_battle_records_file(fit_dataset);
    if (!fit_models.empty()) {
      votes = arenasim::filter_by_names(votes, read_name_list(fit_models));
    }
    const arenasim::RatingVector ratings = arenasim::fit_bt(votes);
    std::ostringstream out;
    arenasim::export_ratings(ratings, votes, out);
    write_or_print(fit_out, out.str());
    return 0;
  }

  if (*sim_cmd) {
    arenasim::SimulationConfig cfg = arenasim::parse_config_file(sim_config);
    if (sim_seed_set) cfg.run_seed = sim_seed;
    const arenasim::SimulationReport report = arenasim::run_simulation(cfg);
    if (sim_out.empty()) {
      arenasim::emit_report(report, arenasim::ReportFormat::kTableText,
                            std::cout);
      return 0;
    }
    std::filesystem::create_directories(sim_out);
    const std::filesystem::path dir(sim_out);
    const struct {
      const char* name;
      arenasim::ReportFormat format;
    } outputs[] = {
        {"report.txt", arenasim::ReportFormat::kTableText},
        {"trajectory.csv", arenasim::ReportFormat::kTrajectory},
        {"report.json", arenasim::ReportFormat::kStructured},
    };
    for (const auto& o : outputs) {
      std::ofstream out(dir / o.name);
      if (!out) {
        throw arenasim::DataError("cannot write into '" + sim_out + "'");
      }
      arenasim::emit_report(report, o.format, out);
    }
    return 0;
  }

  if (*sweep_cmd) {
    const arenasim::SimulationConfig base =
        arenasim::parse_config_file(sweep_config);
    std::vector<double> values;
    std::istringstream stream(sweep_values);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (item.empty()) continue;
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw arenasim::ConfigError("sweep value '" + item +
                                    "' is not a number");
      }
    }
    if (values.empty()) {
      throw arenasim::ConfigError("--values must list at least one number");
    }
    const auto reports = arenasim::run_grid(base, sweep_axis, values);
    if (!sweep_out.empty()) std::filesystem::create_directories(sweep_out);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const arenasim::SimulationReport& r = reports[i];
      std::cout << sweep_axis << " = " << values[i] << ": ";
      if (!r.error.empty()) {
        std::cout << "error: " << r.error << '\n';
      } else {
        std::cout << "rank "
                  << arenasim::format_rank_cell(r.final_rank, r.initial_rank)
                  << '\n';
      }
      if (!sweep_out.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, "cell-%02zu.json", i);
        std::ofstream out(std::filesystem::path(sweep_out) / name);
        arenasim::emit_report(r, arenasim::ReportFormat::kStructured, out);
      }
    }
    return 0;
  }

  // filter
  const arenasim::VoteSet votes =
      arenasim::parse_battle_records_file(filter_dataset);
  const arenasim::RatingVector ratings = arenasim::fit_bt(votes);
  const arenasim::VoteSet kept =
      arenasim::filter_votes(votes, ratings, filter_tau);
  arenasim::serialize_votes(kept, std::cout);
  std::cerr << "kept " << kept.records().size() << " of "
            << votes.records().size() << " votes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const arenasim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const arenasim::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
