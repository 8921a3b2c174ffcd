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

#include "arenasim/votes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "arenasim/rng.hpp"

namespace arenasim {

const char* to_string(VoteOutcome outcome) {
  switch (outcome) {
    case VoteOutcome::kAWins:
      return "a_wins";
    case VoteOutcome::kBWins:
      return "b_wins";
    case VoteOutcome::kTie:
      return "tie";
    case VoteOutcome::kAbstain:
      return "abstain";
  }
  return "?";
}

VoteSet::VoteSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (!index_.emplace(names_[k], static_cast<ModelId>(k)).second) {
      throw DataError("duplicate model name '" + names_[k] + "'");
    }
  }
  counts_.assign(names_.size() * names_.size(), 0);
}

ModelId VoteSet::find_model(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

ModelId VoteSet::intern_model(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<ModelId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  // Grow the counts matrix from (K-1)^2 to K^2.
  std::vector<std::int64_t> grown(names_.size() * names_.size(), 0);
  for (ModelId i = 0; i < id; ++i) {
    for (ModelId j = 0; j < id; ++j) {
      grown[static_cast<std::size_t>(i) * names_.size() + j] =
          counts_[static_cast<std::size_t>(i) * id + j];
    }
  }
  counts_ = std::move(grown);
  return id;
}

void VoteSet::push(ModelId a, ModelId b, VoteOutcome outcome,
                   const std::string& user) {
  if (a == b) {
    throw DataError("invalid battle: a model cannot battle itself");
  }
  if (a < 0 || b < 0 || a >= num_models() || b >= num_models()) {
    throw DataError("invalid battle: model index out of range");
  }
  if (outcome == VoteOutcome::kAbstain) {
    return;  // abstains leave the vote set unchanged
  }
  const std::size_t k = names_.size();
  switch (outcome) {
    case VoteOutcome::kAWins:
      counts_[static_cast<std::size_t>(a) * k + b] += 1;
      total_comparisons_ += 1;
      break;
    case VoteOutcome::kBWins:
      counts_[static_cast<std::size_t>(b) * k + a] += 1;
      total_comparisons_ += 1;
      break;
    case VoteOutcome::kTie:
      counts_[static_cast<std::size_t>(a) * k + b] += 1;
      counts_[static_cast<std::size_t>(b) * k + a] += 1;
      total_comparisons_ += 2;
      break;
    case VoteOutcome::kAbstain:
      break;
  }
  records_.push_back(VoteRecord{a, b, outcome, user, next_seq_++});
}

void VoteSet::push_with_seq(ModelId a, ModelId b, VoteOutcome outcome,
                            const std::string& user, std::int64_t seq) {
  push(a, b, outcome, user);
  if (outcome != VoteOutcome::kAbstain) {
    records_.back().seq = seq;
    next_seq_ = std::max(next_seq_, seq + 1);
  }
}

std::vector<std::int64_t> VoteSet::recount() const {
  const std::size_t k = names_.size();
  std::vector<std::int64_t> fresh(k * k, 0);
  for (const VoteRecord& r : records_) {
    switch (r.outcome) {
      case VoteOutcome::kAWins:
        fresh[static_cast<std::size_t>(r.a) * k + r.b] += 1;
        break;
      case VoteOutcome::kBWins:
        fresh[static_cast<std::size_t>(r.b) * k + r.a] += 1;
        break;
      case VoteOutcome::kTie:
        fresh[static_cast<std::size_t>(r.a) * k + r.b] += 1;
        fresh[static_cast<std::size_t>(r.b) * k + r.a] += 1;
        break;
      case VoteOutcome::kAbstain:
        break;
    }
  }
  return fresh;
}

VoteSet append_vote(const VoteSet& set, ModelId a, ModelId b,
                    VoteOutcome outcome, const std::string& user) {
  VoteSet copy = set;
  copy.push(a, b, outcome, user);
  return copy;
}

namespace {

VoteOutcome winner_to_outcome(const std::string& winner, std::size_t index) {
  if (winner == "model_a") return VoteOutcome::kAWins;
  if (winner == "model_b") return VoteOutcome::kBWins;
  if (winner == "tie" || winner == "tie (bothbad)") return VoteOutcome::kTie;
  throw DataError("record " + std::to_string(index) +
                  ": unknown winner string '" + winner + "'");
}

}  // namespace

VoteSet parse_battle_records(std::istream& input) {
  nlohmann::json doc;
  try {
    input >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("battle records are not valid JSON: ") +
                    e.what());
  }
  if (!doc.is_array()) {
    throw DataError("battle records must be a single JSON array");
  }
  VoteSet set;
  for (std::size_t idx = 0; idx < doc.size(); ++idx) {
    const auto& rec = doc[idx];
    for (const char* field : {"model_a", "model_b", "winner"}) {
      if (!rec.contains(field) || !rec[field].is_string()) {
        throw DataError("record " + std::to_string(idx) +
                        ": missing required field '" + field + "'");
      }
    }
    const ModelId a = set.intern_model(rec["model_a"].get<std::string>());
    const ModelId b = set.intern_model(rec["model_b"].get<std::string>());
    if (a == b) {
      throw DataError("record " + std::to_string(idx) +
                      ": model battles itself");
    }
    set.push(a, b, winner_to_outcome(rec["winner"].get<std::string>(), idx));
  }
  return set;
}

VoteSet parse_battle_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open battle records file '" + path + "'");
  }
  return parse_battle_records(in);
}

void serialize_votes(const VoteSet& set, std::ostream& out) {
  for (const VoteRecord& r : set.records()) {
    char code = 'T';
    if (r.outcome == VoteOutcome::kAWins) code = 'A';
    if (r.outcome == VoteOutcome::kBWins) code = 'B';
    out << set.name(r.a) << ',' << set.name(r.b) << ',' << code << ',' << r.seq
        << '\n';
  }
}

VoteSet parse_vote_lines(std::istream& input) {
  VoteSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(input, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a_name, b_name, code, seq;
    if (!std::getline(row, a_name, ',') || !std::getline(row, b_name, ',') ||
        !std::getline(row, code, ',') || !std::getline(row, seq)) {
      throw DataError("vote line " + std::to_string(lineno) + ": malformed");
    }
    VoteOutcome outcome;
    if (code == "A") {
      outcome = VoteOutcome::kAWins;
    } else if (code == "B") {
      outcome = VoteOutcome::kBWins;
    } else if (code == "T") {
      outcome = VoteOutcome::kTie;
    } else {
      throw DataError("vote line " + std::to_string(lineno) +
                      ": unknown outcome '" + code + "'");
    }
    set.push(set.intern_model(a_name), set.intern_model(b_name), outcome);
  }
  return set;
}

HistoricalSplit split_historical(const VoteSet& set, double fraction,
                                 std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("split fraction must be in (0, 1]");
  }
  const std::size_t n = set.records().size();
  const auto take = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  std::vector<bool> in_hist(n, false);
  for (std::size_t i = 0; i < take && i < n; ++i) {
    in_hist[order[i]] = true;
  }
  HistoricalSplit split{VoteSet(set.names()), VoteSet(set.names())};
  for (std::size_t i = 0; i < n; ++i) {
    const VoteRecord& r = set.records()[i];
    (in_hist[i] ? split.historical : split.concurrent)
        .push_with_seq(r.a, r.b, r.outcome, r.user, r.seq);
  }
  return split;
}

VoteSet filter_by_models(const VoteSet& set,
                         const std::unordered_set<ModelId>& keep) {
  if (keep.empty()) {
    throw ConfigError("model filter must keep at least one model");
  }
  std::vector<ModelId> kept;
  for (ModelId m : keep) {
    if (m < 0 || m >= set.num_models()) {
      throw DataError("model filter references unknown model index " +
                      std::to_string(m));
    }
    kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<ModelId> remap(set.num_models(), -1);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    remap[kept[k]] = static_cast<ModelId>(k);
    names.push_back(set.name(kept[k]));
  }
  VoteSet out(std::move(names));
  for (const VoteRecord& r : set.records()) {
    if (remap[r.a] >= 0 && remap[r.b] >= 0) {
      out.push_with_seq(remap[r.a], remap[r.b], r.outcome, r.user, r.seq);
    }
  }
  return out;
}

VoteSet filter_by_names(const VoteSet& set,
                        const std::vector<std::string>& keep) {
  std::unordered_set<ModelId> ids;
  for (const std::string& name : keep) {
    const ModelId m = set.find_model(name);
    if (m < 0) {
      throw DataError("model filter references unknown model '" + name + "'");
    }
    ids.insert(m);
  }
  return filter_by_models(set, ids);
}

}  // namespace arenasim
