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

#ifndef ARENASIM_VOTES_HPP_
#define ARENASIM_VOTES_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arenasim/common.hpp"

namespace arenasim {

enum class VoteOutcome : std::uint8_t { kAWins, kBWins, kTie, kAbstain };

const char* to_string(VoteOutcome outcome);

// One recorded battle. Abstain outcomes are never stored.
struct VoteRecord {
  ModelId a = -1;
  ModelId b = -1;
  VoteOutcome outcome = VoteOutcome::kTie;
  std::string user;  // empty when untagged
  std::int64_t seq = 0;
};

// The multiset of pairwise outcomes plus its sufficient statistics.
// counts(i, j) is the number of directed "i preferred over j" comparisons:
// a win adds one directed cell, a tie adds both, an abstain adds nothing.
class VoteSet {
 public:
  VoteSet() = default;
  explicit VoteSet(std::vector<std::string> names);

  int num_models() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(ModelId m) const { return names_.at(m); }
  // -1 when the name is unknown.
  ModelId find_model(const std::string& name) const;
  // Existing id, or a freshly assigned dense index.
  ModelId intern_model(const std::string& name);

  const std::vector<VoteRecord>& records() const { return records_; }
  std::int64_t counts(ModelId i, ModelId j) const {
    return counts_[static_cast<std::size_t>(i) * names_.size() + j];
  }
  // Sum of all directed comparisons (ties count twice).
  std::int64_t total_comparisons() const { return total_comparisons_; }

  // In-place append used by the simulation loop. a != b.
  void push(ModelId a, ModelId b, VoteOutcome outcome,
            const std::string& user = {});
  // Append preserving an existing sequence number; transformations use this
  // so record identity survives splits and filters.
  void push_with_seq(ModelId a, ModelId b, VoteOutcome outcome,
                     const std::string& user, std::int64_t seq);

  // Rebuild the counts matrix from the record list (consistency oracle).
  std::vector<std::int64_t> recount() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ModelId> index_;
  std::vector<VoteRecord> records_;
  std::vector<std::int64_t> counts_;  // K*K row-major
  std::int64_t total_comparisons_ = 0;
  std::int64_t next_seq_ = 0;
};

// Value-semantics append: returns the updated copy, leaves `set` untouched.
VoteSet append_vote(const VoteSet& set, ModelId a, ModelId b,
                    VoteOutcome outcome, const std::string& user = {});

// Ingest a JSON array of battle records with fields model_a, model_b and
// winner in {"model_a", "model_b", "tie", "tie (bothbad)"}.
VoteSet parse_battle_records(std::istream& input);
VoteSet parse_battle_records_file(const std::string& path);

// Canonical line format: a_name,b_name,outcome,seq with outcome in {A,B,T}.
void serialize_votes(const VoteSet& set, std::ostream& out);
VoteSet parse_vote_lines(std::istream& input);

// Seed-reproducible uniform partition by record. first gets
// round(fraction * |records|) records; both halves keep record order.
struct HistoricalSplit {
  VoteSet historical;  // V_H
  VoteSet concurrent;  // V_O
};
HistoricalSplit split_historical(const VoteSet& set, double fraction,
                                 std::uint64_t seed);

// Keep only battles whose both endpoints are in `keep`; indices re-densified
// in ascending original order.
VoteSet filter_by_models(const VoteSet& set,
                         const std::unordered_set<ModelId>& keep);
VoteSet filter_by_names(const VoteSet& set,
                        const std::vector<std::string>& keep);

}  // namespace arenasim

#endif  // ARENASIM_VOTES_HPP_
