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

#include <sstream>
#include <unordered_set>

#include <doctest.h>

#include "arenasim/common.hpp"
#include "arenasim/rng.hpp"
#include "arenasim/synthetic.hpp"

using namespace arenasim;

namespace {

VoteSet two_model_set() { return VoteSet({"x", "y"}); }

}  // namespace

TEST_CASE("append a-wins adds one directed comparison") {
  VoteSet set = append_vote(two_model_set(), 0, 1, VoteOutcome::kAWins);
  CHECK(set.counts(0, 1) == 1);
  CHECK(set.counts(1, 0) == 0);
  CHECK(set.total_comparisons() == 1);
  CHECK(set.records().size() == 1);
}

TEST_CASE("append tie adds both directed comparisons") {
  VoteSet set = append_vote(two_model_set(), 0, 1, VoteOutcome::kTie);
  CHECK(set.counts(0, 1) == 1);
  CHECK(set.counts(1, 0) == 1);
  CHECK(set.total_comparisons() == 2);
}

TEST_CASE("append abstain leaves the set unchanged") {
  VoteSet base = append_vote(two_model_set(), 0, 1, VoteOutcome::kAWins);
  VoteSet after = append_vote(base, 0, 1, VoteOutcome::kAbstain);
  CHECK(after.counts(0, 1) == base.counts(0, 1));
  CHECK(after.records().size() == base.records().size());
  CHECK(after.total_comparisons() == base.total_comparisons());
}

TEST_CASE("append rejects self-battles") {
  VoteSet set = two_model_set();
  CHECK_THROWS_AS(set.push(0, 0, VoteOutcome::kAWins), DataError);
}

TEST_CASE("append_vote leaves the input value untouched") {
  VoteSet base = two_model_set();
  VoteSet copy = append_vote(base, 0, 1, VoteOutcome::kBWins);
  CHECK(base.records().empty());
  CHECK(copy.counts(1, 0) == 1);
}

TEST_CASE("seq is strictly increasing") {
  VoteSet set = two_model_set();
  set.push(0, 1, VoteOutcome::kAWins);
  set.push(0, 1, VoteOutcome::kTie);
  set.push(1, 0, VoteOutcome::kBWins);
  REQUIRE(set.records().size() == 3);
  CHECK(set.records()[0].seq < set.records()[1].seq);
  CHECK(set.records()[1].seq < set.records()[2].seq);
}

TEST_CASE("parse maps model_a winner to a directed count") {
  std::istringstream in(
      R"([{"model_a":"x","model_b":"y","winner":"model_a"}])");
  VoteSet set = parse_battle_records(in);
  CHECK(set.num_models() == 2);
  CHECK(set.counts(set.find_model("x"), set.find_model("y")) == 1);
  CHECK(set.counts(set.find_model("y"), set.find_model("x")) == 0);
}

TEST_CASE("parse treats the bothbad tie variant as a tie") {
  std::istringstream in(
      R"js([{"model_a":"x","model_b":"y","winner":"tie (bothbad)"},)js"
      R"js({"model_a":"x","model_b":"y","winner":"tie"}])js");
  VoteSet set = parse_battle_records(in);
  const ModelId x = set.find_model("x"), y = set.find_model("y");
  CHECK(set.counts(x, y) == 2);
  CHECK(set.counts(y, x) == 2);
}

TEST_CASE("parse rejects unknown winner strings with the record index") {
  std::istringstream in(
      R"([{"model_a":"x","model_b":"y","winner":"draw"}])");
  CHECK_THROWS_WITH_AS(parse_battle_records(in),
                       doctest::Contains("record 0"), DataError);
}

TEST_CASE("parse rejects records missing required fields") {
  std::istringstream in(R"([{"model_a":"x","winner":"model_a"}])");
  CHECK_THROWS_AS(parse_battle_records(in), DataError);
}

TEST_CASE("parse assigns dense indices in first-appearance order") {
  std::istringstream in(
      R"([{"model_a":"c","model_b":"a","winner":"tie"},)"
      R"({"model_a":"b","model_b":"c","winner":"model_b"}])");
  VoteSet set = parse_battle_records(in);
  CHECK(set.find_model("c") == 0);
  CHECK(set.find_model("a") == 1);
  CHECK(set.find_model("b") == 2);
}

TEST_CASE("split sizes follow the fraction") {
  VoteSet set = two_model_set();
  for (int i = 0; i < 10; ++i) {
    set.push(0, 1, i % 2 ? VoteOutcome::kAWins : VoteOutcome::kBWins);
  }
  const HistoricalSplit split = split_historical(set, 0.9, 7);
  CHECK(split.historical.records().size() == 9);
  CHECK(split.concurrent.records().size() == 1);
}

TEST_CASE("split with fraction one leaves the concurrent half empty") {
  VoteSet set = append_vote(two_model_set(), 0, 1, VoteOutcome::kAWins);
  const HistoricalSplit split = split_historical(set, 1.0, 3);
  CHECK(split.concurrent.records().empty());
  CHECK(split.historical.records().size() == 1);
}

TEST_CASE("split is deterministic in the seed and partitions the set") {
  const VoteSet set = make_synthetic_history({.num_models = 5,
                                              .num_votes = 200,
                                              .seed = 11});
  const HistoricalSplit s1 = split_historical(set, 0.7, 42);
  const HistoricalSplit s2 = split_historical(set, 0.7, 42);
  REQUIRE(s1.historical.records().size() == s2.historical.records().size());
  for (std::size_t i = 0; i < s1.historical.records().size(); ++i) {
    CHECK(s1.historical.records()[i].seq == s2.historical.records()[i].seq);
  }
  // Partition: every input record lands in exactly one half.
  std::unordered_set<std::int64_t> seen;
  for (const VoteRecord& r : s1.historical.records()) seen.insert(r.seq);
  for (const VoteRecord& r : s1.concurrent.records()) {
    CHECK(seen.insert(r.seq).second);
  }
  CHECK(seen.size() == set.records().size());
}

TEST_CASE("filter keeping everything is the identity") {
  const VoteSet set = make_synthetic_history({.num_models = 4,
                                              .num_votes = 100,
                                              .seed = 2});
  std::unordered_set<ModelId> keep;
  for (int m = 0; m < set.num_models(); ++m) keep.insert(m);
  const VoteSet same = filter_by_models(set, keep);
  CHECK(same.records().size() == set.records().size());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(same.counts(i, j) == set.counts(i, j));
  }
}

TEST_CASE("filter drops battles with one endpoint outside the kept set") {
  VoteSet set({"x", "y", "z"});
  set.push(0, 2, VoteOutcome::kAWins);  // x vs z
  const VoteSet out = filter_by_models(set, {0, 1});
  CHECK(out.records().empty());
  CHECK(out.num_models() == 2);
}

TEST_CASE("filtered counts equal the submatrix of the original") {
  const VoteSet set = make_synthetic_history({.num_models = 6,
                                              .num_votes = 500,
                                              .seed = 3});
  const std::unordered_set<ModelId> keep = {1, 3, 4};
  const VoteSet out = filter_by_models(set, keep);
  // Brute-force rescan of the original records restricted to kept pairs.
  std::vector<std::int64_t> expect(9, 0);
  auto dense = [&](ModelId m) { return m == 1 ? 0 : m == 3 ? 1 : 2; };
  for (const VoteRecord& r : set.records()) {
    if (keep.count(r.a) == 0 || keep.count(r.b) == 0) continue;
    const int a = dense(r.a), b = dense(r.b);
    if (r.outcome == VoteOutcome::kAWins || r.outcome == VoteOutcome::kTie) {
      expect[a * 3 + b] += 1;
    }
    if (r.outcome == VoteOutcome::kBWins || r.outcome == VoteOutcome::kTie) {
      expect[b * 3 + a] += 1;
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(out.counts(i, j) == expect[i * 3 + j]);
    }
  }
}

TEST_CASE("filter rejects unknown model ids") {
  VoteSet set = two_model_set();
  CHECK_THROWS_AS(filter_by_models(set, {0, 5}), DataError);
}

TEST_CASE("counts always match a rebuild from records") {
  VoteSet set = make_synthetic_history({.num_models = 5,
                                        .num_votes = 300,
                                        .seed = 9});
  const std::vector<std::int64_t> rebuilt = set.recount();
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(set.counts(i, j) == rebuilt[i * 5 + j]);
    }
  }
}

TEST_CASE("serialize and reparse preserves counts") {
  const VoteSet set = make_synthetic_history({.num_models = 4,
                                              .num_votes = 250,
                                              .seed = 5});
  std::stringstream buffer;
  serialize_votes(set, buffer);
  const VoteSet back = parse_vote_lines(buffer);
  REQUIRE(back.num_models() == set.num_models());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(back.counts(i, j) ==
            set.counts(set.find_model(back.name(i)),
                       set.find_model(back.name(j))));
    }
  }
  CHECK(back.records().size() == set.records().size());
}
