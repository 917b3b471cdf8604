// Copyright 2026 The nareor Authors
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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nareor/types.hpp"

namespace nareor {

// Seeded uniform shuffle of the story's sentences, redrawn while it comes
// out as the identity. gold_order[k] = true narrative position of shuffled
// sentence k, so applying inverse(gold_order) to the shuffled sentences
// recovers the story. Throws DataError for fewer than 2 sentences.
OrderingInstance make_ordering_instance(const Story& story, std::uint64_t seed);

// Sentence-ordering metrics between a predicted and gold order:
//   sent_acc - % of positions where pred agrees with gold
//   rouge_s  - % of ordered (skip-bigram) pairs shared with gold
//   lcs      - longest common subsequence length as % of n
//   tau      - Kendall correlation in [-1, 1]
struct OrderingScore {
  double sent_acc = 0;  // 0..100
  double rouge_s = 0;   // 0..100
  double lcs = 0;       // 0..100
  double tau = 0;       // -1..1
};

OrderingScore score_ordering(const NarrativeOrder& pred, const NarrativeOrder& gold);

// Arithmetic means per metric, grouped by set label. Empty groups are
// simply absent.
std::map<std::string, OrderingScore> aggregate_ordering(
    const std::vector<std::pair<std::string, OrderingScore>>& labelled);

}  // namespace nareor
