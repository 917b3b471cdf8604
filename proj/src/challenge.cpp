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

#include "nareor/challenge.hpp"

#include <algorithm>
#include <set>

#include "nareor/rng.hpp"

namespace nareor {

OrderingInstance make_ordering_instance(const Story& story, std::uint64_t seed) {
  if (story.sentence_count() < 2)
    throw DataError("story '" + story.id + "' has fewer than 2 sentences");
  Rng rng(seed);
  NarrativeOrder shuffle = random_permutation(story.sentence_count(), rng);
  while (shuffle.is_identity()) shuffle = random_permutation(story.sentence_count(), rng);
  OrderingInstance inst;
  inst.id = story.id;
  inst.shuffled = apply_order(shuffle, story.sentences);
  inst.gold_order = shuffle;  // shuffled[k] came from true position shuffle.at(k+1)
  return inst;
}

OrderingScore score_ordering(const NarrativeOrder& pred, const NarrativeOrder& gold) {
  if (pred.size() != gold.size())
    throw DataError("score_ordering: length mismatch (" + std::to_string(pred.size()) + " vs " +
                    std::to_string(gold.size()) + ")");
  const int n = pred.size();
  OrderingScore score;

  int agree = 0;
  for (int p = 1; p <= n; ++p)
    if (pred.at(p) == gold.at(p)) ++agree;
  score.sent_acc = 100.0 * agree / n;

  std::set<std::pair<int, int>> gold_pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) gold_pairs.emplace(gold.at(i), gold.at(j));
  int shared = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (gold_pairs.count({pred.at(i), pred.at(j)}) > 0) ++shared;
  score.rouge_s = 100.0 * shared / (n * (n - 1) / 2);

  std::vector<std::vector<int>> lcs(static_cast<std::size_t>(n) + 1,
                                    std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      auto& cell = lcs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (pred.at(i) == gold.at(j))
        cell = lcs[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] + 1;
      else
        cell = std::max(lcs[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)],
                        lcs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) - 1]);
    }
  score.lcs = 100.0 * lcs[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)] / n;

  // tau compares the positions the two orders assign each sentence, so a
  // fully reversed prediction scores exactly -1.
  score.tau = kendall_tau(inverse(pred), inverse(gold));
  return score;
}

std::map<std::string, OrderingScore> aggregate_ordering(
    const std::vector<std::pair<std::string, OrderingScore>>& labelled) {
  if (labelled.empty()) throw DataError("aggregate_ordering: no reports");
  std::map<std::string, std::pair<OrderingScore, int>> sums;
  for (const auto& [label, s] : labelled) {
    auto& [sum, count] = sums[label];
    sum.sent_acc += s.sent_acc;
    sum.rouge_s += s.rouge_s;
    sum.lcs += s.lcs;
    sum.tau += s.tau;
    ++count;
  }
  std::map<std::string, OrderingScore> out;
  for (const auto& [label, entry] : sums) {
    const auto& [sum, count] = entry;
    out[label] = OrderingScore{sum.sent_acc / count, sum.rouge_s / count, sum.lcs / count,
                               sum.tau / count};
  }
  return out;
}

}  // namespace nareor
