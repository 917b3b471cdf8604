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

#include "nareor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "nareor/rng.hpp"
#include "nareor/tokenize.hpp"

namespace nareor {

double unique_ngram_ratio(const Story& story, int n, UniqueMode mode) {
  if (n < 1) throw DataError("unique_ngram_ratio: n must be >= 1");
  const TokenSeq seq = tokenize(story_text(story));
  const int total = static_cast<int>(seq.size()) - n + 1;
  if (total < 1)
    throw DataError("story '" + story.id + "' has " + std::to_string(seq.size()) +
                    " tokens, fewer than n = " + std::to_string(n));
  std::map<std::vector<std::string>, int> counts;
  for (int i = 0; i < total; ++i)
    ++counts[{seq.tokens.begin() + i, seq.tokens.begin() + i + n}];
  int numerator = 0;
  if (mode == UniqueMode::distinct) {
    numerator = static_cast<int>(counts.size());
  } else {
    for (const auto& [g, c] : counts)
      if (c == 1) ++numerator;
  }
  return static_cast<double>(numerator) / total;
}

LengthStats length_stats(const std::vector<std::pair<Story, Story>>& pairs) {
  if (pairs.empty()) throw DataError("length_stats: no pairs");
  LengthStats stats;
  int used = 0;
  double word_sum = 0, char_sum = 0;
  for (const auto& [input, rewriting] : pairs) {
    const TokenSeq in_tokens = tokenize(story_text(input));
    const std::string in_text = story_text(input);
    if (in_tokens.empty() || in_text.empty()) {
      ++stats.skipped;
      continue;
    }
    const TokenSeq out_tokens = tokenize(story_text(rewriting));
    word_sum += static_cast<double>(out_tokens.size()) / static_cast<double>(in_tokens.size());
    char_sum += static_cast<double>(story_text(rewriting).size()) /
                static_cast<double>(in_text.size());
    ++used;
  }
  if (used == 0) throw DataError("length_stats: every pair had an empty input story");
  stats.word_ratio = word_sum / used;
  stats.char_ratio = char_sum / used;
  return stats;
}

std::map<std::string, double> verb_form_distribution(const std::vector<PosDoc>& docs) {
  static const std::set<std::string> kVerbTags = {"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"};
  std::map<std::string, double> counts;
  double total = 0;
  for (const auto& doc : docs)
    for (const auto& sentence : doc.tags)
      for (const auto& [token, tag] : sentence)
        if (kVerbTags.count(tag) > 0) {
          counts[tag] += 1;
          total += 1;
        }
  if (total == 0) throw DataError("verb_form_distribution: no verb tags in the corpus");
  for (auto& [tag, c] : counts) c /= total;
  for (const auto& tag : kVerbTags)
    if (counts.find(tag) == counts.end()) counts[tag] = 0;
  return counts;
}

ChangeTypeStats change_type_stats(const std::vector<ChangeAnnotation>& annotations) {
  if (annotations.empty()) throw DataError("change_type_stats: no annotations");
  struct Counter {
    int sent = 0;
    int stor = 0;
  };
  std::map<std::string, Counter> counters = {
      {"ellipsis", {}}, {"tense", {}}, {"timex", {}}, {"coreference", {}}};
  int total_pairs = 0;
  int ge2 = 0, ge3 = 0;
  for (const auto& a : annotations) {
    total_pairs += static_cast<int>(a.flags.size());
    std::map<std::string, bool> story_has = {
        {"ellipsis", false}, {"tense", false}, {"timex", false}, {"coreference", false}};
    for (const auto& f : a.flags) {
      if (f.ellipsis) { ++counters["ellipsis"].sent; story_has["ellipsis"] = true; }
      if (f.tense) { ++counters["tense"].sent; story_has["tense"] = true; }
      if (f.timex) { ++counters["timex"].sent; story_has["timex"] = true; }
      if (f.coreference) { ++counters["coreference"].sent; story_has["coreference"] = true; }
    }
    int types = 0;
    for (const auto& [name, has] : story_has) {
      if (has) {
        ++counters[name].stor;
        ++types;
      }
    }
    if (types >= 2) ++ge2;
    if (types >= 3) ++ge3;
  }
  ChangeTypeStats stats;
  for (const auto& [name, c] : counters) {
    ChangeTypeStats::PerType t;
    t.sent_frac = total_pairs > 0 ? static_cast<double>(c.sent) / total_pairs : 0.0;
    t.stor_frac = static_cast<double>(c.stor) / static_cast<double>(annotations.size());
    stats.per_type[name] = t;
  }
  stats.ge2_frac = static_cast<double>(ge2) / static_cast<double>(annotations.size());
  stats.ge3_frac = static_cast<double>(ge3) / static_cast<double>(annotations.size());
  return stats;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw DataError("pearson: need two vectors of equal length >= 3");
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0 || syy <= 0) throw DataError("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

Correlation correlate(const std::vector<double>& x, const std::vector<double>& y, int n_perm,
                      std::uint64_t seed) {
  if (x.size() != y.size() || x.size() < 3)
    throw DataError("correlate: need two vectors of equal length >= 3");
  if (n_perm < 1) throw DataError("correlate: n_perm must be >= 1");

  Correlation c;
  c.pearson = pearson(x, y);
  const std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  c.spearman = pearson(rx, ry);

  Rng rng(seed);
  std::vector<double> shuffled_y = y;
  std::vector<double> shuffled_ry = ry;
  int hits_pearson = 0, hits_spearman = 0;
  for (int p = 0; p < n_perm; ++p) {
    rng.shuffle(shuffled_y);
    if (std::abs(pearson(x, shuffled_y)) >= std::abs(c.pearson)) ++hits_pearson;
    rng.shuffle(shuffled_ry);
    if (std::abs(pearson(rx, shuffled_ry)) >= std::abs(c.spearman)) ++hits_spearman;
  }
  c.p_pearson = (1.0 + hits_pearson) / (n_perm + 1.0);
  c.p_spearman = (1.0 + hits_spearman) / (n_perm + 1.0);
  return c;
}

}  // namespace nareor
