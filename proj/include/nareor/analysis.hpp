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

enum class UniqueMode {
  distinct,   // distinct n-grams / total n-grams
  singleton,  // n-grams occurring exactly once / total n-grams
};

// Unique n-gram ratio over the whole-story token stream. Fewer than n
// tokens -> DataError.
double unique_ngram_ratio(const Story& story, int n, UniqueMode mode = UniqueMode::distinct);

struct LengthStats {
  double word_ratio = 0;
  double char_ratio = 0;
  int skipped = 0;  // pairs skipped for an empty input story
};

// Mean rewriting/input length ratios over (input, rewriting) pairs, in
// canonical tokens and in characters of the joined text.
LengthStats length_stats(const std::vector<std::pair<Story, Story>>& pairs);

// Share of each verb tag among VB/VBD/VBG/VBN/VBP/VBZ occurrences.
// No verb tags at all -> DataError.
std::map<std::string, double> verb_form_distribution(const std::vector<PosDoc>& docs);

struct ChangeTypeStats {
  struct PerType {
    double sent_frac = 0;  // flagged sentence pairs / all sentence pairs
    double stor_frac = 0;  // stories with >= 1 flagged pair
  };
  std::map<std::string, PerType> per_type;  // ellipsis, tense, timex, coreference
  double ge2_frac = 0;  // stories showing >= 2 of the 4 types
  double ge3_frac = 0;  // stories showing >= 3 of the 4 types
};

ChangeTypeStats change_type_stats(const std::vector<ChangeAnnotation>& annotations);

struct Correlation {
  double pearson = 0;
  double spearman = 0;
  double p_pearson = 1;
  double p_spearman = 1;
};

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Average ranks (ties averaged), 1-based.
std::vector<double> average_ranks(const std::vector<double>& v);

// Pearson, Spearman (Pearson on average ranks) and two-sided permutation
// p-values from n_perm seeded shuffles of y:
// p = (1 + #{|r_perm| >= |r_obs|}) / (n_perm + 1). Requires |x| = |y| >= 3
// and nonzero variance in both vectors.
Correlation correlate(const std::vector<double>& x, const std::vector<double>& y, int n_perm,
                      std::uint64_t seed);

}  // namespace nareor
