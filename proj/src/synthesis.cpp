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

#include "nareor/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nareor/parallel.hpp"
#include "nareor/rng.hpp"
#include "nareor/tokenize.hpp"

namespace nareor {

Story naive_reorder(const Story& story, const NarrativeOrder& order) {
  Story out;
  out.id = story.id + "-naive";
  out.sentences = apply_order(order, story.sentences);
  return out;
}

int noise_count(double frac, int n) {
  return static_cast<int>(std::floor(frac * n + 0.5));
}

namespace {

void check_spec(const NoiseSpec& spec) {
  if (spec.delete_frac < 0.0 || spec.swap_frac < 0.0)
    throw DataError("noise fractions must be non-negative");
  if (spec.delete_frac + spec.swap_frac >= 1.0)
    throw DataError("delete_frac + swap_frac must stay below 1");
}

// First k entries of a seeded partial Fisher-Yates over [0, n).
std::vector<int> sample_positions(int n, int k, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

NoiseResult noise(const Story& story, const NoiseSpec& spec) {
  check_spec(spec);
  const std::string text = story_text(story);
  std::vector<std::string> tokens = tokenize_cased(text);
  const int n = static_cast<int>(tokens.size());

  NoiseResult result;
  if (n < 2) {
    result.text = text;
    result.too_short = true;
    return result;
  }

  Rng rng(spec.seed);
  const int n_delete = std::min(noise_count(spec.delete_frac, n), n);
  const int n_pairs = std::min(noise_count(spec.swap_frac, n) / 2, (n - n_delete) / 2);
  if (n_delete == 0 && n_pairs == 0) {
    result.text = text;
    return result;
  }

  result.deleted_positions = sample_positions(n, n_delete, rng);
  std::sort(result.deleted_positions.begin(), result.deleted_positions.end());

  std::vector<bool> deleted(static_cast<std::size_t>(n), false);
  for (int p : result.deleted_positions) deleted[static_cast<std::size_t>(p)] = true;
  std::vector<int> survivors;
  survivors.reserve(static_cast<std::size_t>(n - n_delete));
  for (int i = 0; i < n; ++i)
    if (!deleted[static_cast<std::size_t>(i)]) survivors.push_back(i);

  std::vector<std::string> kept;
  kept.reserve(survivors.size());
  for (int i : survivors) kept.push_back(tokens[static_cast<std::size_t>(i)]);

  auto picks = sample_positions(static_cast<int>(survivors.size()), 2 * n_pairs, rng);
  for (int p = 0; p < n_pairs; ++p) {
    int a = picks[static_cast<std::size_t>(2 * p)];
    int b = picks[static_cast<std::size_t>(2 * p + 1)];
    std::swap(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
    result.swapped_positions.emplace_back(survivors[static_cast<std::size_t>(a)],
                                          survivors[static_cast<std::size_t>(b)]);
  }

  result.text = detokenize(kept);
  return result;
}

std::vector<TrainingExample> build_denoise_stage1(const std::vector<Story>& stories,
                                                  const std::map<std::string, NarrativeOrder>& orders,
                                                  const NoiseSpec& spec, DenoiseMode mode,
                                                  int jobs) {
  check_spec(spec);
  std::vector<TrainingExample> out(stories.size());
  parallel_for(stories.size(), jobs, [&](std::size_t i) {
    const Story& story = stories[i];
    Story target = story;
    if (mode == DenoiseMode::reordered) {
      auto it = orders.find(story.id);
      if (it == orders.end())
        throw DataError("no target order for story '" + story.id + "' in reordered mode");
      target = naive_reorder(story, it->second);
    }
    NoiseSpec per_story = spec;
    per_story.seed = derive_seed(spec.seed, story.id);
    TrainingExample ex;
    ex.input = noise(target, per_story).text;
    ex.output = story_text(target);
    ex.method = Method::denoise;
    ex.stage = 1;
    ex.story_id = story.id;
    out[i] = std::move(ex);
  });
  return out;
}

std::vector<TrainingExample> build_denoise_stage2(const std::vector<SupervisedPair>& pairs) {
  std::vector<TrainingExample> out;
  for (const auto& pair : pairs) {
    if (pair.references.empty())
      throw DataError("story '" + pair.story.id + "' has no references for stage-2 pairs");
    const std::string input = story_text(naive_reorder(pair.story, pair.target_order));
    for (const auto& ref : pair.references) {
      if (ref.sentence_count() != pair.story.sentence_count())
        throw DataError("story '" + pair.story.id + "': reference sentence count mismatch");
      TrainingExample ex;
      ex.input = input;
      ex.output = story_text(ref);
      ex.method = Method::denoise;
      ex.stage = 2;
      ex.story_id = pair.story.id;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

}  // namespace nareor
