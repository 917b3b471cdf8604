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
#include <utility>
#include <vector>

#include "nareor/types.hpp"

namespace nareor {

// Token corruption recipe. Fractions apply to the whole-story token count N:
// round(delete_frac*N) tokens are deleted, then floor(round(swap_frac*N)/2)
// disjoint pairs of surviving tokens are transposed, so roughly swap_frac*N
// tokens participate in swaps. Fraction-to-count conversion rounds half up.
struct NoiseSpec {
  double delete_frac = 0.125;
  double swap_frac = 0.125;
  std::uint64_t seed = 0;
};

struct NoiseResult {
  std::string text;
  std::vector<int> deleted_positions;                // original token indices, ascending
  std::vector<std::pair<int, int>> swapped_positions;  // original token indices per pair
  bool too_short = false;                            // input had < 2 tokens, returned unchanged
};

// Sentences permuted by the order; id gets a "-naive" suffix.
Story naive_reorder(const Story& story, const NarrativeOrder& order);

// Deletes then swaps over the whole-story token stream (sentence
// punctuation travels as ordinary tokens) and re-joins the survivors.
// Deleted positions are never swap participants. Deterministic in spec.seed.
NoiseResult noise(const Story& story, const NoiseSpec& spec);

// round-half-up of frac*n, used for every fraction-to-count conversion.
int noise_count(double frac, int n);

enum class DenoiseMode { plain, reordered };

// Stage-1 pairs: plain mode yields (noise(S), S); reordered mode yields
// (noise(naive_reorder(S,o)), naive_reorder(S,o)) and requires an order per
// story. Per-story seeds derive from (spec.seed, story id).
std::vector<TrainingExample> build_denoise_stage1(const std::vector<Story>& stories,
                                                  const std::map<std::string, NarrativeOrder>& orders,
                                                  const NoiseSpec& spec, DenoiseMode mode,
                                                  int jobs = 1);

// Stage-2 pairs: one example per (pair, reference) with the naively
// reordered story as input and the human rewriting as output.
std::vector<TrainingExample> build_denoise_stage2(const std::vector<SupervisedPair>& pairs);

}  // namespace nareor
