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
//
// Tagged input encoding for order-conditioned rewriting. A story with
// sentences s1..sn, a target order and coreference chains becomes:
//
//   <a> s1' <b> s2' ... <sep> <letter of order[1]> ... <letter of order[n]>
//   <X1> head1 <X2> head2 ... <st>
//
// where each sk' has its chain mentions replaced by <Xj> tags. Tags are
// literal angle-bracket strings; downstream tokenizers must keep them atomic.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nareor/types.hpp"

namespace nareor {

struct EncodedInput {
  std::string text;
  // (tag, head mention) in tag order: X1, X2, ...
  std::vector<std::pair<std::string, std::string>> tag_map;
  NarrativeOrder order_used;
};

// Tags <X1>, <X2>, ... assigned by each chain's earliest mention (sentence,
// then token start). Returns one tag per chain, aligned with doc.chains.
// Identical spans claimed by two chains -> DataError.
std::vector<std::string> assign_coref_tags(const CorefDoc& doc);

// Head mention of a chain: the designated head, else the earliest mention's
// text.
std::string chain_head(const CorefChain& chain);

// Builds the full encoded input. Mentions are replaced longest-span-first,
// so a mention nested inside another yields adjacent tags (inner tag
// first). Throws DataError for n > 26, invalid spans, or span text that
// disagrees with the sentence tokenization.
EncodedInput encode_input(const Story& story, const NarrativeOrder& order, const CorefDoc& doc);

// Replaces each known coref tag with its head mention, strips sentence,
// separator and terminal tags, and normalizes whitespace. Unknown <Xk> tags
// raise DataError naming the tag.
std::string decode_tags(const std::string& text,
                        const std::vector<std::pair<std::string, std::string>>& tag_map);

struct ParsedEncoding {
  std::vector<std::string> sentences;  // letter tags stripped; coref tags kept
  NarrativeOrder order;
  std::vector<std::pair<std::string, std::string>> tag_map;
};

// Parses and structurally validates an encoded input: n sentence tags in
// a..z order, exactly one <sep>, n order tags forming a permutation, every
// coref tag used in a sentence declared in the trailing list, and a single
// terminal <st>. Throws DataError describing the first violation.
ParsedEncoding parse_encoded(const std::string& text);

// Remaps mention sentence indices through the order (original sentence i
// appears at target position inverse(order)[i]); token offsets within
// sentences are unchanged.
CorefDoc reindex_coref(const CorefDoc& doc, const NarrativeOrder& order);

// Stage-1 pairs from unsupervised stories: per story a fair seeded coin
// picks the inverse formulation (encode the naive reordering with the
// inverse order; output is the original story) or the autoencoding one
// (encode the story with the identity order). Missing order or coref doc
// -> DataError.
std::vector<TrainingExample> build_reorder_stage1(
    const std::vector<Story>& stories, const std::map<std::string, NarrativeOrder>& orders,
    const std::map<std::string, CorefDoc>& corefs, std::uint64_t seed, int jobs = 1);

// Stage-2 pairs: encode the original story with its target order; one
// example per reference.
std::vector<TrainingExample> build_reorder_stage2(const std::vector<SupervisedPair>& pairs,
                                                  const std::map<std::string, CorefDoc>& corefs,
                                                  int jobs = 1);

}  // namespace nareor
