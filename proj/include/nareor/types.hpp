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

#include <map>
#include <string>
#include <vector>

#include "nareor/permutation.hpp"

namespace nareor {

// A story: id plus ordered non-empty sentences (canonically five).
struct Story {
  std::string id;
  std::vector<std::string> sentences;

  int sentence_count() const { return static_cast<int>(sentences.size()); }
  friend bool operator==(const Story&, const Story&) = default;
};

// Sentences joined with single spaces.
std::string story_text(const Story& story);

// A story with its assigned target order and zero or more human
// rewritings (one for train/dev, two for test).
struct SupervisedPair {
  Story story;
  NarrativeOrder target_order;
  std::vector<Story> references;  // reference k has id "<story id>::ref<k+1>"

  friend bool operator==(const SupervisedPair&, const SupervisedPair&) = default;
};

// One coreference mention: a token span within a sentence. Sentence index
// is 1-based; token offsets are 0-based half-open against the canonical
// tokenization of that sentence.
struct Mention {
  int sentence = 0;
  int token_start = 0;
  int token_end = 0;
  std::string text;

  friend bool operator==(const Mention&, const Mention&) = default;
};

struct CorefChain {
  std::string head;  // representative mention; empty means "use earliest mention text"
  std::vector<Mention> mentions;

  friend bool operator==(const CorefChain&, const CorefChain&) = default;
};

struct CorefDoc {
  std::string story_id;
  std::vector<CorefChain> chains;

  friend bool operator==(const CorefDoc&, const CorefDoc&) = default;
};

// PTB-style tags, one (token, tag) list per sentence.
struct PosDoc {
  std::string story_id;
  std::vector<std::vector<std::pair<std::string, std::string>>> tags;

  friend bool operator==(const PosDoc&, const PosDoc&) = default;
};

// Token vectors for one sentence of one keyed text; rows align with tokens.
struct EmbeddingRecord {
  std::string id;
  int sentence = 0;  // 1-based
  std::vector<std::string> tokens;
  std::vector<std::vector<double>> vectors;

  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};

enum class Method { denoise, reorder };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// One (input, output) pair for an external seq2seq trainer.
struct TrainingExample {
  std::string input;
  std::string output;
  Method method = Method::denoise;
  int stage = 1;
  std::string story_id;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

struct Prediction {
  std::string id;
  std::string output;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct OrderingPrediction {
  std::string id;
  NarrativeOrder pred_order;

  friend bool operator==(const OrderingPrediction&, const OrderingPrediction&) = default;
};

// A sentence-ordering item: shuffled sentences plus the true narrative
// position of each shuffled sentence. Never the identity shuffle.
struct OrderingInstance {
  std::string id;
  std::vector<std::string> shuffled;
  NarrativeOrder gold_order;
  std::string set_label;  // e.g. "control" / "challenge"; may be empty

  friend bool operator==(const OrderingInstance&, const OrderingInstance&) = default;
};

// Hand-annotated linguistic change flags per aligned sentence pair.
struct ChangeFlags {
  bool ellipsis = false;
  bool tense = false;
  bool timex = false;
  bool coreference = false;

  friend bool operator==(const ChangeFlags&, const ChangeFlags&) = default;
};

struct ChangeAnnotation {
  std::string story_id;
  std::vector<ChangeFlags> flags;  // one per sentence pair

  friend bool operator==(const ChangeAnnotation&, const ChangeAnnotation&) = default;
};

// Collected human ratings on 1-5 scales, keyed by metric name.
struct HumanScores {
  std::string story_id;
  std::map<std::string, double> scores;

  friend bool operator==(const HumanScores&, const HumanScores&) = default;
};

struct SplitAssignment {
  std::string split_name;            // trainSup, devSup, testSup, trainUnsup, devUnsup, testUnsup
  std::vector<std::string> story_ids;  // deterministic order, treated as a set

  friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

}  // namespace nareor
