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
// File formats.
//
// Source corpus CSV (header + one story per row):
//   train variant: storyid,storytitle,sentence1..sentence5        (7 columns)
//   eval variant:  InputStoryid,InputSentence1..4,
//                  RandomFifthSentenceQuiz1,RandomFifthSentenceQuiz2,
//                  AnswerRightEnding                               (8 columns)
//   The eval variant maps the answer-selected quiz sentence to sentence 5.
//
// JSONL records, one object per line:
//   story:               {"id", "sentences": [..]}
//   supervised-pair:     {"id", "sentences", "order": [1-based], "references": [[..], ..]}
//   coref:               {"id", "chains": [{"head", "mentions":
//                          [{"sent": 1-based, "start", "end", "text"}, ..]}, ..]}
//   pos-tags:            {"id", "tags": [[["token","TAG"], ..] per sentence]}
//   embeddings:          {"id", "sent": 1-based, "tokens": [..], "vectors": [[..], ..]}
//   training-example:    {"input", "output", "method", "stage", "story_id"}
//   prediction:          {"id", "output"}
//   ordering-prediction: {"id", "pred_order": [1-based]}
//   ordering-instance:   {"id", "shuffled": [..], "gold_order": [1-based], "set"?}
//   change-annotation:   {"id", "flags": [{"ellipsis","tense","timex","coreference"}, ..]}
//   human-scores:        {"id", "scores": {"fluency": .., ..}}

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nareor/types.hpp"

namespace nareor {

// Reads either CSV variant; picks the coherent ending as sentence 5 for the
// eval variant. Errors name the offending row.
std::vector<Story> load_rocstories(const std::string& path);

struct SplitSizes {
  int train_sup = 600;
  int dev_sup = 200;
  int test_sup = 200;
};

// Seeded uniform selection of the supervised stories from each pool; the
// remainder of each pool becomes the matching unsupervised split. Returns
// the six assignments in the order trainSup, devSup, testSup, trainUnsup,
// devUnsup, testUnsup.
std::vector<SplitAssignment> make_splits(const std::vector<Story>& train_pool,
                                         const std::vector<Story>& dev_pool,
                                         const std::vector<Story>& test_pool, std::uint64_t seed,
                                         const SplitSizes& sizes = {});

std::vector<Story> read_stories_jsonl(const std::string& path);
void write_stories_jsonl(const std::string& path, const std::vector<Story>& stories);

std::vector<SupervisedPair> read_pairs_jsonl(const std::string& path);
void write_pairs_jsonl(const std::string& path, const std::vector<SupervisedPair>& pairs);

std::vector<CorefDoc> read_coref_jsonl(const std::string& path);
void write_coref_jsonl(const std::string& path, const std::vector<CorefDoc>& docs);

std::vector<PosDoc> read_pos_jsonl(const std::string& path);
void write_pos_jsonl(const std::string& path, const std::vector<PosDoc>& docs);

std::vector<EmbeddingRecord> read_embeddings_jsonl(const std::string& path);
void write_embeddings_jsonl(const std::string& path, const std::vector<EmbeddingRecord>& records);

std::vector<TrainingExample> read_training_jsonl(const std::string& path);
void write_training_jsonl(const std::string& path, const std::vector<TrainingExample>& examples);

std::vector<Prediction> read_predictions_jsonl(const std::string& path);
void write_predictions_jsonl(const std::string& path, const std::vector<Prediction>& preds);

std::vector<OrderingPrediction> read_ordering_predictions_jsonl(const std::string& path);
void write_ordering_predictions_jsonl(const std::string& path,
                                      const std::vector<OrderingPrediction>& preds);

std::vector<OrderingInstance> read_ordering_instances_jsonl(const std::string& path);
void write_ordering_instances_jsonl(const std::string& path,
                                    const std::vector<OrderingInstance>& instances);

std::vector<ChangeAnnotation> read_changes_jsonl(const std::string& path);
void write_changes_jsonl(const std::string& path, const std::vector<ChangeAnnotation>& annotations);

std::vector<HumanScores> read_human_scores_jsonl(const std::string& path);
void write_human_scores_jsonl(const std::string& path, const std::vector<HumanScores>& scores);

// Kind-tagged roundtrip used by generic tooling and tests. Known kinds:
// story, supervised-pair, coref, pos-tags, embeddings, training-example,
// prediction, ordering-prediction, ordering-instance, change-annotation,
// human-scores. Unknown kind -> DataError.
std::vector<std::string> read_jsonl_lines_validated(const std::string& path,
                                                    const std::string& kind);

// Checks every mention span against the canonical tokenization of its
// sentence (bounds and surface text). Throws DataError on mismatch.
void validate_coref_against(const CorefDoc& doc, const Story& story);

}  // namespace nareor
