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

#include "nareor/tokenize.hpp"
#include "nareor/types.hpp"

namespace nareor {

// Sentence BLEU over n-gram orders 1..min(4, |candidate|) with uniform
// weights. Clipped counts take the per-n-gram max across references. The
// brevity penalty uses the reference length closest to the candidate's
// (ties go to the shorter). With smooth=true, orders >= 2 get +1 on both
// numerator and denominator. Empty candidate or zero unigram overlap -> 0.
double bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references,
            bool smooth = true);

// Corpus BLEU: counts pooled over all added pairs, orders 1..4, no
// smoothing, corpus-level brevity penalty.
class BleuAccumulator {
 public:
  void add(const TokenSeq& candidate, const std::vector<TokenSeq>& references);
  double score() const;

 private:
  double clipped_[4] = {0, 0, 0, 0};
  double total_[4] = {0, 0, 0, 0};
  double candidate_len_ = 0;
  double reference_len_ = 0;
};

// Unigram METEOR with exact and Porter-stem alignment stages (no synonym
// stage). Within each stage, token occurrences pair up left to right per
// surface form, which yields a maximal alignment. With m matches:
// P = m/|cand|, R = m/|ref|, Fmean = 10PR/(R+9P), penalty =
// 0.5*(chunks/m)^3, score = Fmean*(1-penalty); max over references; 0 when
// nothing aligns.
double meteor(const TokenSeq& candidate, const std::vector<TokenSeq>& references);

using Matrix = std::vector<std::vector<double>>;

struct BertScoreResult {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Greedy-matching similarity between two token embedding matrices: recall
// is the mean over reference rows of the best cosine against candidate
// rows, precision symmetrically, F1 the harmonic mean. Throws DataError for
// empty matrices, mixed dimensions, or zero-norm rows.
BertScoreResult bertscore(const Matrix& candidate, const Matrix& reference);

// Max F1 across references.
double bertscore_multi_f1(const Matrix& candidate, const std::vector<Matrix>& references);

// Target-order fidelity: mean METEOR over aligned pairs (output sentence at
// the target position of each original sentence, scored against that
// original sentence). Sentence-count mismatch -> DataError.
double tof_meteor(const Story& original, const Story& output, const NarrativeOrder& order);

// Same alignment with BERTScore F1 over per-sentence embedding matrices.
double tof_bertscore(const std::vector<Matrix>& original_sentences,
                     const std::vector<Matrix>& output_sentences, const NarrativeOrder& order);

// Per-sentence embedding matrices grouped by record id.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(const std::vector<EmbeddingRecord>& records);

  bool has(const std::string& id) const;
  // Matrices ordered by 1-based sentence index; missing id -> DataError.
  std::vector<Matrix> sentences(const std::string& id) const;
  // All sentence rows concatenated.
  Matrix whole(const std::string& id) const;

 private:
  std::map<std::string, std::map<int, Matrix>> by_id_;
};

struct ScoreOptions {
  bool with_bertscore = false;  // requires embeddings
  bool corpus_bleu = false;     // adds a pooled-count BLEU aggregate
  bool smooth_bleu = true;
};

struct ScoreReport {
  // Input order preserved; values in [0,1] (multiply by 100 for display).
  std::vector<std::pair<std::string, std::map<std::string, double>>> per_example;
  std::map<std::string, double> aggregate;  // arithmetic means (plus bleu_corpus if requested)
  std::vector<std::string> warnings;
};

// Scores each prediction against its supervised pair: BLEU and METEOR with
// all references, TOF-METEOR against the original story, and with
// embeddings also BERTScore and TOF-BERTScore. Embedding keys: "<id>" for
// the original story, "<id>::ref1"/"::ref2"... for references, "<id>::pred"
// for the prediction. Predictions split into sentences at .!? boundaries
// for the TOF alignment.
ScoreReport score_outputs(const std::vector<Prediction>& predictions,
                          const std::vector<SupervisedPair>& pairs,
                          const EmbeddingStore* embeddings, const ScoreOptions& options = {});

}  // namespace nareor
