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

#include "nareor/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "nareor/stemmer.hpp"

namespace nareor {

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, int> ngram_counts(const TokenSeq& seq, int order) {
  std::map<Ngram, int> counts;
  const int n = static_cast<int>(seq.size());
  for (int i = 0; i + order <= n; ++i) {
    Ngram g(seq.tokens.begin() + i, seq.tokens.begin() + i + order);
    ++counts[g];
  }
  return counts;
}

// Clipped match count for one order: per n-gram, min(candidate count,
// max reference count).
void clipped_counts(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int order,
                    double* clipped, double* total) {
  auto cand = ngram_counts(candidate, order);
  std::map<Ngram, int> best_ref;
  for (const auto& ref : references)
    for (const auto& [g, c] : ngram_counts(ref, order)) {
      auto it = best_ref.find(g);
      if (it == best_ref.end() || it->second < c) best_ref[g] = c;
    }
  *clipped = 0;
  *total = 0;
  for (const auto& [g, c] : cand) {
    *total += c;
    auto it = best_ref.find(g);
    if (it != best_ref.end()) *clipped += std::min(c, it->second);
  }
}

// Closest reference length; ties go to the shorter reference.
int closest_reference_length(int candidate_len, const std::vector<TokenSeq>& references) {
  int best = static_cast<int>(references.front().size());
  for (const auto& ref : references) {
    int len = static_cast<int>(ref.size());
    int d = std::abs(len - candidate_len);
    int best_d = std::abs(best - candidate_len);
    if (d < best_d || (d == best_d && len < best)) best = len;
  }
  return best;
}

double brevity_penalty(double candidate_len, double reference_len) {
  if (candidate_len <= 0) return 0;
  if (candidate_len >= reference_len) return 1;
  return std::exp(1.0 - reference_len / candidate_len);
}

}  // namespace

double bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references, bool smooth) {
  if (references.empty()) throw DataError("bleu: need at least one reference");
  if (candidate.empty()) return 0;
  const int max_order = std::min<int>(4, static_cast<int>(candidate.size()));
  double log_sum = 0;
  for (int order = 1; order <= max_order; ++order) {
    double clipped = 0, total = 0;
    clipped_counts(candidate, references, order, &clipped, &total);
    if (smooth && order >= 2) {
      clipped += 1;
      total += 1;
    }
    if (clipped <= 0 || total <= 0) return 0;
    log_sum += std::log(clipped / total);
  }
  const int r = closest_reference_length(static_cast<int>(candidate.size()), references);
  return brevity_penalty(static_cast<double>(candidate.size()), static_cast<double>(r)) *
         std::exp(log_sum / max_order);
}

void BleuAccumulator::add(const TokenSeq& candidate, const std::vector<TokenSeq>& references) {
  if (references.empty()) throw DataError("bleu: need at least one reference");
  for (int order = 1; order <= 4; ++order) {
    double clipped = 0, total = 0;
    clipped_counts(candidate, references, order, &clipped, &total);
    clipped_[order - 1] += clipped;
    total_[order - 1] += total;
  }
  candidate_len_ += static_cast<double>(candidate.size());
  reference_len_ += closest_reference_length(static_cast<int>(candidate.size()), references);
}

double BleuAccumulator::score() const {
  double log_sum = 0;
  for (int order = 0; order < 4; ++order) {
    if (clipped_[order] <= 0 || total_[order] <= 0) return 0;
    log_sum += std::log(clipped_[order] / total_[order]);
  }
  return brevity_penalty(candidate_len_, reference_len_) * std::exp(log_sum / 4);
}

namespace {

struct Alignment {
  int matches = 0;
  int chunks = 0;
};

// Pairs occurrences of equal keys left to right, over unmatched slots only.
void align_stage(const std::vector<std::string>& cand_keys,
                 const std::vector<std::string>& ref_keys, std::vector<int>& cand_to_ref,
                 std::vector<bool>& ref_used) {
  std::map<std::string, std::vector<int>> ref_slots;
  for (int j = static_cast<int>(ref_keys.size()) - 1; j >= 0; --j)
    if (!ref_used[static_cast<std::size_t>(j)])
      ref_slots[ref_keys[static_cast<std::size_t>(j)]].push_back(j);  // descending, pop back = leftmost
  for (std::size_t i = 0; i < cand_keys.size(); ++i) {
    if (cand_to_ref[i] >= 0) continue;
    auto it = ref_slots.find(cand_keys[i]);
    if (it == ref_slots.end() || it->second.empty()) continue;
    int j = it->second.back();
    it->second.pop_back();
    cand_to_ref[i] = j;
    ref_used[static_cast<std::size_t>(j)] = true;
  }
}

Alignment align_meteor(const TokenSeq& candidate, const TokenSeq& reference) {
  std::vector<int> cand_to_ref(candidate.size(), -1);
  std::vector<bool> ref_used(reference.size(), false);

  align_stage(candidate.tokens, reference.tokens, cand_to_ref, ref_used);

  std::vector<std::string> cand_stems, ref_stems;
  cand_stems.reserve(candidate.size());
  for (const auto& t : candidate.tokens) cand_stems.push_back(porter_stem(t));
  ref_stems.reserve(reference.size());
  for (const auto& t : reference.tokens) ref_stems.push_back(porter_stem(t));
  align_stage(cand_stems, ref_stems, cand_to_ref, ref_used);

  Alignment a;
  int prev_cand = -2, prev_ref = -2;
  for (std::size_t i = 0; i < cand_to_ref.size(); ++i) {
    if (cand_to_ref[i] < 0) continue;
    ++a.matches;
    if (static_cast<int>(i) != prev_cand + 1 || cand_to_ref[i] != prev_ref + 1) ++a.chunks;
    prev_cand = static_cast<int>(i);
    prev_ref = cand_to_ref[i];
  }
  return a;
}

double meteor_single(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return 0;
  Alignment a = align_meteor(candidate, reference);
  if (a.matches == 0) return 0;
  const double m = a.matches;
  const double precision = m / static_cast<double>(candidate.size());
  const double recall = m / static_cast<double>(reference.size());
  const double fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double frag = static_cast<double>(a.chunks) / m;
  return fmean * (1.0 - 0.5 * frag * frag * frag);
}

}  // namespace

double meteor(const TokenSeq& candidate, const std::vector<TokenSeq>& references) {
  if (references.empty()) throw DataError("meteor: need at least one reference");
  double best = 0;
  for (const auto& ref : references) best = std::max(best, meteor_single(candidate, ref));
  return best;
}

namespace {

std::vector<double> row_norms(const Matrix& m, const char* name) {
  if (m.empty()) throw DataError(std::string("bertscore: ") + name + " matrix is empty");
  const std::size_t dim = m.front().size();
  std::vector<double> norms;
  norms.reserve(m.size());
  for (const auto& row : m) {
    if (row.size() != dim)
      throw DataError(std::string("bertscore: ") + name + " matrix has mixed row dimensions");
    double sq = 0;
    for (double x : row) sq += x * x;
    if (sq <= 0) throw DataError(std::string("bertscore: ") + name + " matrix has a zero-norm row");
    norms.push_back(std::sqrt(sq));
  }
  return norms;
}

}  // namespace

BertScoreResult bertscore(const Matrix& candidate, const Matrix& reference) {
  auto cand_norms = row_norms(candidate, "candidate");
  auto ref_norms = row_norms(reference, "reference");
  if (candidate.front().size() != reference.front().size())
    throw DataError("bertscore: candidate and reference dimensions differ");

  const std::size_t dim = candidate.front().size();
  std::vector<double> best_for_cand(candidate.size(), -2.0);
  std::vector<double> best_for_ref(reference.size(), -2.0);
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      double dot = 0;
      for (std::size_t d = 0; d < dim; ++d) dot += candidate[i][d] * reference[j][d];
      double cos = dot / (cand_norms[i] * ref_norms[j]);
      best_for_cand[i] = std::max(best_for_cand[i], cos);
      best_for_ref[j] = std::max(best_for_ref[j], cos);
    }
  }
  BertScoreResult r;
  for (double v : best_for_cand) r.precision += v;
  r.precision /= static_cast<double>(candidate.size());
  for (double v : best_for_ref) r.recall += v;
  r.recall /= static_cast<double>(reference.size());
  r.f1 = (r.precision + r.recall > 0) ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                                      : 0.0;
  return r;
}

double bertscore_multi_f1(const Matrix& candidate, const std::vector<Matrix>& references) {
  if (references.empty()) throw DataError("bertscore: need at least one reference");
  double best = -1.0;
  for (const auto& ref : references) best = std::max(best, bertscore(candidate, ref).f1);
  return best;
}

double tof_meteor(const Story& original, const Story& output, const NarrativeOrder& order) {
  const int n = original.sentence_count();
  if (output.sentence_count() != n || order.size() != n)
    throw DataError("tof: story '" + original.id + "': sentence counts disagree (original " +
                    std::to_string(n) + ", output " + std::to_string(output.sentence_count()) +
                    ", order " + std::to_string(order.size()) + ")");
  const NarrativeOrder inv = inverse(order);
  double sum = 0;
  for (int i = 1; i <= n; ++i) {
    const std::string& out_sentence = output.sentences[static_cast<std::size_t>(inv.at(i)) - 1];
    const std::string& orig_sentence = original.sentences[static_cast<std::size_t>(i) - 1];
    sum += meteor(tokenize(out_sentence), {tokenize(orig_sentence)});
  }
  return sum / n;
}

double tof_bertscore(const std::vector<Matrix>& original_sentences,
                     const std::vector<Matrix>& output_sentences, const NarrativeOrder& order) {
  const int n = static_cast<int>(original_sentences.size());
  if (static_cast<int>(output_sentences.size()) != n || order.size() != n)
    throw DataError("tof: per-sentence embedding counts disagree");
  const NarrativeOrder inv = inverse(order);
  double sum = 0;
  for (int i = 1; i <= n; ++i) {
    const Matrix& out_m = output_sentences[static_cast<std::size_t>(inv.at(i)) - 1];
    const Matrix& orig_m = original_sentences[static_cast<std::size_t>(i) - 1];
    sum += bertscore(out_m, orig_m).f1;
  }
  return sum / n;
}

EmbeddingStore::EmbeddingStore(const std::vector<EmbeddingRecord>& records) {
  for (const auto& r : records) {
    auto& rows = by_id_[r.id];
    if (!rows.emplace(r.sentence, r.vectors).second)
      throw DataError("embeddings: duplicate record for id '" + r.id + "' sentence " +
                      std::to_string(r.sentence));
  }
}

bool EmbeddingStore::has(const std::string& id) const { return by_id_.count(id) > 0; }

std::vector<Matrix> EmbeddingStore::sentences(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw DataError("embeddings: no record for id '" + id + "'");
  std::vector<Matrix> out;
  out.reserve(it->second.size());
  int expected = 1;
  for (const auto& [sent, m] : it->second) {
    if (sent != expected)
      throw DataError("embeddings: id '" + id + "' is missing sentence " +
                      std::to_string(expected));
    ++expected;
    out.push_back(m);
  }
  return out;
}

Matrix EmbeddingStore::whole(const std::string& id) const {
  Matrix out;
  for (const auto& m : sentences(id))
    out.insert(out.end(), m.begin(), m.end());
  return out;
}

ScoreReport score_outputs(const std::vector<Prediction>& predictions,
                          const std::vector<SupervisedPair>& pairs,
                          const EmbeddingStore* embeddings, const ScoreOptions& options) {
  if (predictions.empty()) throw DataError("score: empty prediction set");
  std::map<std::string, const SupervisedPair*> by_id;
  for (const auto& p : pairs) by_id[p.story.id] = &p;

  if (options.with_bertscore) {
    if (embeddings == nullptr) throw DataError("score: BERTScore requested without embeddings");
    std::vector<std::string> missing;
    for (const auto& pred : predictions) {
      auto it = by_id.find(pred.id);
      if (it == by_id.end()) continue;
      if (!embeddings->has(pred.id)) missing.push_back(pred.id);
      if (!embeddings->has(pred.id + "::pred")) missing.push_back(pred.id + "::pred");
      for (std::size_t k = 0; k < it->second->references.size(); ++k) {
        std::string key = pred.id + "::ref" + std::to_string(k + 1);
        if (!embeddings->has(key)) missing.push_back(key);
      }
    }
    if (!missing.empty()) {
      std::string joined;
      for (const auto& id : missing) {
        if (!joined.empty()) joined += ", ";
        joined += id;
      }
      throw DataError("score: missing embeddings for: " + joined);
    }
  }

  ScoreReport report;
  BleuAccumulator corpus;
  for (const auto& pred : predictions) {
    auto it = by_id.find(pred.id);
    if (it == by_id.end())
      throw DataError("score: prediction id '" + pred.id + "' has no supervised pair");
    const SupervisedPair& pair = *it->second;
    if (pair.references.empty())
      throw DataError("score: story '" + pred.id + "' has no references");

    TokenSeq cand = tokenize(pred.output);
    if (cand.empty()) report.warnings.push_back("empty prediction for id '" + pred.id + "'");
    std::vector<TokenSeq> refs;
    refs.reserve(pair.references.size());
    for (const auto& ref : pair.references) refs.push_back(tokenize(story_text(ref)));

    std::map<std::string, double> row;
    row["bleu"] = cand.empty() ? 0.0 : bleu(cand, refs, options.smooth_bleu);
    row["meteor"] = cand.empty() ? 0.0 : meteor(cand, refs);
    if (options.corpus_bleu) corpus.add(cand, refs);

    auto out_sentences = split_sentences(pred.output);
    Story output{pred.id + "::pred", out_sentences};
    row["tof_meteor"] = tof_meteor(pair.story, output, pair.target_order);

    if (options.with_bertscore) {
      std::vector<Matrix> ref_matrices;
      for (std::size_t k = 0; k < pair.references.size(); ++k)
        ref_matrices.push_back(embeddings->whole(pred.id + "::ref" + std::to_string(k + 1)));
      row["bertscore"] = bertscore_multi_f1(embeddings->whole(pred.id + "::pred"), ref_matrices);
      row["tof_bertscore"] = tof_bertscore(embeddings->sentences(pred.id),
                                           embeddings->sentences(pred.id + "::pred"),
                                           pair.target_order);
    }
    report.per_example.emplace_back(pred.id, std::move(row));
  }

  std::map<std::string, double> sums;
  for (const auto& [id, row] : report.per_example)
    for (const auto& [metric, value] : row) sums[metric] += value;
  for (const auto& [metric, sum] : sums)
    report.aggregate[metric] = sum / static_cast<double>(report.per_example.size());
  if (options.corpus_bleu) report.aggregate["bleu_corpus"] = corpus.score();
  return report;
}

}  // namespace nareor
