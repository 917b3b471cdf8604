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
// Command-line front end. Every stochastic subcommand takes one --seed and
// derives per-item seeds from it, so reruns and any --jobs value produce
// byte-identical outputs. Each run prints a single JSON summary object on
// stdout; human-readable tables go to stderr.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nareor/analysis.hpp"
#include "nareor/challenge.hpp"
#include "nareor/corpus_io.hpp"
#include "nareor/encoding.hpp"
#include "nareor/metrics.hpp"
#include "nareor/parallel.hpp"
#include "nareor/rng.hpp"
#include "nareor/synthesis.hpp"
#include "nareor/tokenize.hpp"

namespace {

using nareor::DataError;
using nareor::UsageError;
using ordered_json = nlohmann::ordered_json;

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Stories from a source CSV, a story JSONL, or a supervised-pair JSONL.
std::vector<nareor::Story> load_stories_any(const std::string& path) {
  if (has_suffix(path, ".csv")) return nareor::load_rocstories(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open for reading");
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r\n") == std::string::npos) {
  }
  if (line.find("\"order\"") != std::string::npos) {
    std::vector<nareor::Story> stories;
    for (auto& p : nareor::read_pairs_jsonl(path)) stories.push_back(std::move(p.story));
    return stories;
  }
  return nareor::read_stories_jsonl(path);
}

std::map<std::string, nareor::CorefDoc> load_coref_map(const std::string& path) {
  std::map<std::string, nareor::CorefDoc> out;
  for (auto& doc : nareor::read_coref_jsonl(path)) {
    std::string id = doc.story_id;
    if (!out.emplace(id, std::move(doc)).second)
      throw DataError(path + ": duplicate coref document for story '" + id + "'");
  }
  return out;
}

void write_json_lines(const std::string& path, const std::vector<ordered_json>& objects) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open for writing");
  for (const auto& obj : objects) out << obj.dump() << '\n';
}

void emit_summary(const ordered_json& summary) { std::cout << summary.dump() << "\n"; }

struct CommonOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
};

int run_sample_orders(const std::string& corpus, const CommonOptions& common,
                      const std::string& out) {
  auto stories = load_stories_any(corpus);
  std::vector<nareor::SupervisedPair> pairs(stories.size());
  nareor::parallel_for(stories.size(), common.jobs, [&](std::size_t i) {
    nareor::Rng rng(nareor::derive_seed(common.seed, stories[i].id));
    nareor::SupervisedPair p;
    p.story = stories[i];
    p.target_order = nareor::sample_target_order(stories[i].sentence_count(), rng);
    pairs[i] = std::move(p);
  });
  nareor::write_pairs_jsonl(out, pairs);
  emit_summary({{"command", "sample-orders"}, {"stories", stories.size()}, {"out", out}});
  return 0;
}

int run_naive_reorder(const std::string& corpus, const std::string& out) {
  auto pairs = nareor::read_pairs_jsonl(corpus);
  std::vector<nareor::Story> reordered;
  reordered.reserve(pairs.size());
  for (const auto& p : pairs)
    reordered.push_back(nareor::naive_reorder(p.story, p.target_order));
  nareor::write_stories_jsonl(out, reordered);
  emit_summary({{"command", "naive-reorder"}, {"stories", reordered.size()}, {"out", out}});
  return 0;
}

int run_noise(const std::string& corpus, const CommonOptions& common, double delete_frac,
              double swap_frac, const std::string& out) {
  auto stories = load_stories_any(corpus);
  std::vector<nareor::Prediction> noised(stories.size());
  std::vector<char> too_short(stories.size(), 0);
  nareor::parallel_for(stories.size(), common.jobs, [&](std::size_t i) {
    nareor::NoiseSpec spec{delete_frac, swap_frac,
                           nareor::derive_seed(common.seed, stories[i].id)};
    auto result = nareor::noise(stories[i], spec);
    noised[i] = nareor::Prediction{stories[i].id, result.text};
    too_short[i] = result.too_short ? 1 : 0;
  });
  nareor::write_predictions_jsonl(out, noised);
  int warned = 0;
  for (char w : too_short) warned += w;
  emit_summary(
      {{"command", "noise"}, {"stories", stories.size()}, {"too_short", warned}, {"out", out}});
  return 0;
}

int run_make_train(const std::string& corpus, const std::string& coref_path,
                   const CommonOptions& common, const std::string& method, int stage,
                   const std::string& mode, double delete_frac, double swap_frac,
                   const std::string& out, bool seed_given) {
  if (stage == 1 && !seed_given)
    throw UsageError("make-train stage 1 is stochastic and requires --seed");
  std::vector<nareor::TrainingExample> examples;
  if (method == "denoise") {
    if (stage == 1) {
      nareor::NoiseSpec spec{delete_frac, swap_frac, common.seed};
      nareor::DenoiseMode dmode =
          mode == "reordered" ? nareor::DenoiseMode::reordered : nareor::DenoiseMode::plain;
      std::map<std::string, nareor::NarrativeOrder> orders;
      std::vector<nareor::Story> stories;
      if (dmode == nareor::DenoiseMode::reordered) {
        auto pairs = nareor::read_pairs_jsonl(corpus);
        for (auto& p : pairs) {
          orders.emplace(p.story.id, p.target_order);
          stories.push_back(std::move(p.story));
        }
      } else {
        stories = load_stories_any(corpus);
      }
      examples = nareor::build_denoise_stage1(stories, orders, spec, dmode, common.jobs);
    } else {
      examples = nareor::build_denoise_stage2(nareor::read_pairs_jsonl(corpus));
    }
  } else {  // reorder
    if (coref_path.empty())
      throw DataError("make-train --method reorder requires --coref with chain annotations");
    auto corefs = load_coref_map(coref_path);
    auto pairs = nareor::read_pairs_jsonl(corpus);
    for (const auto& p : pairs) {
      auto it = corefs.find(p.story.id);
      if (it != corefs.end()) nareor::validate_coref_against(it->second, p.story);
    }
    if (stage == 1) {
      std::map<std::string, nareor::NarrativeOrder> orders;
      std::vector<nareor::Story> stories;
      for (auto& p : pairs) {
        orders.emplace(p.story.id, p.target_order);
        stories.push_back(std::move(p.story));
      }
      examples = nareor::build_reorder_stage1(stories, orders, corefs, common.seed, common.jobs);
    } else {
      examples = nareor::build_reorder_stage2(pairs, corefs, common.jobs);
    }
  }
  nareor::write_training_jsonl(out, examples);
  emit_summary({{"command", "make-train"},
                {"method", method},
                {"stage", stage},
                {"examples", examples.size()},
                {"out", out}});
  return 0;
}

int run_encode(const std::string& corpus, const std::string& coref_path,
               const CommonOptions& common, const std::string& out) {
  auto pairs = nareor::read_pairs_jsonl(corpus);
  auto corefs = load_coref_map(coref_path);
  std::vector<ordered_json> lines(pairs.size());
  nareor::parallel_for(pairs.size(), common.jobs, [&](std::size_t i) {
    auto it = corefs.find(pairs[i].story.id);
    if (it == corefs.end())
      throw DataError("no coreference sidecar for story '" + pairs[i].story.id + "'");
    nareor::validate_coref_against(it->second, pairs[i].story);
    auto encoded = nareor::encode_input(pairs[i].story, pairs[i].target_order, it->second);
    lines[i] = ordered_json{{"id", pairs[i].story.id}, {"encoded", encoded.text}};
  });
  write_json_lines(out, lines);
  emit_summary({{"command", "encode"}, {"stories", pairs.size()}, {"out", out}});
  return 0;
}

int run_score(const std::string& predictions_path, const std::string& gold_path,
              const std::string& embeddings_path, bool corpus_bleu, const std::string& out,
              const std::string& out_summary) {
  auto predictions = nareor::read_predictions_jsonl(predictions_path);
  auto pairs = nareor::read_pairs_jsonl(gold_path);

  std::unique_ptr<nareor::EmbeddingStore> store;
  nareor::ScoreOptions options;
  options.corpus_bleu = corpus_bleu;
  if (!embeddings_path.empty()) {
    store =
        std::make_unique<nareor::EmbeddingStore>(nareor::read_embeddings_jsonl(embeddings_path));
    options.with_bertscore = true;
  }
  auto report = nareor::score_outputs(predictions, pairs, store.get(), options);

  std::vector<ordered_json> lines;
  lines.reserve(report.per_example.size());
  for (const auto& [id, row] : report.per_example) {
    ordered_json scores = ordered_json::object();
    for (const auto& [metric, value] : row) scores[metric] = value;
    lines.push_back(ordered_json{{"id", id}, {"scores", scores}});
  }
  write_json_lines(out, lines);

  ordered_json aggregate = ordered_json::object();
  ordered_json display = ordered_json::object();
  for (const auto& [metric, value] : report.aggregate) {
    aggregate[metric] = value;
    display[metric] = value * 100.0;
  }
  ordered_json summary{{"command", "score"},
                       {"examples", report.per_example.size()},
                       {"aggregate", aggregate},
                       {"aggregate_x100", display},
                       {"warnings", report.warnings},
                       {"out", out}};
  if (!out_summary.empty()) {
    std::ofstream sout(out_summary, std::ios::binary);
    if (!sout) throw DataError(out_summary + ": cannot open for writing");
    sout << summary.dump(2) << '\n';
  }

  // Reporting-order table, values x100.
  auto cell = [&](const char* metric) {
    auto it = report.aggregate.find(metric);
    if (it == report.aggregate.end()) return std::string("    -");
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%5.2f", it->second * 100.0);
    return std::string(buf);
  };
  std::cerr << "BERTScore   BLEU  METEOR  TOF-BERTScore  TOF-METEOR\n"
            << "    " << cell("bertscore") << "  " << cell("bleu") << "   " << cell("meteor")
            << "          " << cell("tof_bertscore") << "       " << cell("tof_meteor") << "\n";

  emit_summary(summary);
  return 0;
}

int run_analyze(const std::string& corpus, const std::string& pos_path,
                const std::string& changes_path, const std::string& ur_mode,
                const std::string& out, const std::string& out_csv) {
  auto pairs = nareor::read_pairs_jsonl(corpus);
  if (pairs.empty()) throw DataError(corpus + ": no supervised pairs");
  const nareor::UniqueMode mode =
      ur_mode == "singleton" ? nareor::UniqueMode::singleton : nareor::UniqueMode::distinct;

  ordered_json summary{{"command", "analyze"}, {"stories", pairs.size()}};

  // Macro-averaged unique n-gram ratios, inputs vs references.
  for (int n = 1; n <= 3; ++n) {
    double in_sum = 0, ref_sum = 0;
    int in_count = 0, ref_count = 0;
    for (const auto& p : pairs) {
      in_sum += nareor::unique_ngram_ratio(p.story, n, mode);
      ++in_count;
      for (const auto& ref : p.references) {
        ref_sum += nareor::unique_ngram_ratio(ref, n, mode);
        ++ref_count;
      }
    }
    const std::string key = "ur" + std::to_string(n);
    summary[key + "_input"] = in_sum / in_count;
    if (ref_count > 0) summary[key + "_reference"] = ref_sum / ref_count;
  }

  std::vector<std::pair<nareor::Story, nareor::Story>> length_pairs;
  for (const auto& p : pairs)
    for (const auto& ref : p.references) length_pairs.emplace_back(p.story, ref);
  if (!length_pairs.empty()) {
    auto stats = nareor::length_stats(length_pairs);
    summary["word_ratio"] = stats.word_ratio;
    summary["char_ratio"] = stats.char_ratio;
    if (stats.skipped > 0) summary["length_pairs_skipped"] = stats.skipped;
  }

  if (!pos_path.empty()) {
    auto docs = nareor::read_pos_jsonl(pos_path);
    std::vector<nareor::PosDoc> input_docs, reference_docs;
    for (auto& d : docs) {
      if (d.story_id.find("::ref") != std::string::npos)
        reference_docs.push_back(std::move(d));
      else
        input_docs.push_back(std::move(d));
    }
    if (!input_docs.empty()) {
      ordered_json dist = ordered_json::object();
      for (const auto& [tag, frac] : nareor::verb_form_distribution(input_docs)) dist[tag] = frac;
      summary["verb_forms_input"] = dist;
    }
    if (!reference_docs.empty()) {
      ordered_json dist = ordered_json::object();
      for (const auto& [tag, frac] : nareor::verb_form_distribution(reference_docs))
        dist[tag] = frac;
      summary["verb_forms_reference"] = dist;
    }
  }

  if (!changes_path.empty()) {
    auto annotations = nareor::read_changes_jsonl(changes_path);
    auto stats = nareor::change_type_stats(annotations);
    ordered_json changes = ordered_json::object();
    for (const auto& [name, t] : stats.per_type)
      changes[name] =
          ordered_json{{"sent_pct", t.sent_frac * 100.0}, {"stor_pct", t.stor_frac * 100.0}};
    changes["ge2_pct"] = stats.ge2_frac * 100.0;
    changes["ge3_pct"] = stats.ge3_frac * 100.0;
    summary["change_types"] = changes;
  }

  if (!out.empty()) {
    std::ofstream fout(out, std::ios::binary);
    if (!fout) throw DataError(out + ": cannot open for writing");
    fout << summary.dump(2) << '\n';
  }
  if (!out_csv.empty()) {
    // Flat metric,value rows for plotting; nested objects are dotted.
    std::ofstream csv(out_csv, std::ios::binary);
    if (!csv) throw DataError(out_csv + ": cannot open for writing");
    csv << "metric,value\n";
    std::function<void(const std::string&, const ordered_json&)> emit =
        [&](const std::string& prefix, const ordered_json& node) {
          if (node.is_number()) {
            csv << prefix << "," << node.dump() << "\n";
          } else if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
              emit(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
          }
        };
    for (auto it = summary.begin(); it != summary.end(); ++it)
      if (it.key() != "command") emit(it.key(), it.value());
  }
  emit_summary(summary);
  return 0;
}

int run_correlate(const std::string& auto_path, const std::string& human_path, int n_perm,
                  const CommonOptions& common, const std::string& out) {
  // Per-example automatic scores as written by `score`.
  std::map<std::string, std::map<std::string, double>> auto_scores;
  {
    std::ifstream in(auto_path, std::ios::binary);
    if (!in) throw DataError(auto_path + ": cannot open for reading");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      auto obj = ordered_json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object() || !obj.contains("id") ||
          !obj.contains("scores"))
        throw DataError(auto_path + ": line " + std::to_string(line_no) +
                        ": expected {\"id\", \"scores\"} records");
      for (auto it = obj["scores"].begin(); it != obj["scores"].end(); ++it)
        auto_scores[obj["id"].get<std::string>()][it.key()] = it.value().get<double>();
    }
  }
  auto human = nareor::read_human_scores_jsonl(human_path);

  std::set<std::string> auto_metrics, human_metrics;
  for (const auto& [id, row] : auto_scores)
    for (const auto& [m, v] : row) auto_metrics.insert(m);
  for (const auto& h : human)
    for (const auto& [m, v] : h.scores) human_metrics.insert(m);

  ordered_json table = ordered_json::object();
  std::vector<std::string> skipped;
  int computed = 0;
  for (const auto& am : auto_metrics) {
    ordered_json row = ordered_json::object();
    for (const auto& hm : human_metrics) {
      std::vector<double> x, y;
      for (const auto& h : human) {
        auto ait = auto_scores.find(h.story_id);
        if (ait == auto_scores.end()) continue;
        auto mit = ait->second.find(am);
        auto hit = h.scores.find(hm);
        if (mit == ait->second.end() || hit == h.scores.end()) continue;
        x.push_back(mit->second);
        y.push_back(hit->second);
      }
      if (x.size() < 3) continue;
      try {
        auto c =
            nareor::correlate(x, y, n_perm, nareor::derive_seed(common.seed, am + "/" + hm));
        row[hm] = ordered_json{{"pearson", c.pearson},
                               {"p_pearson", c.p_pearson},
                               {"spearman", c.spearman},
                               {"p_spearman", c.p_spearman},
                               {"n", x.size()}};
        ++computed;
      } catch (const DataError& e) {
        // A constant column has no defined correlation; report and move on.
        skipped.push_back(am + "/" + hm + ": " + e.what());
      }
    }
    if (!row.empty()) table[am] = row;
  }
  if (computed == 0) throw DataError("correlate: no metric pair had 3 or more joined examples");

  ordered_json summary{{"command", "correlate"},
                       {"n_perm", n_perm},
                       {"pairs", computed},
                       {"skipped", skipped},
                       {"correlations", table}};
  if (!out.empty()) {
    std::ofstream fout(out, std::ios::binary);
    if (!fout) throw DataError(out + ": cannot open for writing");
    fout << summary.dump(2) << '\n';
  }
  emit_summary(summary);
  return 0;
}

int run_challenge(const std::string& corpus, const std::string& predictions_path,
                  const CommonOptions& common, const std::string& out_control,
                  const std::string& out_challenge) {
  auto pairs = nareor::read_pairs_jsonl(corpus);
  if (pairs.empty()) throw DataError(corpus + ": no supervised pairs");

  std::map<std::string, nareor::Prediction> predictions;
  if (!predictions_path.empty())
    for (auto& p : nareor::read_predictions_jsonl(predictions_path))
      predictions.emplace(p.id, std::move(p));

  std::vector<nareor::OrderingInstance> control, challenge;
  for (const auto& p : pairs) {
    auto c = nareor::make_ordering_instance(
        p.story, nareor::derive_seed(common.seed, p.story.id + "::control"));
    c.set_label = "control";
    control.push_back(std::move(c));

    nareor::Story reordered;
    if (!predictions.empty()) {
      auto it = predictions.find(p.story.id);
      if (it == predictions.end())
        throw DataError("challenge: no prediction for story '" + p.story.id + "'");
      reordered = nareor::Story{p.story.id, nareor::split_sentences(it->second.output)};
      if (reordered.sentence_count() < 2)
        throw DataError("challenge: prediction for '" + p.story.id +
                        "' has fewer than 2 sentences");
    } else {
      if (p.references.empty())
        throw DataError("challenge: story '" + p.story.id +
                        "' has no reference rewriting (pass --predictions to use model outputs)");
      reordered = p.references.front();
      reordered.id = p.story.id;
    }
    auto ch = nareor::make_ordering_instance(
        reordered, nareor::derive_seed(common.seed, p.story.id + "::challenge"));
    ch.set_label = "challenge";
    challenge.push_back(std::move(ch));
  }
  nareor::write_ordering_instances_jsonl(out_control, control);
  nareor::write_ordering_instances_jsonl(out_challenge, challenge);
  emit_summary({{"command", "challenge"},
                {"instances", control.size() + challenge.size()},
                {"out_control", out_control},
                {"out_challenge", out_challenge}});
  return 0;
}

int run_score_ordering(const std::string& predictions_path, const std::string& gold_path,
                       const std::string& out) {
  auto predictions = nareor::read_ordering_predictions_jsonl(predictions_path);
  if (predictions.empty()) throw DataError(predictions_path + ": no ordering predictions");
  std::map<std::string, nareor::OrderingInstance> instances;
  for (auto& inst : nareor::read_ordering_instances_jsonl(gold_path)) {
    std::string key = inst.id;
    if (!instances.emplace(key, std::move(inst)).second)
      throw DataError(gold_path + ": duplicate instance id '" + key + "'");
  }

  std::vector<ordered_json> lines;
  std::vector<std::pair<std::string, nareor::OrderingScore>> labelled;
  for (const auto& pred : predictions) {
    auto it = instances.find(pred.id);
    if (it == instances.end())
      throw DataError("score-ordering: prediction id '" + pred.id + "' has no gold instance");
    const auto& inst = it->second;
    auto s = nareor::score_ordering(pred.pred_order, inst.gold_order);
    labelled.emplace_back(inst.set_label, s);
    lines.push_back(ordered_json{{"id", inst.id},
                                 {"set", inst.set_label},
                                 {"sent_acc", s.sent_acc},
                                 {"rouge_s", s.rouge_s},
                                 {"lcs", s.lcs},
                                 {"tau", s.tau}});
  }
  write_json_lines(out, lines);

  auto groups = nareor::aggregate_ordering(labelled);
  ordered_json group_json = ordered_json::object();
  std::cerr << "set  SentAcc  Rouge-S  LCS  Kendall-tau\n";
  for (const auto& [label, s] : groups) {
    const std::string name = label.empty() ? "all" : label;
    group_json[name] = ordered_json{
        {"sent_acc", s.sent_acc}, {"rouge_s", s.rouge_s}, {"lcs", s.lcs}, {"tau", s.tau}};
    std::cerr << name << "  " << s.sent_acc << "  " << s.rouge_s << "  " << s.lcs << "  " << s.tau
              << "\n";
  }
  emit_summary({{"command", "score-ordering"},
                {"instances", predictions.size()},
                {"groups", group_json},
                {"out", out}});
  return 0;
}

int run_make_splits(const std::string& train_path, const std::string& dev_path,
                    const std::string& test_path, const CommonOptions& common,
                    const std::string& out_dir, const std::vector<int>& sup_sizes) {
  auto train = load_stories_any(train_path);
  auto dev = load_stories_any(dev_path);
  auto test = load_stories_any(test_path);
  nareor::SplitSizes sizes;
  if (!sup_sizes.empty()) {
    if (sup_sizes.size() != 3) throw UsageError("--sup-sizes expects three integers");
    sizes.train_sup = sup_sizes[0];
    sizes.dev_sup = sup_sizes[1];
    sizes.test_sup = sup_sizes[2];
  }
  auto splits = nareor::make_splits(train, dev, test, common.seed, sizes);

  std::map<std::string, const nareor::Story*> by_id;
  for (const auto* pool : {&train, &dev, &test})
    for (const auto& s : *pool) by_id[s.id] = &s;

  std::filesystem::create_directories(out_dir);
  ordered_json sizes_json = ordered_json::object();
  for (const auto& split : splits) {
    std::vector<nareor::Story> stories;
    stories.reserve(split.story_ids.size());
    for (const auto& id : split.story_ids) stories.push_back(*by_id.at(id));
    const std::string path =
        (std::filesystem::path(out_dir) / (split.split_name + ".jsonl")).string();
    nareor::write_stories_jsonl(path, stories);
    sizes_json[split.split_name] = split.story_ids.size();
  }
  emit_summary({{"command", "make-splits"}, {"sizes", sizes_json}, {"out_dir", out_dir}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data synthesis and evaluation toolkit for narrative reordering"};
  app.require_subcommand(1);

  CommonOptions common;
  bool seed_given = false;
  std::string corpus, coref, pos, embeddings, out, out_summary, out_control, out_challenge;
  std::string predictions, gold, human_path, changes, out_dir, train_path, dev_path, test_path;
  std::string method, mode = "plain", ur_mode = "distinct";
  int stage = 1, n_perm = 10000;
  double delete_frac = 0.125, swap_frac = 0.125;
  bool corpus_bleu = false;
  std::vector<int> sup_sizes;

  auto add_seed = [&](CLI::App* cmd, bool required) {
    auto* opt =
        cmd->add_option("--seed", common.seed, "Run seed; per-item seeds derive from it");
    if (required) opt->required();
    opt->each([&seed_given](const std::string&) { seed_given = true; });
  };
  auto add_jobs = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", common.jobs, "Worker threads (output is identical for any value)")
        ->check(CLI::PositiveNumber);
  };

  auto* sample = app.add_subcommand("sample-orders", "Assign a target narrative order per story");
  sample->add_option("--corpus", corpus, "Story corpus (.csv or .jsonl)")->required();
  sample->add_option("--out", out, "Output supervised-pair JSONL")->required();
  add_seed(sample, true);
  add_jobs(sample);

  auto* naive = app.add_subcommand("naive-reorder", "Permute story sentences by their orders");
  naive->add_option("--corpus", corpus, "Supervised-pair JSONL with orders")->required();
  naive->add_option("--out", out, "Output story JSONL")->required();

  auto* noise_cmd = app.add_subcommand("noise", "Delete and swap tokens in each story");
  noise_cmd->add_option("--corpus", corpus, "Story corpus (.csv or .jsonl)")->required();
  noise_cmd->add_option("--delete-frac", delete_frac, "Fraction of tokens to delete");
  noise_cmd->add_option("--swap-frac", swap_frac, "Fraction of tokens to swap");
  noise_cmd->add_option("--out", out, "Output prediction JSONL")->required();
  add_seed(noise_cmd, true);
  add_jobs(noise_cmd);

  auto* train_cmd = app.add_subcommand("make-train", "Build training pairs for a method/stage");
  train_cmd->add_option("--corpus", corpus, "Stories (stage-1 plain) or supervised pairs")
      ->required();
  train_cmd->add_option("--coref", coref, "Coref JSONL (required for --method reorder)");
  train_cmd->add_option("--method", method, "denoise or reorder")
      ->check(CLI::IsMember({"denoise", "reorder"}))
      ->required();
  train_cmd->add_option("--stage", stage, "1 or 2")->check(CLI::Range(1, 2))->required();
  train_cmd->add_option("--mode", mode, "Stage-1 denoise source: plain or reordered")
      ->check(CLI::IsMember({"plain", "reordered"}));
  train_cmd->add_option("--delete-frac", delete_frac, "Fraction of tokens to delete");
  train_cmd->add_option("--swap-frac", swap_frac, "Fraction of tokens to swap");
  train_cmd->add_option("--out", out, "Output training-example JSONL")->required();
  add_seed(train_cmd, false);
  add_jobs(train_cmd);

  auto* encode_cmd = app.add_subcommand("encode", "Render tagged inputs for the reorder method");
  encode_cmd->add_option("--corpus", corpus, "Supervised-pair JSONL")->required();
  encode_cmd->add_option("--coref", coref, "Coref JSONL")->required();
  encode_cmd->add_option("--out", out, "Output {id, encoded} JSONL")->required();
  add_jobs(encode_cmd);

  auto* score_cmd = app.add_subcommand("score", "Score rewritten stories against references");
  score_cmd->add_option("--predictions", predictions, "Prediction JSONL")->required();
  score_cmd->add_option("--gold", gold, "Supervised-pair JSONL with references")->required();
  score_cmd->add_option("--embeddings", embeddings,
                        "Embedding JSONL (enables BERTScore and TOF-BERTScore)");
  score_cmd->add_flag("--corpus-bleu", corpus_bleu, "Also report pooled corpus BLEU");
  score_cmd->add_option("--out", out, "Per-example score JSONL")->required();
  score_cmd->add_option("--out-summary", out_summary, "Optional summary JSON file");

  auto* analyze_cmd = app.add_subcommand("analyze", "Corpus statistics over supervised pairs");
  analyze_cmd->add_option("--corpus", corpus, "Supervised-pair JSONL")->required();
  analyze_cmd->add_option("--pos", pos, "POS JSONL (input ids plus ::refN rows)");
  analyze_cmd->add_option("--changes", changes, "Change-annotation JSONL");
  analyze_cmd->add_option("--ur-mode", ur_mode, "distinct or singleton n-gram counting")
      ->check(CLI::IsMember({"distinct", "singleton"}));
  analyze_cmd->add_option("--out", out, "Optional report JSON file");
  analyze_cmd->add_option("--out-csv", out_summary, "Optional flat metric,value CSV");

  auto* correlate_cmd = app.add_subcommand("correlate", "Correlate automatic and human metrics");
  correlate_cmd->add_option("--auto", predictions, "Per-example score JSONL (from `score`)")
      ->required();
  correlate_cmd->add_option("--human", human_path, "Human-scores JSONL")->required();
  correlate_cmd->add_option("--n-perm", n_perm, "Permutation-test shuffles")
      ->check(CLI::PositiveNumber);
  correlate_cmd->add_option("--out", out, "Optional report JSON file");
  add_seed(correlate_cmd, true);

  auto* challenge_cmd =
      app.add_subcommand("challenge", "Build control/challenge sentence-ordering sets");
  challenge_cmd->add_option("--corpus", corpus, "Supervised-pair JSONL with references")
      ->required();
  challenge_cmd->add_option("--predictions", predictions,
                            "Optional model outputs to build the challenge set from");
  challenge_cmd->add_option("--out-control", out_control, "Control instance JSONL")->required();
  challenge_cmd->add_option("--out-challenge", out_challenge, "Challenge instance JSONL")
      ->required();
  add_seed(challenge_cmd, true);

  auto* score_ord_cmd =
      app.add_subcommand("score-ordering", "Score sentence-ordering predictions");
  score_ord_cmd->add_option("--predictions", predictions, "Ordering-prediction JSONL")
      ->required();
  score_ord_cmd->add_option("--gold", gold, "Ordering-instance JSONL")->required();
  score_ord_cmd->add_option("--out", out, "Per-instance score JSONL")->required();

  auto* splits_cmd = app.add_subcommand("make-splits", "Select supervised/unsupervised splits");
  splits_cmd->add_option("--train", train_path, "Train pool (.csv or .jsonl)")->required();
  splits_cmd->add_option("--dev", dev_path, "Dev pool (.csv or .jsonl)")->required();
  splits_cmd->add_option("--test", test_path, "Test pool (.csv or .jsonl)")->required();
  splits_cmd->add_option("--sup-sizes", sup_sizes, "Supervised sizes: train dev test");
  splits_cmd->add_option("--out-dir", out_dir, "Directory for the six split files")->required();
  add_seed(splits_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(sample)) return run_sample_orders(corpus, common, out);
    if (app.got_subcommand(naive)) return run_naive_reorder(corpus, out);
    if (app.got_subcommand(noise_cmd))
      return run_noise(corpus, common, delete_frac, swap_frac, out);
    if (app.got_subcommand(train_cmd))
      return run_make_train(corpus, coref, common, method, stage, mode, delete_frac, swap_frac,
                            out, seed_given);
    if (app.got_subcommand(encode_cmd)) return run_encode(corpus, coref, common, out);
    if (app.got_subcommand(score_cmd))
      return run_score(predictions, gold, embeddings, corpus_bleu, out, out_summary);
    if (app.got_subcommand(analyze_cmd))
      return run_analyze(corpus, pos, changes, ur_mode, out, out_summary);
    if (app.got_subcommand(correlate_cmd))
      return run_correlate(predictions, human_path, n_perm, common, out);
    if (app.got_subcommand(challenge_cmd))
      return run_challenge(corpus, predictions, common, out_control, out_challenge);
    if (app.got_subcommand(score_ord_cmd)) return run_score_ordering(predictions, gold, out);
    if (app.got_subcommand(splits_cmd))
      return run_make_splits(train_path, dev_path, test_path, common, out_dir, sup_sizes);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
