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

#include "nareor/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nareor/rng.hpp"
#include "nareor/tokenize.hpp"

namespace nareor {

using ordered_json = nlohmann::ordered_json;

std::string story_text(const Story& story) {
  std::string out;
  for (const auto& s : story.sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

std::string method_name(Method m) { return m == Method::denoise ? "denoise" : "reorder"; }

Method method_from_name(const std::string& name) {
  if (name == "denoise") return Method::denoise;
  if (name == "reorder") return Method::reorder;
  throw DataError("unknown method '" + name + "' (expected denoise or reorder)");
}

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string lower_copy(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void check_story(const Story& story, const std::string& where) {
  if (story.id.empty()) throw DataError(where + ": story id is empty");
  if (story.sentence_count() < 2)
    throw DataError(where + ": story '" + story.id + "' has " +
                    std::to_string(story.sentence_count()) + " sentences, need at least 2");
  for (const auto& s : story.sentences)
    if (trim_copy(s).empty())
      throw DataError(where + ": story '" + story.id + "' has an empty sentence");
}

// RFC-4180 style rows: quoted fields, doubled quotes as escapes.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get();
      row.push_back(field);
      field.clear();
      if (row.size() > 1 || !row[0].empty()) rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  if (!any) throw DataError("empty file");
  return rows;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open for writing");
  return out;
}

}  // namespace

std::vector<Story> load_rocstories(const std::string& path) {
  auto in = open_input(path);
  auto rows = parse_csv(in);
  if (rows.empty()) throw DataError(path + ": empty file");
  const auto& header = rows[0];
  const std::string first = lower_copy(trim_copy(header.empty() ? "" : header[0]));
  bool eval_variant;
  std::size_t expected_cols;
  if (first == "storyid") {
    eval_variant = false;
    expected_cols = 7;
  } else if (first == "inputstoryid") {
    eval_variant = true;
    expected_cols = 8;
  } else {
    throw DataError(path + ": unrecognized header (first column '" + first + "')");
  }
  if (header.size() != expected_cols)
    throw DataError(path + ": header: expected " + std::to_string(expected_cols) +
                    " columns, got " + std::to_string(header.size()));
  if (rows.size() == 1) throw DataError(path + ": no story rows");

  std::vector<Story> stories;
  std::set<std::string> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = path + ": row " + std::to_string(r + 1);
    if (row.size() != expected_cols)
      throw DataError(where + ": expected " + std::to_string(expected_cols) + " columns, got " +
                      std::to_string(row.size()));
    Story story;
    story.id = trim_copy(row[0]);
    if (!eval_variant) {
      for (std::size_t i = 2; i < 7; ++i) story.sentences.push_back(trim_copy(row[i]));
    } else {
      for (std::size_t i = 1; i < 5; ++i) story.sentences.push_back(trim_copy(row[i]));
      const std::string answer = trim_copy(row[7]);
      if (answer == "1") {
        story.sentences.push_back(trim_copy(row[5]));
      } else if (answer == "2") {
        story.sentences.push_back(trim_copy(row[6]));
      } else {
        throw DataError(where + ": ending selector must be 1 or 2, got '" + answer + "'");
      }
    }
    check_story(story, where);
    if (!seen_ids.insert(story.id).second)
      throw DataError(where + ": duplicate story id '" + story.id + "'");
    stories.push_back(std::move(story));
  }
  return stories;
}

std::vector<SplitAssignment> make_splits(const std::vector<Story>& train_pool,
                                         const std::vector<Story>& dev_pool,
                                         const std::vector<Story>& test_pool, std::uint64_t seed,
                                         const SplitSizes& sizes) {
  struct PoolSpec {
    const std::vector<Story>* pool;
    int sup_size;
    std::string sup_name;
    std::string unsup_name;
  };
  const PoolSpec specs[] = {
      {&train_pool, sizes.train_sup, "trainSup", "trainUnsup"},
      {&dev_pool, sizes.dev_sup, "devSup", "devUnsup"},
      {&test_pool, sizes.test_sup, "testSup", "testUnsup"},
  };
  std::vector<SplitAssignment> sup_splits, unsup_splits;
  for (const auto& spec : specs) {
    if (static_cast<int>(spec.pool->size()) < spec.sup_size)
      throw DataError("pool for " + spec.sup_name + " has " + std::to_string(spec.pool->size()) +
                      " stories, need " + std::to_string(spec.sup_size));
    std::vector<std::string> ids;
    ids.reserve(spec.pool->size());
    std::set<std::string> seen;
    for (const auto& s : *spec.pool) {
      if (!seen.insert(s.id).second)
        throw DataError("duplicate story id '" + s.id + "' in pool for " + spec.sup_name);
      ids.push_back(s.id);
    }
    Rng rng(derive_seed(seed, spec.sup_name));
    rng.shuffle(ids);
    SplitAssignment sup{spec.sup_name,
                        {ids.begin(), ids.begin() + spec.sup_size}};
    SplitAssignment unsup{spec.unsup_name, {ids.begin() + spec.sup_size, ids.end()}};
    sup_splits.push_back(std::move(sup));
    unsup_splits.push_back(std::move(unsup));
  }
  std::vector<SplitAssignment> out = std::move(sup_splits);
  for (auto& u : unsup_splits) out.push_back(std::move(u));
  return out;
}

// ---------------------------------------------------------------------------
// JSONL
// ---------------------------------------------------------------------------

namespace {

struct NumberedObject {
  std::size_t line_no;
  ordered_json value;
};

std::vector<NumberedObject> read_jsonl_objects(const std::string& path) {
  auto in = open_input(path);
  std::vector<NumberedObject> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_copy(line).empty()) continue;
    ordered_json obj = ordered_json::parse(line, nullptr, false);
    if (obj.is_discarded())
      throw DataError(path + ": line " + std::to_string(line_no) + ": parse error");
    if (!obj.is_object())
      throw DataError(path + ": line " + std::to_string(line_no) + ": expected a JSON object");
    out.push_back(NumberedObject{line_no, std::move(obj)});
  }
  return out;
}

void write_lines(const std::string& path, const std::vector<ordered_json>& objects) {
  auto out = open_output(path);
  for (const auto& obj : objects) out << obj.dump() << '\n';
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DataError(where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw DataError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> require_string_array(const ordered_json& v, const std::string& where,
                                              const std::string& what) {
  if (!v.is_array()) throw DataError(where + ": " + what + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw DataError(where + ": " + what + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

NarrativeOrder order_from_json(const ordered_json& v, const std::string& where,
                               const std::string& what) {
  if (!v.is_array()) throw DataError(where + ": " + what + " must be an array of integers");
  std::vector<int> m;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw DataError(where + ": " + what + " must contain integers");
    m.push_back(e.get<int>());
  }
  try {
    return NarrativeOrder(std::move(m));
  } catch (const DataError& e) {
    throw DataError(where + ": " + what + ": " + e.what());
  }
}

template <typename T>
std::vector<T> read_typed(const std::string& path,
                          T (*from_json_fn)(const ordered_json&, const std::string&)) {
  auto objects = read_jsonl_objects(path);
  std::vector<T> out;
  out.reserve(objects.size());
  for (const auto& obj : objects)
    out.push_back(from_json_fn(obj.value, path + ": line " + std::to_string(obj.line_no)));
  return out;
}

// -- story ------------------------------------------------------------------

ordered_json story_to_json(const Story& s) {
  return ordered_json{{"id", s.id}, {"sentences", s.sentences}};
}

Story story_from_json(const ordered_json& obj, const std::string& where) {
  Story s;
  s.id = require_string(obj, "id", where);
  s.sentences = require_string_array(require(obj, "sentences", where), where, "'sentences'");
  check_story(s, where);
  return s;
}

// -- supervised pair ----------------------------------------------------------

ordered_json pair_to_json(const SupervisedPair& p) {
  ordered_json refs = ordered_json::array();
  for (const auto& r : p.references) refs.push_back(r.sentences);
  return ordered_json{{"id", p.story.id},
                      {"sentences", p.story.sentences},
                      {"order", p.target_order.mapping()},
                      {"references", refs}};
}

SupervisedPair pair_from_json(const ordered_json& obj, const std::string& where) {
  SupervisedPair p;
  p.story = story_from_json(obj, where);
  p.target_order = order_from_json(require(obj, "order", where), where, "'order'");
  if (p.target_order.size() != p.story.sentence_count())
    throw DataError(where + ": order has " + std::to_string(p.target_order.size()) +
                    " positions for " + std::to_string(p.story.sentence_count()) + " sentences");
  auto refs_it = obj.find("references");
  if (refs_it != obj.end()) {
    if (!refs_it->is_array()) throw DataError(where + ": 'references' must be an array");
    int k = 0;
    for (const auto& r : *refs_it) {
      Story ref;
      ref.id = p.story.id + "::ref" + std::to_string(++k);
      ref.sentences = require_string_array(r, where, "reference " + std::to_string(k));
      check_story(ref, where);
      if (ref.sentence_count() != p.story.sentence_count())
        throw DataError(where + ": reference " + std::to_string(k) + " has " +
                        std::to_string(ref.sentence_count()) + " sentences, story has " +
                        std::to_string(p.story.sentence_count()));
      p.references.push_back(std::move(ref));
    }
  }
  return p;
}

// -- coref --------------------------------------------------------------------

ordered_json coref_to_json(const CorefDoc& d) {
  ordered_json chains = ordered_json::array();
  for (const auto& c : d.chains) {
    ordered_json mentions = ordered_json::array();
    for (const auto& m : c.mentions)
      mentions.push_back(ordered_json{
          {"sent", m.sentence}, {"start", m.token_start}, {"end", m.token_end}, {"text", m.text}});
    chains.push_back(ordered_json{{"head", c.head}, {"mentions", mentions}});
  }
  return ordered_json{{"id", d.story_id}, {"chains", chains}};
}

CorefDoc coref_from_json(const ordered_json& obj, const std::string& where) {
  CorefDoc d;
  d.story_id = require_string(obj, "id", where);
  const auto& chains = require(obj, "chains", where);
  if (!chains.is_array()) throw DataError(where + ": 'chains' must be an array");
  for (const auto& cj : chains) {
    CorefChain chain;
    if (cj.contains("head")) chain.head = require_string(cj, "head", where);
    const auto& mentions = require(cj, "mentions", where);
    if (!mentions.is_array() || mentions.empty())
      throw DataError(where + ": every chain needs at least one mention");
    for (const auto& mj : mentions) {
      Mention m;
      m.sentence = require(mj, "sent", where).get<int>();
      m.token_start = require(mj, "start", where).get<int>();
      m.token_end = require(mj, "end", where).get<int>();
      m.text = require_string(mj, "text", where);
      if (m.sentence < 1) throw DataError(where + ": mention 'sent' must be 1-based");
      if (m.token_start < 0 || m.token_end <= m.token_start)
        throw DataError(where + ": mention span [" + std::to_string(m.token_start) + ", " +
                        std::to_string(m.token_end) + ") is invalid");
      chain.mentions.push_back(std::move(m));
    }
    if (!chain.head.empty()) {
      bool found = false;
      for (const auto& m : chain.mentions) found = found || m.text == chain.head;
      if (!found)
        throw DataError(where + ": chain head '" + chain.head +
                        "' does not match any mention text");
    }
    d.chains.push_back(std::move(chain));
  }
  return d;
}

// -- pos ----------------------------------------------------------------------

ordered_json pos_to_json(const PosDoc& d) {
  ordered_json tags = ordered_json::array();
  for (const auto& sentence : d.tags) {
    ordered_json st = ordered_json::array();
    for (const auto& [token, tag] : sentence) st.push_back(ordered_json::array({token, tag}));
    tags.push_back(st);
  }
  return ordered_json{{"id", d.story_id}, {"tags", tags}};
}

PosDoc pos_from_json(const ordered_json& obj, const std::string& where) {
  PosDoc d;
  d.story_id = require_string(obj, "id", where);
  const auto& tags = require(obj, "tags", where);
  if (!tags.is_array()) throw DataError(where + ": 'tags' must be an array");
  for (const auto& sentence : tags) {
    if (!sentence.is_array()) throw DataError(where + ": per-sentence tags must be arrays");
    std::vector<std::pair<std::string, std::string>> st;
    for (const auto& pairj : sentence) {
      if (!pairj.is_array() || pairj.size() != 2 || !pairj[0].is_string() || !pairj[1].is_string())
        throw DataError(where + ": each tag entry must be [token, tag]");
      st.emplace_back(pairj[0].get<std::string>(), pairj[1].get<std::string>());
    }
    d.tags.push_back(std::move(st));
  }
  return d;
}

// -- embeddings -----------------------------------------------------------------

ordered_json embedding_to_json(const EmbeddingRecord& r) {
  return ordered_json{
      {"id", r.id}, {"sent", r.sentence}, {"tokens", r.tokens}, {"vectors", r.vectors}};
}

EmbeddingRecord embedding_from_json(const ordered_json& obj, const std::string& where) {
  EmbeddingRecord r;
  r.id = require_string(obj, "id", where);
  r.sentence = require(obj, "sent", where).get<int>();
  if (r.sentence < 1) throw DataError(where + ": 'sent' must be 1-based");
  r.tokens = require_string_array(require(obj, "tokens", where), where, "'tokens'");
  const auto& vectors = require(obj, "vectors", where);
  if (!vectors.is_array()) throw DataError(where + ": 'vectors' must be an array");
  std::size_t dim = 0;
  for (const auto& row : vectors) {
    if (!row.is_array() || row.empty())
      throw DataError(where + ": every vector row must be a non-empty array");
    std::vector<double> v;
    for (const auto& x : row) {
      if (!x.is_number()) throw DataError(where + ": vectors must contain numbers");
      v.push_back(x.get<double>());
    }
    if (dim == 0) dim = v.size();
    if (v.size() != dim) throw DataError(where + ": vector rows have mixed dimensions");
    r.vectors.push_back(std::move(v));
  }
  if (r.vectors.size() != r.tokens.size())
    throw DataError(where + ": " + std::to_string(r.tokens.size()) + " tokens but " +
                    std::to_string(r.vectors.size()) + " vector rows");
  if (r.tokens.empty()) throw DataError(where + ": empty embedding record");
  return r;
}

// -- training example -------------------------------------------------------------

ordered_json training_to_json(const TrainingExample& e) {
  return ordered_json{{"input", e.input},
                      {"output", e.output},
                      {"method", method_name(e.method)},
                      {"stage", e.stage},
                      {"story_id", e.story_id}};
}

TrainingExample training_from_json(const ordered_json& obj, const std::string& where) {
  TrainingExample e;
  e.input = require_string(obj, "input", where);
  e.output = require_string(obj, "output", where);
  if (e.input.empty() || e.output.empty())
    throw DataError(where + ": training example input/output must be non-empty");
  e.method = method_from_name(require_string(obj, "method", where));
  e.stage = require(obj, "stage", where).get<int>();
  if (e.stage != 1 && e.stage != 2) throw DataError(where + ": 'stage' must be 1 or 2");
  e.story_id = require_string(obj, "story_id", where);
  return e;
}

// -- predictions ----------------------------------------------------------------

ordered_json prediction_to_json(const Prediction& p) {
  return ordered_json{{"id", p.id}, {"output", p.output}};
}

Prediction prediction_from_json(const ordered_json& obj, const std::string& where) {
  Prediction p;
  p.id = require_string(obj, "id", where);
  p.output = require_string(obj, "output", where);
  return p;
}

ordered_json ordering_prediction_to_json(const OrderingPrediction& p) {
  return ordered_json{{"id", p.id}, {"pred_order", p.pred_order.mapping()}};
}

OrderingPrediction ordering_prediction_from_json(const ordered_json& obj,
                                                 const std::string& where) {
  OrderingPrediction p;
  p.id = require_string(obj, "id", where);
  p.pred_order = order_from_json(require(obj, "pred_order", where), where, "'pred_order'");
  return p;
}

// -- ordering instance -------------------------------------------------------------

ordered_json ordering_instance_to_json(const OrderingInstance& inst) {
  ordered_json obj{{"id", inst.id},
                   {"shuffled", inst.shuffled},
                   {"gold_order", inst.gold_order.mapping()}};
  if (!inst.set_label.empty()) obj["set"] = inst.set_label;
  return obj;
}

OrderingInstance ordering_instance_from_json(const ordered_json& obj, const std::string& where) {
  OrderingInstance inst;
  inst.id = require_string(obj, "id", where);
  inst.shuffled = require_string_array(require(obj, "shuffled", where), where, "'shuffled'");
  inst.gold_order = order_from_json(require(obj, "gold_order", where), where, "'gold_order'");
  if (inst.gold_order.size() != static_cast<int>(inst.shuffled.size()))
    throw DataError(where + ": gold_order length does not match shuffled sentences");
  if (obj.contains("set")) inst.set_label = require_string(obj, "set", where);
  return inst;
}

// -- change annotation ----------------------------------------------------------

ordered_json change_to_json(const ChangeAnnotation& a) {
  ordered_json flags = ordered_json::array();
  for (const auto& f : a.flags)
    flags.push_back(ordered_json{{"ellipsis", f.ellipsis},
                                 {"tense", f.tense},
                                 {"timex", f.timex},
                                 {"coreference", f.coreference}});
  return ordered_json{{"id", a.story_id}, {"flags", flags}};
}

ChangeAnnotation change_from_json(const ordered_json& obj, const std::string& where) {
  ChangeAnnotation a;
  a.story_id = require_string(obj, "id", where);
  const auto& flags = require(obj, "flags", where);
  if (!flags.is_array() || flags.empty())
    throw DataError(where + ": 'flags' must be a non-empty array");
  for (const auto& fj : flags) {
    ChangeFlags f;
    f.ellipsis = fj.value("ellipsis", false);
    f.tense = fj.value("tense", false);
    f.timex = fj.value("timex", false);
    f.coreference = fj.value("coreference", false);
    a.flags.push_back(f);
  }
  return a;
}

// -- human scores -----------------------------------------------------------------

ordered_json human_to_json(const HumanScores& h) {
  ordered_json scores = ordered_json::object();
  for (const auto& [k, v] : h.scores) scores[k] = v;
  return ordered_json{{"id", h.story_id}, {"scores", scores}};
}

HumanScores human_from_json(const ordered_json& obj, const std::string& where) {
  HumanScores h;
  h.story_id = require_string(obj, "id", where);
  const auto& scores = require(obj, "scores", where);
  if (!scores.is_object()) throw DataError(where + ": 'scores' must be an object");
  for (auto it = scores.begin(); it != scores.end(); ++it) {
    if (!it.value().is_number())
      throw DataError(where + ": score '" + it.key() + "' must be a number");
    double v = it.value().get<double>();
    if (v < 1.0 || v > 5.0)
      throw DataError(where + ": score '" + it.key() + "' out of the 1-5 range");
    h.scores[it.key()] = v;
  }
  return h;
}

template <typename T>
void write_typed(const std::string& path, const std::vector<T>& items,
                 ordered_json (*to_json_fn)(const T&)) {
  std::vector<ordered_json> objs;
  objs.reserve(items.size());
  for (const auto& item : items) objs.push_back(to_json_fn(item));
  write_lines(path, objs);
}

}  // namespace

std::vector<Story> read_stories_jsonl(const std::string& path) {
  auto stories = read_typed<Story>(path, story_from_json);
  std::set<std::string> seen;
  for (const auto& s : stories)
    if (!seen.insert(s.id).second) throw DataError(path + ": duplicate story id '" + s.id + "'");
  return stories;
}

void write_stories_jsonl(const std::string& path, const std::vector<Story>& stories) {
  write_typed(path, stories, story_to_json);
}

std::vector<SupervisedPair> read_pairs_jsonl(const std::string& path) {
  auto pairs = read_typed<SupervisedPair>(path, pair_from_json);
  std::set<std::string> seen;
  for (const auto& p : pairs)
    if (!seen.insert(p.story.id).second)
      throw DataError(path + ": duplicate story id '" + p.story.id + "'");
  return pairs;
}

void write_pairs_jsonl(const std::string& path, const std::vector<SupervisedPair>& pairs) {
  write_typed(path, pairs, pair_to_json);
}

std::vector<CorefDoc> read_coref_jsonl(const std::string& path) {
  return read_typed<CorefDoc>(path, coref_from_json);
}

void write_coref_jsonl(const std::string& path, const std::vector<CorefDoc>& docs) {
  write_typed(path, docs, coref_to_json);
}

std::vector<PosDoc> read_pos_jsonl(const std::string& path) {
  return read_typed<PosDoc>(path, pos_from_json);
}

void write_pos_jsonl(const std::string& path, const std::vector<PosDoc>& docs) {
  write_typed(path, docs, pos_to_json);
}

std::vector<EmbeddingRecord> read_embeddings_jsonl(const std::string& path) {
  return read_typed<EmbeddingRecord>(path, embedding_from_json);
}

void write_embeddings_jsonl(const std::string& path, const std::vector<EmbeddingRecord>& records) {
  write_typed(path, records, embedding_to_json);
}

std::vector<TrainingExample> read_training_jsonl(const std::string& path) {
  return read_typed<TrainingExample>(path, training_from_json);
}

void write_training_jsonl(const std::string& path, const std::vector<TrainingExample>& examples) {
  write_typed(path, examples, training_to_json);
}

std::vector<Prediction> read_predictions_jsonl(const std::string& path) {
  return read_typed<Prediction>(path, prediction_from_json);
}

void write_predictions_jsonl(const std::string& path, const std::vector<Prediction>& preds) {
  write_typed(path, preds, prediction_to_json);
}

std::vector<OrderingPrediction> read_ordering_predictions_jsonl(const std::string& path) {
  return read_typed<OrderingPrediction>(path, ordering_prediction_from_json);
}

void write_ordering_predictions_jsonl(const std::string& path,
                                      const std::vector<OrderingPrediction>& preds) {
  write_typed(path, preds, ordering_prediction_to_json);
}

std::vector<OrderingInstance> read_ordering_instances_jsonl(const std::string& path) {
  return read_typed<OrderingInstance>(path, ordering_instance_from_json);
}

void write_ordering_instances_jsonl(const std::string& path,
                                    const std::vector<OrderingInstance>& instances) {
  write_typed(path, instances, ordering_instance_to_json);
}

std::vector<ChangeAnnotation> read_changes_jsonl(const std::string& path) {
  return read_typed<ChangeAnnotation>(path, change_from_json);
}

void write_changes_jsonl(const std::string& path,
                         const std::vector<ChangeAnnotation>& annotations) {
  write_typed(path, annotations, change_to_json);
}

std::vector<HumanScores> read_human_scores_jsonl(const std::string& path) {
  return read_typed<HumanScores>(path, human_from_json);
}

void write_human_scores_jsonl(const std::string& path, const std::vector<HumanScores>& scores) {
  write_typed(path, scores, human_to_json);
}

std::vector<std::string> read_jsonl_lines_validated(const std::string& path,
                                                    const std::string& kind) {
  auto objects = read_jsonl_objects(path);
  std::vector<std::string> out;
  out.reserve(objects.size());
  for (const auto& numbered : objects) {
    const std::string where = path + ": line " + std::to_string(numbered.line_no);
    const auto& obj = numbered.value;
    if (kind == "story") {
      story_from_json(obj, where);
    } else if (kind == "supervised-pair") {
      pair_from_json(obj, where);
    } else if (kind == "coref") {
      coref_from_json(obj, where);
    } else if (kind == "pos-tags") {
      pos_from_json(obj, where);
    } else if (kind == "embeddings") {
      embedding_from_json(obj, where);
    } else if (kind == "training-example") {
      training_from_json(obj, where);
    } else if (kind == "prediction") {
      prediction_from_json(obj, where);
    } else if (kind == "ordering-prediction") {
      ordering_prediction_from_json(obj, where);
    } else if (kind == "ordering-instance") {
      ordering_instance_from_json(obj, where);
    } else if (kind == "change-annotation") {
      change_from_json(obj, where);
    } else if (kind == "human-scores") {
      human_from_json(obj, where);
    } else {
      throw DataError("unknown record kind '" + kind + "'");
    }
    out.push_back(obj.dump());
  }
  return out;
}

void validate_coref_against(const CorefDoc& doc, const Story& story) {
  for (std::size_t c = 0; c < doc.chains.size(); ++c) {
    for (const auto& m : doc.chains[c].mentions) {
      const std::string where =
          "coref for story '" + story.id + "', chain " + std::to_string(c + 1);
      if (m.sentence < 1 || m.sentence > story.sentence_count())
        throw DataError(where + ": mention sentence " + std::to_string(m.sentence) +
                        " out of range");
      auto tokens = tokenize_cased(story.sentences[static_cast<std::size_t>(m.sentence) - 1]);
      if (m.token_end > static_cast<int>(tokens.size()))
        throw DataError(where + ": span [" + std::to_string(m.token_start) + ", " +
                        std::to_string(m.token_end) + ") exceeds " +
                        std::to_string(tokens.size()) + " tokens in sentence " +
                        std::to_string(m.sentence));
      std::string joined;
      for (int t = m.token_start; t < m.token_end; ++t) {
        if (!joined.empty()) joined += ' ';
        joined += tokens[static_cast<std::size_t>(t)];
      }
      if (lower_copy(joined) != lower_copy(m.text))
        throw DataError(where + ": span text '" + joined + "' does not match mention text '" +
                        m.text + "'");
    }
  }
}

}  // namespace nareor
