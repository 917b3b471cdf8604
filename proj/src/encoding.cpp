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

#include "nareor/encoding.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nareor/parallel.hpp"
#include "nareor/rng.hpp"
#include "nareor/synthesis.hpp"
#include "nareor/tokenize.hpp"

namespace nareor {

namespace {

constexpr const char* kSepTag = "<sep>";
constexpr const char* kEndTag = "<st>";

std::string sentence_tag(int index_1based) {
  return std::string("<") + static_cast<char>('a' + index_1based - 1) + ">";
}

std::string lower_copy(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct MentionRef {
  int chain = 0;  // index into doc.chains
  Mention span;
};

Mention earliest_mention(const CorefChain& chain) {
  const Mention* best = &chain.mentions.front();
  for (const auto& m : chain.mentions) {
    auto key = std::tuple(m.sentence, m.token_start, m.token_end);
    auto best_key = std::tuple(best->sentence, best->token_start, best->token_end);
    if (key < best_key) best = &m;
  }
  return *best;
}

}  // namespace

std::string chain_head(const CorefChain& chain) {
  if (!chain.head.empty()) return chain.head;
  return earliest_mention(chain).text;
}

std::vector<std::string> assign_coref_tags(const CorefDoc& doc) {
  std::vector<std::pair<std::tuple<int, int, int>, int>> ranked;
  for (std::size_t c = 0; c < doc.chains.size(); ++c) {
    if (doc.chains[c].mentions.empty())
      throw DataError("coref for '" + doc.story_id + "': chain " + std::to_string(c + 1) +
                      " has no mentions");
    Mention first = earliest_mention(doc.chains[c]);
    ranked.emplace_back(std::tuple(first.sentence, first.token_start, first.token_end),
                        static_cast<int>(c));
  }
  std::sort(ranked.begin(), ranked.end());
  for (std::size_t i = 1; i < ranked.size(); ++i)
    if (std::get<0>(ranked[i]) == std::get<0>(ranked[i - 1]))
      throw DataError("coref for '" + doc.story_id +
                      "': two chains claim the same earliest mention span");
  std::vector<std::string> tags(doc.chains.size());
  for (std::size_t rank = 0; rank < ranked.size(); ++rank)
    tags[static_cast<std::size_t>(ranked[rank].second)] =
        "<X" + std::to_string(rank + 1) + ">";
  return tags;
}

EncodedInput encode_input(const Story& story, const NarrativeOrder& order, const CorefDoc& doc) {
  const int n = story.sentence_count();
  if (n > 26) throw DataError("story '" + story.id + "' has " + std::to_string(n) +
                              " sentences; sentence tags cover at most 26");
  if (order.size() != n)
    throw DataError("story '" + story.id + "': order length " + std::to_string(order.size()) +
                    " does not match " + std::to_string(n) + " sentences");

  const std::vector<std::string> tags = assign_coref_tags(doc);

  // Mentions grouped by sentence.
  std::vector<std::vector<MentionRef>> by_sentence(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < doc.chains.size(); ++c) {
    for (const auto& m : doc.chains[c].mentions) {
      if (m.sentence < 1 || m.sentence > n)
        throw DataError("story '" + story.id + "': mention sentence " +
                        std::to_string(m.sentence) + " out of range");
      by_sentence[static_cast<std::size_t>(m.sentence) - 1].push_back(
          MentionRef{static_cast<int>(c), m});
    }
  }

  std::vector<std::string> stream;
  for (int s = 1; s <= n; ++s) {
    auto tokens = tokenize_cased(story.sentences[static_cast<std::size_t>(s) - 1]);
    auto& mentions = by_sentence[static_cast<std::size_t>(s) - 1];
    for (const auto& ref : mentions) {
      const auto& m = ref.span;
      if (m.token_end > static_cast<int>(tokens.size()))
        throw DataError("story '" + story.id + "': mention span [" +
                        std::to_string(m.token_start) + ", " + std::to_string(m.token_end) +
                        ") exceeds sentence " + std::to_string(s) + " (" +
                        std::to_string(tokens.size()) + " tokens)");
      std::string joined;
      for (int t = m.token_start; t < m.token_end; ++t) {
        if (!joined.empty()) joined += ' ';
        joined += tokens[static_cast<std::size_t>(t)];
      }
      if (lower_copy(joined) != lower_copy(m.text))
        throw DataError("story '" + story.id + "': span text '" + joined +
                        "' does not match mention '" + m.text + "' in sentence " +
                        std::to_string(s));
    }
    std::set<std::pair<int, int>> spans;
    for (const auto& ref : mentions)
      if (!spans.emplace(ref.span.token_start, ref.span.token_end).second)
        throw DataError("story '" + story.id + "': identical mention spans in sentence " +
                        std::to_string(s));
    // Longest span first at each start, so nested mentions come out as
    // adjacent tags (inner tag immediately before the enclosing one).
    std::sort(mentions.begin(), mentions.end(), [](const MentionRef& a, const MentionRef& b) {
      if (a.span.token_start != b.span.token_start)
        return a.span.token_start < b.span.token_start;
      if (a.span.token_end != b.span.token_end) return a.span.token_end > b.span.token_end;
      return a.chain < b.chain;
    });

    stream.push_back(sentence_tag(s));
    std::size_t next_mention = 0;
    int pos = 0;
    while (pos < static_cast<int>(tokens.size())) {
      if (next_mention < mentions.size() &&
          mentions[next_mention].span.token_start < pos)
        throw DataError("story '" + story.id + "': overlapping mention spans in sentence " +
                        std::to_string(s));
      if (next_mention < mentions.size() && mentions[next_mention].span.token_start == pos) {
        const int outer_end = mentions[next_mention].span.token_end;
        // Everything nested in [pos, outer_end) collapses to tags, inner first.
        std::vector<MentionRef> covered;
        while (next_mention < mentions.size() &&
               mentions[next_mention].span.token_start < outer_end) {
          if (mentions[next_mention].span.token_end > outer_end)
            throw DataError("story '" + story.id + "': overlapping mention spans in sentence " +
                            std::to_string(s));
          covered.push_back(mentions[next_mention]);
          ++next_mention;
        }
        std::sort(covered.begin(), covered.end(), [](const MentionRef& a, const MentionRef& b) {
          int la = a.span.token_end - a.span.token_start;
          int lb = b.span.token_end - b.span.token_start;
          if (la != lb) return la < lb;
          if (a.span.token_start != b.span.token_start)
            return a.span.token_start < b.span.token_start;
          return a.chain < b.chain;
        });
        for (const auto& ref : covered)
          stream.push_back(tags[static_cast<std::size_t>(ref.chain)]);
        pos = outer_end;
      } else {
        stream.push_back(tokens[static_cast<std::size_t>(pos)]);
        ++pos;
      }
    }
  }

  stream.push_back(kSepTag);
  for (int p = 1; p <= n; ++p) stream.push_back(sentence_tag(order.at(p)));

  EncodedInput encoded;
  // Declared tag list in X1..Xk order.
  std::vector<std::pair<std::string, int>> declared;
  for (std::size_t c = 0; c < doc.chains.size(); ++c)
    declared.emplace_back(tags[c], static_cast<int>(c));
  std::sort(declared.begin(), declared.end(), [](const auto& a, const auto& b) {
    return std::stoi(a.first.substr(2, a.first.size() - 3)) <
           std::stoi(b.first.substr(2, b.first.size() - 3));
  });
  for (const auto& [tag, chain_index] : declared) {
    const std::string head = chain_head(doc.chains[static_cast<std::size_t>(chain_index)]);
    stream.push_back(tag);
    for (auto& t : tokenize_cased(head)) stream.push_back(std::move(t));
    encoded.tag_map.emplace_back(tag, head);
  }
  stream.push_back(kEndTag);

  encoded.text = detokenize(stream);
  encoded.order_used = order;
  return encoded;
}

std::string decode_tags(const std::string& text,
                        const std::vector<std::pair<std::string, std::string>>& tag_map) {
  auto tokens = tokenize_cased(text);
  std::vector<std::string> out;
  for (const auto& token : tokens) {
    if (is_coref_tag(token)) {
      const std::string canonical = "<X" + token.substr(2);
      bool found = false;
      for (const auto& [tag, head] : tag_map) {
        if (tag == canonical || tag == token) {
          for (auto& t : tokenize_cased(head)) out.push_back(std::move(t));
          found = true;
          break;
        }
      }
      if (!found) throw DataError("unknown coreference tag '" + token + "'");
      continue;
    }
    if (is_tag(token)) {
      std::string_view inner(token);
      inner = inner.substr(1, inner.size() - 2);
      bool letter = inner.size() == 1 && inner[0] >= 'a' && inner[0] <= 'z';
      if (letter || inner == "sep" || inner == "st") continue;
    }
    out.push_back(token);
  }
  return detokenize(out);
}

ParsedEncoding parse_encoded(const std::string& text) {
  auto tokens = tokenize_cased(text);
  ParsedEncoding parsed;

  auto is_letter_tag = [](const std::string& t) {
    return t.size() == 3 && t[0] == '<' && t[2] == '>' && t[1] >= 'a' && t[1] <= 'z';
  };

  std::size_t i = 0;
  std::vector<std::vector<std::string>> sentence_tokens;
  while (i < tokens.size() && tokens[i] != kSepTag) {
    if (!is_letter_tag(tokens[i]))
      throw DataError("encoded input: expected a sentence tag, found '" + tokens[i] + "'");
    int index = tokens[i][1] - 'a' + 1;
    if (index != static_cast<int>(sentence_tokens.size()) + 1)
      throw DataError("encoded input: sentence tag '" + tokens[i] + "' out of sequence");
    ++i;
    std::vector<std::string> body;
    while (i < tokens.size() && tokens[i] != kSepTag && !is_letter_tag(tokens[i])) {
      if (tokens[i] == kEndTag) throw DataError("encoded input: '<st>' before '<sep>'");
      body.push_back(tokens[i]);
      ++i;
    }
    if (body.empty()) throw DataError("encoded input: empty sentence body");
    sentence_tokens.push_back(std::move(body));
  }
  if (sentence_tokens.empty()) throw DataError("encoded input: no sentences");
  if (i == tokens.size()) throw DataError("encoded input: missing '<sep>'");
  ++i;  // consume <sep>

  const int n = static_cast<int>(sentence_tokens.size());
  std::vector<int> mapping;
  while (i < tokens.size() && is_letter_tag(tokens[i])) {
    mapping.push_back(tokens[i][1] - 'a' + 1);
    ++i;
  }
  if (static_cast<int>(mapping.size()) != n)
    throw DataError("encoded input: expected " + std::to_string(n) + " order tags, found " +
                    std::to_string(mapping.size()));
  try {
    parsed.order = NarrativeOrder(std::move(mapping));
  } catch (const DataError& e) {
    throw DataError(std::string("encoded input: order tags: ") + e.what());
  }

  while (i < tokens.size() && tokens[i] != kEndTag) {
    if (!is_coref_tag(tokens[i]))
      throw DataError("encoded input: expected a coreference tag or '<st>', found '" + tokens[i] +
                      "'");
    std::string tag = "<X" + tokens[i].substr(2);
    ++i;
    std::vector<std::string> head;
    while (i < tokens.size() && tokens[i] != kEndTag && !is_coref_tag(tokens[i])) {
      head.push_back(tokens[i]);
      ++i;
    }
    if (head.empty()) throw DataError("encoded input: tag '" + tag + "' declared with no head");
    parsed.tag_map.emplace_back(tag, detokenize(head));
  }
  if (i >= tokens.size()) throw DataError("encoded input: missing terminal '<st>'");
  if (i + 1 != tokens.size())
    throw DataError("encoded input: content after terminal '<st>'");

  std::set<std::string> declared;
  for (const auto& [tag, head] : parsed.tag_map)
    if (!declared.insert(lower_copy(tag)).second)
      throw DataError("encoded input: tag '" + tag + "' declared twice");
  for (const auto& body : sentence_tokens)
    for (const auto& token : body)
      if (is_coref_tag(token) && declared.count(lower_copy("<X" + token.substr(2))) == 0)
        throw DataError("encoded input: tag '" + token + "' used but not declared");

  for (auto& body : sentence_tokens) parsed.sentences.push_back(detokenize(body));
  return parsed;
}

CorefDoc reindex_coref(const CorefDoc& doc, const NarrativeOrder& order) {
  const NarrativeOrder inv = inverse(order);
  CorefDoc out = doc;
  for (auto& chain : out.chains)
    for (auto& m : chain.mentions) {
      if (m.sentence < 1 || m.sentence > order.size())
        throw DataError("coref for '" + doc.story_id + "': mention sentence " +
                        std::to_string(m.sentence) + " out of range for reindexing");
      m.sentence = inv.at(m.sentence);
    }
  return out;
}

namespace {

const CorefDoc& require_coref(const std::map<std::string, CorefDoc>& corefs,
                              const std::string& story_id) {
  auto it = corefs.find(story_id);
  if (it == corefs.end())
    throw DataError("no coreference sidecar for story '" + story_id + "'");
  return it->second;
}

}  // namespace

std::vector<TrainingExample> build_reorder_stage1(
    const std::vector<Story>& stories, const std::map<std::string, NarrativeOrder>& orders,
    const std::map<std::string, CorefDoc>& corefs, std::uint64_t seed, int jobs) {
  std::vector<TrainingExample> out(stories.size());
  parallel_for(stories.size(), jobs, [&](std::size_t i) {
    const Story& story = stories[i];
    auto order_it = orders.find(story.id);
    if (order_it == orders.end())
      throw DataError("no target order for story '" + story.id + "'");
    const CorefDoc& doc = require_coref(corefs, story.id);

    Rng rng(derive_seed(seed, story.id));
    TrainingExample ex;
    if (rng.coin()) {
      const Story reordered = naive_reorder(story, order_it->second);
      const CorefDoc reindexed = reindex_coref(doc, order_it->second);
      ex.input = encode_input(reordered, inverse(order_it->second), reindexed).text;
    } else {
      ex.input =
          encode_input(story, NarrativeOrder::identity(story.sentence_count()), doc).text;
    }
    ex.output = story_text(story);
    ex.method = Method::reorder;
    ex.stage = 1;
    ex.story_id = story.id;
    out[i] = std::move(ex);
  });
  return out;
}

std::vector<TrainingExample> build_reorder_stage2(const std::vector<SupervisedPair>& pairs,
                                                  const std::map<std::string, CorefDoc>& corefs,
                                                  int jobs) {
  std::vector<std::string> inputs(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const auto& pair = pairs[i];
    if (pair.references.empty())
      throw DataError("story '" + pair.story.id + "' has no references for stage-2 pairs");
    const CorefDoc& doc = require_coref(corefs, pair.story.id);
    inputs[i] = encode_input(pair.story, pair.target_order, doc).text;
  });
  std::vector<TrainingExample> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const auto& ref : pairs[i].references) {
      TrainingExample ex;
      ex.input = inputs[i];
      ex.output = story_text(ref);
      ex.method = Method::reorder;
      ex.stage = 2;
      ex.story_id = pairs[i].story.id;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

}  // namespace nareor
