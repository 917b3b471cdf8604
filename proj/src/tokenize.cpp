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

#include "nareor/tokenize.hpp"

#include <cctype>

namespace nareor {

namespace {

bool is_space_byte(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_punct_byte(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) != 0;
}

constexpr std::string_view kAttachLeft = ".,!?;:)]}'\"%";
constexpr std::string_view kAttachRight = "([{$";

// Splits one whitespace-free word into tokens, recursing left to right.
void split_word(std::string_view w, std::vector<std::string>& out) {
  while (!w.empty()) {
    if (w.front() == '<') {
      std::size_t close = w.find('>');
      if (close != std::string_view::npos && close > 1 &&
          w.substr(1, close - 1).find('<') == std::string_view::npos) {
        out.emplace_back(w.substr(0, close + 1));
        w.remove_prefix(close + 1);
        continue;
      }
    }
    if (is_punct_byte(w.front())) {
      out.emplace_back(w.substr(0, 1));
      w.remove_prefix(1);
      continue;
    }
    // Core word plus any trailing punctuation run. Interior punctuation
    // (don't, U.S.) stays inside the token.
    std::size_t end = w.size();
    while (end > 0 && is_punct_byte(w[end - 1])) --end;
    // A '>' ending an embedded tag belongs to the tag, not the trailer.
    std::size_t tag_open = w.find('<');
    if (tag_open != std::string_view::npos && tag_open > 0 && tag_open < end) {
      out.emplace_back(w.substr(0, tag_open));
      w.remove_prefix(tag_open);
      continue;
    }
    if (end == 0) {  // all punctuation (e.g. "...")
      out.emplace_back(w.substr(0, 1));
      w.remove_prefix(1);
      continue;
    }
    out.emplace_back(w.substr(0, end));
    for (std::size_t k = end; k < w.size(); ++k) out.emplace_back(1, w[k]);
    return;
  }
}

}  // namespace

std::vector<std::string> tokenize_cased(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space_byte(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space_byte(text[i])) ++i;
    if (i > start) split_word(text.substr(start, i - start), out);
  }
  return out;
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq seq;
  seq.tokens = tokenize_cased(text);
  for (auto& t : seq.tokens)
    for (auto& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return seq;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool suppress_space = false;
  for (const auto& t : tokens) {
    bool left = t.size() == 1 && kAttachLeft.find(t[0]) != std::string_view::npos;
    bool right = t.size() == 1 && kAttachRight.find(t[0]) != std::string_view::npos;
    if (!out.empty() && !left && !suppress_space) out += ' ';
    out += t;
    suppress_space = right;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    current += c;
    if (c == '.' || c == '!' || c == '?') {
      while (i + 1 < text.size() &&
             (text[i + 1] == '.' || text[i + 1] == '!' || text[i + 1] == '?')) {
        current += text[++i];
      }
      if (i + 1 >= text.size() || is_space_byte(text[i + 1])) {
        std::size_t a = current.find_first_not_of(" \t\r\n");
        std::size_t b = current.find_last_not_of(" \t\r\n");
        if (a != std::string::npos) out.push_back(current.substr(a, b - a + 1));
        current.clear();
      }
    }
    ++i;
  }
  std::size_t a = current.find_first_not_of(" \t\r\n");
  if (a != std::string::npos) {
    std::size_t b = current.find_last_not_of(" \t\r\n");
    out.push_back(current.substr(a, b - a + 1));
  }
  return out;
}

bool is_tag(std::string_view token) {
  if (token.size() < 3 || token.front() != '<' || token.back() != '>') return false;
  std::string_view inner = token.substr(1, token.size() - 2);
  for (char c : inner)
    if (c == '<' || c == '>' || is_space_byte(c)) return false;
  return true;
}

bool is_coref_tag(std::string_view token) {
  if (!is_tag(token) || token.size() < 4) return false;
  if (token[1] != 'X' && token[1] != 'x') return false;
  for (std::size_t i = 2; i + 1 < token.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
  return true;
}

}  // namespace nareor
