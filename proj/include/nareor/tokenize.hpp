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

#include <string>
#include <string_view>
#include <vector>

namespace nareor {

// Lowercased token sequence from the canonical tokenizer. All metrics and
// all token offsets in sidecar files are defined against this tokenization.
struct TokenSeq {
  std::vector<std::string> tokens;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

// Canonical split: whitespace-separated words, leading/trailing ASCII
// punctuation peeled into single-character tokens, angle-bracket tags like
// <a>, <sep>, <X1> kept atomic. Case preserved.
std::vector<std::string> tokenize_cased(std::string_view text);

// tokenize_cased + ASCII lowercasing. Token boundaries are identical to
// tokenize_cased, so offsets are interchangeable.
TokenSeq tokenize(std::string_view text);

// Joins tokens with single spaces, re-attaching punctuation: closers and
// clause marks (.,!?;:)]}'"%) bind left, openers (([{$) bind right.
std::string detokenize(const std::vector<std::string>& tokens);

// Splits text at sentence-final .!? runs followed by whitespace or end.
// Trimmed, empty pieces dropped.
std::vector<std::string> split_sentences(std::string_view text);

bool is_tag(std::string_view token);        // <...> with no inner space/brackets
bool is_coref_tag(std::string_view token);  // <X1>, <x23>, ...

}  // namespace nareor
