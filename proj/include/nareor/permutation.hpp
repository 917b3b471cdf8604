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

#include <vector>

#include "nareor/errors.hpp"
#include "nareor/rng.hpp"

namespace nareor {

// A target narrative order: mapping()[i'-1] = i means target position i'
// holds original sentence i. Indices are 1-based everywhere, matching the
// serialized form.
class NarrativeOrder {
 public:
  NarrativeOrder() = default;
  // Throws DataError unless the mapping is a bijection on {1..n}.
  explicit NarrativeOrder(std::vector<int> mapping);

  static NarrativeOrder identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  // Original sentence index at target position (both 1-based).
  int at(int target_pos) const { return mapping_[static_cast<std::size_t>(target_pos) - 1]; }
  const std::vector<int>& mapping() const { return mapping_; }
  bool is_identity() const;

  friend bool operator==(const NarrativeOrder&, const NarrativeOrder&) = default;

 private:
  std::vector<int> mapping_;
};

// Kendall rank correlation between two orders of equal length:
// (concordant - discordant) / (n(n-1)/2), computed by merge-sort inversion
// counting. Permutations have no ties. Range [-1, 1].
double kendall_tau(const NarrativeOrder& a, const NarrativeOrder& b);

// inverse(o).at(i) = target position of original sentence i, so
// compose(o, inverse(o)) == identity.
NarrativeOrder inverse(const NarrativeOrder& o);

// compose(first, then).at(i) = then.at(first.at(i)).
NarrativeOrder compose(const NarrativeOrder& first, const NarrativeOrder& then);

// Applies the order: result[i'-1] = items[o.at(i') - 1]. Length mismatch -> DataError.
template <typename T>
std::vector<T> apply_order(const NarrativeOrder& o, const std::vector<T>& items) {
  if (static_cast<int>(items.size()) != o.size())
    throw DataError("apply: order has " + std::to_string(o.size()) + " positions but got " +
                    std::to_string(items.size()) + " items");
  std::vector<T> out;
  out.reserve(items.size());
  for (int pos = 1; pos <= o.size(); ++pos)
    out.push_back(items[static_cast<std::size_t>(o.at(pos)) - 1]);
  return out;
}

// Uniform random permutation of {1..n} (Fisher-Yates).
NarrativeOrder random_permutation(int n, Rng& rng);

// Target-order assignment: draw 3 permutations uniformly from the n!-1
// non-identity permutations (independently, with replacement) and keep the
// one with the lowest Kendall tau against the identity; ties break toward
// the earliest draw. Throws DataError for n < 2.
NarrativeOrder sample_target_order(int n, Rng& rng);

}  // namespace nareor
