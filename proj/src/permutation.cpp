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

#include "nareor/permutation.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

namespace nareor {

NarrativeOrder::NarrativeOrder(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = static_cast<int>(mapping_.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : mapping_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v) - 1])
      throw DataError("order is not a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v) - 1] = true;
  }
}

NarrativeOrder NarrativeOrder::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 1);
  return NarrativeOrder(std::move(m));
}

bool NarrativeOrder::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (mapping_[static_cast<std::size_t>(i)] != i + 1) return false;
  return true;
}

namespace {

// Counts inversions of v by merge sort.
std::uint64_t count_inversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j]) {
      scratch[k++] = v[i++];
    } else {
      scratch[k++] = v[j++];
      inv += mid - i;
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

double kendall_tau(const NarrativeOrder& a, const NarrativeOrder& b) {
  if (a.size() != b.size())
    throw DataError("kendall_tau: length mismatch (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  const int n = a.size();
  if (n < 2) throw DataError("kendall_tau: need length >= 2");
  // Read b's values in the position order that sorts a; discordant pairs
  // become inversions of that sequence (b composed with a's inverse).
  std::vector<int> pos_in_a(static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) pos_in_a[static_cast<std::size_t>(a.at(p)) - 1] = p;
  std::vector<int> seq(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    seq[static_cast<std::size_t>(v) - 1] = b.at(pos_in_a[static_cast<std::size_t>(v) - 1]);
  std::vector<int> scratch(seq.size());
  const double discordant = static_cast<double>(count_inversions(seq, scratch, 0, seq.size()));
  const double total = static_cast<double>(n) * (n - 1) / 2.0;
  return (total - 2.0 * discordant) / total;
}

NarrativeOrder inverse(const NarrativeOrder& o) {
  std::vector<int> inv(static_cast<std::size_t>(o.size()));
  for (int pos = 1; pos <= o.size(); ++pos) inv[static_cast<std::size_t>(o.at(pos)) - 1] = pos;
  return NarrativeOrder(std::move(inv));
}

NarrativeOrder compose(const NarrativeOrder& first, const NarrativeOrder& then) {
  if (first.size() != then.size()) throw DataError("compose: length mismatch");
  std::vector<int> m(static_cast<std::size_t>(first.size()));
  for (int i = 1; i <= first.size(); ++i)
    m[static_cast<std::size_t>(i) - 1] = then.at(first.at(i));
  return NarrativeOrder(std::move(m));
}

NarrativeOrder random_permutation(int n, Rng& rng) {
  if (n < 1) throw DataError("random_permutation: n must be >= 1");
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 1);
  rng.shuffle(m);
  return NarrativeOrder(std::move(m));
}

NarrativeOrder sample_target_order(int n, Rng& rng) {
  if (n < 2) throw DataError("sample_target_order: n must be >= 2");
  const NarrativeOrder ident = NarrativeOrder::identity(n);
  NarrativeOrder best;
  double best_tau = 2.0;
  for (int draw = 0; draw < 3; ++draw) {
    NarrativeOrder cand = random_permutation(n, rng);
    while (cand.is_identity()) cand = random_permutation(n, rng);
    double tau = kendall_tau(cand, ident);
    if (tau < best_tau) {
      best_tau = tau;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace nareor
