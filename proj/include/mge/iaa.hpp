// Copyright 2026 The mge Authors. All Rights Reserved.
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

// Inter-annotator agreement: Scott's pi over aligned label sequences and the
// Dice coefficient over sets of exactly matching chains.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mge/corpus.hpp"
#include "mge/error.hpp"

namespace mge {

struct PiResult {
  double pi = 0.0;
  double observed = 0.0;  // Ao
  double expected = 0.0;  // Ae, from labels pooled over both annotators
  std::size_t items = 0;
};

/// Scott's pi, (Ao - Ae) / (1 - Ae), with Ae = sum_k p_k^2 where p_k is the
/// share of label k among all 2N assignments of both annotators.
///
/// Throws DegenerateDistribution when Ae == 1, i.e. both annotators used a
/// single identical label for every item.
template <class Label>
PiResult scott_pi_detail(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("scott_pi: label sequences differ in length");
  if (a.empty()) throw std::invalid_argument("scott_pi: no items");

  const std::uint64_t n = a.size();
  std::uint64_t agree = 0;
  std::map<Label, std::uint64_t> pooled;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) ++agree;
    ++pooled[a[i]];
    ++pooled[b[i]];
  }
  // Ae == 1 exactly iff one label takes all 2N assignments.
  if (pooled.size() == 1) throw DegenerateDistribution();

  std::uint64_t sum_sq = 0;
  for (auto& [label, count] : pooled) sum_sq += count * count;

  PiResult r;
  r.items = a.size();
  r.observed = static_cast<double>(agree) / static_cast<double>(n);
  r.expected = static_cast<double>(sum_sq) / static_cast<double>(4 * n * n);
  r.pi = (r.observed - r.expected) / (1.0 - r.expected);
  return r;
}

template <class Label>
double scott_pi(std::span<const Label> a, std::span<const Label> b) {
  return scott_pi_detail(a, b).pi;
}

template <class Label>
double scott_pi(const std::vector<Label>& a, const std::vector<Label>& b) {
  return scott_pi(std::span<const Label>(a), std::span<const Label>(b));
}

/// Chains are the same only if sentence and ordered member indices match.
struct ChainIdentity {
  std::string sentence_id;
  std::vector<std::size_t> members;

  friend auto operator<=>(const ChainIdentity&, const ChainIdentity&) = default;
};

/// 2|A n B| / (|A| + |B|). Throws EmptySets when both sets are empty.
template <class T>
double dice(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) throw EmptySets();
  std::size_t common = 0;
  for (const auto& x : a) common += b.count(x);
  return 2.0 * static_cast<double>(common) /
         static_cast<double>(a.size() + b.size());
}

inline double dice_chains(const std::set<ChainIdentity>& a,
                          const std::set<ChainIdentity>& b) {
  return dice(a, b);
}

inline std::set<ChainIdentity> chain_identities(const Corpus& corpus) {
  std::set<ChainIdentity> out;
  for (const auto& e : corpus.entries)
    for (const auto& c : chains_of(e)) out.insert({e.id, c.members});
  return out;
}

/// The two layers of a pair of annotator files aligned by sentence id.
struct AnnotationPair {
  std::vector<PosTag> pos_a;
  std::vector<PosTag> pos_b;
  std::set<ChainIdentity> chains_a;
  std::set<ChainIdentity> chains_b;
};

/// Pairs two annotations of the same sentences. Both files must list the same
/// ids and, per sentence, the same annotated words in the same order; only
/// the POS and chain layers may differ.
inline AnnotationPair pair_annotations(const Corpus& a, const Corpus& b) {
  std::unordered_map<std::string, const SentenceEntry*> by_id;
  for (const auto& e : b.entries) by_id[e.id] = &e;
  if (a.size() != b.size())
    throw Error("annotations cover " + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + " sentences");

  AnnotationPair pair;
  for (const auto& ea : a.entries) {
    auto it = by_id.find(ea.id);
    if (it == by_id.end())
      throw Error("sentence '" + ea.id + "' is missing from the second annotation");
    const SentenceEntry& eb = *it->second;
    if (ea.terms.size() != eb.terms.size())
      throw Error("sentence '" + ea.id + "' has " + std::to_string(ea.terms.size()) +
                  " vs " + std::to_string(eb.terms.size()) + " annotated words");
    for (std::size_t i = 0; i < ea.terms.size(); ++i) {
      if (ea.terms[i].correct_form != eb.terms[i].correct_form)
        throw Error("sentence '" + ea.id + "' word " + std::to_string(i) +
                    " differs between annotations ('" + ea.terms[i].correct_form +
                    "' vs '" + eb.terms[i].correct_form + "')");
      pair.pos_a.push_back(ea.terms[i].pos);
      pair.pos_b.push_back(eb.terms[i].pos);
    }
  }
  pair.chains_a = chain_identities(a);
  pair.chains_b = chain_identities(b);
  return pair;
}

}  // namespace mge
