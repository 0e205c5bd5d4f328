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

// Word-level coverage and gender accuracy, overall and sliced by gender,
// POS, word class and their crossings.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "mge/corpus.hpp"
#include "mge/matcher.hpp"
#include "mge/parallel.hpp"

namespace mge {

/// Percentage num/den rounded half-up to one decimal, computed on integers
/// so that e.g. 2/3 -> 66.7 and 1/8 -> 12.5 exactly. nullopt if den == 0.
inline std::optional<double> percent_1dp(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  const std::uint64_t tenths = (2000 * num + den) / (2 * den);
  return static_cast<double>(tenths) / 10.0;
}

struct CountCell {
  std::size_t found_correct = 0;
  std::size_t found_wrong = 0;
  std::size_t not_found = 0;

  std::size_t total() const { return found_correct + found_wrong + not_found; }
  std::size_t covered() const { return found_correct + found_wrong; }

  /// Fractions in [0, 1]; nullopt when the denominator is zero.
  std::optional<double> coverage() const {
    if (total() == 0) return std::nullopt;
    return static_cast<double>(covered()) / static_cast<double>(total());
  }
  std::optional<double> accuracy() const {
    if (covered() == 0) return std::nullopt;
    return static_cast<double>(found_correct) / static_cast<double>(covered());
  }

  /// One-decimal percentages as rendered in reports.
  std::optional<double> coverage_pct() const { return percent_1dp(covered(), total()); }
  std::optional<double> accuracy_pct() const {
    return percent_1dp(found_correct, covered());
  }

  void add(MatchOutcome m) {
    switch (m) {
      case MatchOutcome::kCorrectForm: ++found_correct; break;
      case MatchOutcome::kWrongForm: ++found_wrong; break;
      case MatchOutcome::kNotFound: ++not_found; break;
    }
  }

  CountCell& operator+=(const CountCell& o) {
    found_correct += o.found_correct;
    found_wrong += o.found_wrong;
    not_found += o.not_found;
    return *this;
  }
  friend CountCell operator+(CountCell a, const CountCell& b) { return a += b; }
  friend bool operator==(const CountCell&, const CountCell&) = default;
};

struct WordEvalReport {
  CountCell overall;
  std::map<GenderLabel, CountCell> by_gender;
  std::map<PosTag, CountCell> by_pos;
  std::map<WordClass, CountCell> by_class;
  std::map<std::pair<GenderLabel, PosTag>, CountCell> by_gender_pos;
  std::map<std::pair<GenderLabel, WordClass>, CountCell> by_gender_class;

  /// Every slice key is present from construction, so reports over
  /// different data always have the same shape.
  WordEvalReport() {
    for (GenderLabel g : kAllGenders) {
      by_gender[g];
      for (PosTag p : kAllPosTags) by_gender_pos[{g, p}];
      for (WordClass c : kAllWordClasses) by_gender_class[{g, c}];
    }
    for (PosTag p : kAllPosTags) by_pos[p];
    for (WordClass c : kAllWordClasses) by_class[c];
  }

  void add(GenderLabel gender, PosTag pos, MatchOutcome m) {
    const WordClass cls = word_class(pos);
    overall.add(m);
    by_gender[gender].add(m);
    by_pos[pos].add(m);
    by_class[cls].add(m);
    by_gender_pos[{gender, pos}].add(m);
    by_gender_class[{gender, cls}].add(m);
  }

  void add(const SentenceMatch& match) {
    const auto& terms = match.entry->terms;
    for (std::size_t i = 0; i < terms.size(); ++i)
      add(match.entry->gender, terms[i].pos, match.outcomes[i]);
  }

  WordEvalReport& operator+=(const WordEvalReport& o) {
    overall += o.overall;
    for (auto& [k, v] : o.by_gender) by_gender[k] += v;
    for (auto& [k, v] : o.by_pos) by_pos[k] += v;
    for (auto& [k, v] : o.by_class) by_class[k] += v;
    for (auto& [k, v] : o.by_gender_pos) by_gender_pos[k] += v;
    for (auto& [k, v] : o.by_gender_class) by_gender_class[k] += v;
    return *this;
  }

  friend bool operator==(const WordEvalReport&, const WordEvalReport&) = default;
};

inline WordEvalReport evaluate_words(const Corpus& corpus,
                                     const HypothesisSet& hyps,
                                     unsigned jobs = 1) {
  check_aligned(corpus, hyps);
  return parallel_fold<WordEvalReport>(
      corpus.size(), jobs, [&](WordEvalReport& acc, std::size_t i) {
        acc.add(match_sentence(corpus.entries[i], hyps[i]));
      });
}

/// Signed difference a - b of one slice, in percentage points. A side with
/// an undefined ratio makes the delta undefined.
struct MetricDelta {
  std::optional<double> coverage_pp;
  std::optional<double> accuracy_pp;
};

struct ReportDelta {
  MetricDelta overall;
  std::map<GenderLabel, MetricDelta> by_gender;
  std::map<PosTag, MetricDelta> by_pos;
  std::map<WordClass, MetricDelta> by_class;
  std::map<std::pair<GenderLabel, PosTag>, MetricDelta> by_gender_pos;
  std::map<std::pair<GenderLabel, WordClass>, MetricDelta> by_gender_class;
};

namespace detail {

inline std::optional<double> PointDelta(std::optional<double> a,
                                        std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return 100.0 * (*a - *b);
}

inline MetricDelta CellDelta(const CountCell& a, const CountCell& b,
                             const std::string& slice) {
  if (a.total() != b.total()) {
    throw SliceMismatch("slice " + slice + " has " + std::to_string(a.total()) +
                        " vs " + std::to_string(b.total()) +
                        " terms; reports are not over the same corpus");
  }
  return {PointDelta(a.coverage(), b.coverage()),
          PointDelta(a.accuracy(), b.accuracy())};
}

template <class Key>
std::map<Key, MetricDelta> MapDelta(const std::map<Key, CountCell>& a,
                                    const std::map<Key, CountCell>& b,
                                    const std::string& name) {
  std::map<Key, MetricDelta> out;
  if (a.size() != b.size()) throw SliceMismatch(name + " key sets differ");
  for (const auto& [k, cell] : a) {
    auto it = b.find(k);
    if (it == b.end()) throw SliceMismatch(name + " key sets differ");
    out[k] = CellDelta(cell, it->second, name);
  }
  return out;
}

}  // namespace detail

inline ReportDelta diff_reports(const WordEvalReport& a, const WordEvalReport& b) {
  ReportDelta d;
  d.overall = detail::CellDelta(a.overall, b.overall, "overall");
  d.by_gender = detail::MapDelta(a.by_gender, b.by_gender, "by_gender");
  d.by_pos = detail::MapDelta(a.by_pos, b.by_pos, "by_pos");
  d.by_class = detail::MapDelta(a.by_class, b.by_class, "by_class");
  d.by_gender_pos = detail::MapDelta(a.by_gender_pos, b.by_gender_pos, "by_gender_pos");
  d.by_gender_class =
      detail::MapDelta(a.by_gender_class, b.by_gender_class, "by_gender_class");
  return d;
}

}  // namespace mge
