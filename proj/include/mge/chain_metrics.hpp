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

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "mge/corpus.hpp"
#include "mge/matcher.hpp"
#include "mge/parallel.hpp"
#include "mge/word_metrics.hpp"

namespace mge {

/// C: all members in the correct gender. W: all members in the wrong gender.
/// NO: both genders present, agreement broken.
enum class ChainOutcome { kC, kW, kNo, kOutOfCoverage };

inline constexpr std::string_view to_string(ChainOutcome c) {
  switch (c) {
    case ChainOutcome::kC: return "C";
    case ChainOutcome::kW: return "W";
    case ChainOutcome::kNo: return "NO";
    case ChainOutcome::kOutOfCoverage: return "OutOfCoverage";
  }
  return "?";
}

/// A chain is covered only if every member was found, in either form.
inline ChainOutcome classify_chain(const Chain& chain,
                                   std::span<const MatchOutcome> outcomes) {
  bool any_correct = false;
  bool any_wrong = false;
  for (std::size_t m : chain.members) {
    switch (outcomes[m]) {
      case MatchOutcome::kNotFound: return ChainOutcome::kOutOfCoverage;
      case MatchOutcome::kCorrectForm: any_correct = true; break;
      case MatchOutcome::kWrongForm: any_wrong = true; break;
    }
  }
  if (any_correct && any_wrong) return ChainOutcome::kNo;
  return any_wrong ? ChainOutcome::kW : ChainOutcome::kC;
}

struct ChainCell {
  std::size_t total = 0;
  std::size_t covered = 0;
  std::size_t c_count = 0;
  std::size_t w_count = 0;
  std::size_t no_count = 0;

  void add(ChainOutcome o) {
    ++total;
    switch (o) {
      case ChainOutcome::kC: ++covered; ++c_count; break;
      case ChainOutcome::kW: ++covered; ++w_count; break;
      case ChainOutcome::kNo: ++covered; ++no_count; break;
      case ChainOutcome::kOutOfCoverage: break;
    }
  }

  std::optional<double> coverage_pct() const { return percent_1dp(covered, total); }
  std::optional<double> c_pct() const { return percent_1dp(c_count, covered); }
  std::optional<double> w_pct() const { return percent_1dp(w_count, covered); }
  std::optional<double> no_pct() const { return percent_1dp(no_count, covered); }

  ChainCell& operator+=(const ChainCell& o) {
    total += o.total;
    covered += o.covered;
    c_count += o.c_count;
    w_count += o.w_count;
    no_count += o.no_count;
    return *this;
  }
  friend bool operator==(const ChainCell&, const ChainCell&) = default;
};

struct ChainEvalReport {
  ChainCell all;
  std::map<GenderLabel, ChainCell> by_gender{{GenderLabel::kF, {}},
                                             {GenderLabel::kM, {}}};

  void add(GenderLabel g, ChainOutcome o) {
    all.add(o);
    by_gender[g].add(o);
  }

  void add(const SentenceMatch& match) {
    for (const Chain& chain : chains_of(*match.entry))
      add(match.entry->gender, classify_chain(chain, match.outcomes));
  }

  ChainEvalReport& operator+=(const ChainEvalReport& o) {
    all += o.all;
    for (auto& [g, cell] : o.by_gender) by_gender[g] += cell;
    return *this;
  }
  friend bool operator==(const ChainEvalReport&, const ChainEvalReport&) = default;
};

/// Word and chain reports from a single matching pass, so a chain's class is
/// always consistent with its members' word-level outcomes.
struct EvalReports {
  WordEvalReport words;
  ChainEvalReport chains;

  EvalReports& operator+=(const EvalReports& o) {
    words += o.words;
    chains += o.chains;
    return *this;
  }
};

inline EvalReports evaluate(const Corpus& corpus, const HypothesisSet& hyps,
                            unsigned jobs = 1) {
  check_aligned(corpus, hyps);
  return parallel_fold<EvalReports>(
      corpus.size(), jobs, [&](EvalReports& acc, std::size_t i) {
        SentenceMatch m = match_sentence(corpus.entries[i], hyps[i]);
        acc.words.add(m);
        acc.chains.add(m);
      });
}

inline ChainEvalReport evaluate_chains(const Corpus& corpus,
                                       const HypothesisSet& hyps,
                                       unsigned jobs = 1) {
  check_aligned(corpus, hyps);
  return parallel_fold<ChainEvalReport>(
      corpus.size(), jobs, [&](ChainEvalReport& acc, std::size_t i) {
        acc.add(match_sentence(corpus.entries[i], hyps[i]));
      });
}

}  // namespace mge
