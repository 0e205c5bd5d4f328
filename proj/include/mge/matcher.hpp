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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mge/corpus.hpp"
#include "mge/textnorm.hpp"

namespace mge {

/// CorrectForm and WrongForm are the measurable outcomes; NotFound is out of
/// coverage.
enum class MatchOutcome { kCorrectForm, kWrongForm, kNotFound };

inline constexpr std::string_view to_string(MatchOutcome m) {
  switch (m) {
    case MatchOutcome::kCorrectForm: return "CorrectForm";
    case MatchOutcome::kWrongForm: return "WrongForm";
    case MatchOutcome::kNotFound: return "NotFound";
  }
  return "?";
}

struct SentenceMatch {
  const SentenceEntry* entry = nullptr;
  std::vector<MatchOutcome> outcomes;  // aligned with entry->terms
};

/// Matches terms against a bag of hypothesis tokens, consuming it.
///
/// Terms are visited in annotation order. A term takes one occurrence of its
/// correct form if any is left, otherwise one occurrence of its wrong form,
/// otherwise it is NotFound. A token occurrence is never credited twice.
inline std::vector<MatchOutcome> match_terms(std::span<const TermAnnotation> terms,
                                             TokenMultiset& hypothesis) {
  std::vector<MatchOutcome> outcomes;
  outcomes.reserve(terms.size());
  for (const auto& term : terms) {
    if (hypothesis.take(term.correct_form)) {
      outcomes.push_back(MatchOutcome::kCorrectForm);
    } else if (hypothesis.take(term.wrong_form)) {
      outcomes.push_back(MatchOutcome::kWrongForm);
    } else {
      outcomes.push_back(MatchOutcome::kNotFound);
    }
  }
  return outcomes;
}

inline SentenceMatch match_sentence(const SentenceEntry& entry,
                                    std::string_view hypothesis) {
  TokenMultiset bag = to_multiset(normalized_tokens(hypothesis));
  return SentenceMatch{&entry, match_terms(entry.terms, bag)};
}

}  // namespace mge
