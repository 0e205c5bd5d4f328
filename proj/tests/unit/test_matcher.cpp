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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "mge/matcher.hpp"
#include "support/fixtures.hpp"
#include "support/instances.hpp"
#include "support/match_oracle.hpp"

namespace mge {
namespace {

using testing::entry;
using testing::term;
using M = MatchOutcome;
using Outcomes = std::vector<MatchOutcome>;

std::size_t Covered(const Outcomes& o) {
  std::size_t n = 0;
  for (auto m : o) n += m != M::kNotFound;
  return n;
}

TEST(MatchSentence, ItalianExample) {
  SentenceEntry e = entry("1", "la ragazza è andata via", GenderLabel::kF,
                          {term("la", "il", PosTag::kArt), term("andata", "andato", PosTag::kVerb)});
  EXPECT_EQ(match_sentence(e, "La ragazza è andata via").outcomes,
            (Outcomes{M::kCorrectForm, M::kCorrectForm}));
  EXPECT_EQ(match_sentence(e, "Il ragazzo è andato via").outcomes,
            (Outcomes{M::kWrongForm, M::kWrongForm}));
}

TEST(MatchSentence, EmptyHypothesis) {
  SentenceEntry e = entry("1", "la andata", GenderLabel::kF,
                          {term("la", "il", PosTag::kArt), term("andata", "andato", PosTag::kVerb)});
  EXPECT_EQ(match_sentence(e, "").outcomes, (Outcomes{M::kNotFound, M::kNotFound}));
}

TEST(MatchSentence, TokenOccurrencesAreConsumed) {
  SentenceEntry e = entry("1", "la la", GenderLabel::kF,
                          {term("la", "il", PosTag::kArt), term("la", "il", PosTag::kArt)});
  EXPECT_EQ(match_sentence(e, "la il x").outcomes, (Outcomes{M::kCorrectForm, M::kWrongForm}));
  EXPECT_EQ(match_sentence(e, "la").outcomes, (Outcomes{M::kCorrectForm, M::kNotFound}));
}

TEST(MatchSentence, CorrectFormPreferredWhenBothPresent) {
  SentenceEntry e = entry("1", "andata", GenderLabel::kF, {term("andata", "andato", PosTag::kVerb)});
  EXPECT_EQ(match_sentence(e, "andato andata").outcomes, (Outcomes{M::kCorrectForm}));
}

TEST(MatchSentence, ElidedArticleMatches) {
  SentenceEntry e = entry("1", "l'une", GenderLabel::kF, {term("une", "un", PosTag::kArt)});
  EXPECT_EQ(match_sentence(e, "L'un des premiers").outcomes, (Outcomes{M::kWrongForm}));
}

// Greedy per-term lookup is not a maximum matching when two different form
// pairs share a form. This pins the documented behavior.
TEST(MatchSentence, CrossPairCollisionIsGreedy) {
  SentenceEntry e = entry("1", "la lo", GenderLabel::kF,
                          {term("la", "il", PosTag::kArt), term("lo", "la", PosTag::kPron)});
  EXPECT_EQ(match_sentence(e, "la il").outcomes, (Outcomes{M::kCorrectForm, M::kNotFound}));
  EXPECT_EQ(testing::brute_force_match(e, "la il").coverage, 2u);
}

TEST(BruteForceOracle, HandCases) {
  auto r = testing::brute_force_match({term("la", "il", PosTag::kArt), term("la", "il", PosTag::kArt)},
                                      {"la", "il", "x"});
  EXPECT_EQ(r.coverage, 2u);
  EXPECT_EQ(r.correct, 1u);
  auto none = testing::brute_force_match({term("la", "il", PosTag::kArt)}, {});
  EXPECT_EQ(none.coverage, 0u);
}

using testing::Instance;

Instance RandomInstance(std::mt19937_64& rng) { return testing::random_instance(rng); }

TEST(MatchSentence, CoverageEqualsBruteForceOracle) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 2000; ++trial) {
    Instance inst = RandomInstance(rng);
    SentenceEntry e = entry("t", "", GenderLabel::kF, inst.terms);
    const Outcomes greedy = match_sentence(e, inst.hypothesis).outcomes;
    const auto oracle = testing::brute_force_match(e, inst.hypothesis);
    ASSERT_EQ(Covered(greedy), oracle.coverage)
        << "hypothesis: '" << inst.hypothesis << "' terms: " << format_terms(inst.terms);
  }
}

TEST(MatchSentence, ConservationAndMonotonicity) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    Instance inst = RandomInstance(rng);
    SentenceEntry e = entry("t", "", GenderLabel::kF, inst.terms);
    const Outcomes before = match_sentence(e, inst.hypothesis).outcomes;
    EXPECT_LE(Covered(before), normalized_tokens(inst.hypothesis).size());

    const std::size_t k = rng() % inst.terms.size();
    const Outcomes after =
        match_sentence(e, inst.hypothesis + " " + inst.terms[k].correct_form).outcomes;
    for (std::size_t i = 0; i < k; ++i) {
      if (before[i] == M::kCorrectForm) EXPECT_EQ(after[i], M::kCorrectForm);
    }
    EXPECT_EQ(match_sentence(e, inst.hypothesis).outcomes, before);
  }
}

}  // namespace
}  // namespace mge
