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

// Seeded synthetic corpora and system outputs for tests and demos.
//
// Generator "mge-synth-1": std::mt19937_64 seeded with SynthSpec::seed. Bounded
// integers use rejection sampling on the raw 64-bit output and reals use its
// top 53 bits, so output is identical on every platform (the standard
// distributions are implementation defined).

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mge/corpus.hpp"
#include "mge/error.hpp"
#include "mge/textnorm.hpp"

namespace mge {

inline constexpr std::string_view kSynthGeneratorId = "mge-synth-1";

/// Per-term probabilities of emitting the correct form, the wrong form, or
/// dropping the word.
struct HypothesisProfile {
  double p_correct = 1.0;
  double p_wrong = 0.0;
  double p_drop = 0.0;

  void validate() const {
    if (p_correct < 0 || p_wrong < 0 || p_drop < 0 ||
        std::abs(p_correct + p_wrong + p_drop - 1.0) > 1e-9) {
      throw std::invalid_argument(
          "hypothesis profile probabilities must be non-negative and sum to 1");
    }
  }
};

struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t n_sentences = 100;
  std::map<PosTag, std::size_t> pos_distribution;
  std::size_t chain_count = 0;
  // Relative weights of chain sizes (each size >= 2).
  std::map<std::size_t, double> chain_size_weights{{2, 0.6}, {3, 0.3}, {4, 0.1}};
  double female_ratio = 0.5;
  std::size_t max_terms_per_sentence = 12;
  std::string language_pair = "en-it";
  HypothesisProfile profile;

  std::size_t total_terms() const {
    std::size_t n = 0;
    for (auto& [p, c] : pos_distribution) n += c;
    return n;
  }
};

/// Term and chain counts of the en-es, en-fr and en-it annotation layers.
inline SynthSpec preset_spec(std::string_view language_pair) {
  SynthSpec s;
  s.language_pair = std::string(language_pair);
  using P = PosTag;
  if (language_pair == "en-es") {
    s.pos_distribution = {{P::kArt, 487}, {P::kPron, 104}, {P::kAdjDet, 118},
                          {P::kAdjDes, 676}, {P::kNoun, 607}, {P::kVerb, 107}};
    s.chain_count = 420;
  } else if (language_pair == "en-fr") {
    s.pos_distribution = {{P::kArt, 325}, {P::kPron, 61}, {P::kAdjDet, 106},
                          {P::kAdjDes, 576}, {P::kNoun, 344}, {P::kVerb, 494}};
    s.chain_count = 293;
  } else if (language_pair == "en-it") {
    s.pos_distribution = {{P::kArt, 413}, {P::kPron, 48}, {P::kAdjDet, 149},
                          {P::kAdjDes, 448}, {P::kNoun, 346}, {P::kVerb, 622}};
    s.chain_count = 421;
  } else {
    throw std::invalid_argument("no preset for language pair '" +
                                std::string(language_pair) + "'");
  }
  s.n_sentences = 1000;
  return s;
}

/// Portable seeded generator.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform real in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct LexiconPair {
  std::string_view feminine;
  std::string_view masculine;
  std::string_view gloss;
};

/// Pseudo-lexicon of gendered form pairs per POS. Every form is unique
/// across the whole table and distinct from every filler word.
inline const std::vector<LexiconPair>& synth_lexicon(PosTag pos) {
  static const std::map<PosTag, std::vector<LexiconPair>> kLexicon = {
      {PosTag::kArt,
       {{"la", "il", "the"}, {"una", "un", "a"}, {"le", "i", "the"},
        {"della", "del", "of the"}, {"alla", "al", "to the"},
        {"nella", "nel", "in the"}}},
      {PosTag::kPron,
       {{"lei", "lui", "she"}, {"essa", "esso", "it"}, {"quella", "quello", "that one"},
        {"colei", "colui", "the one"}, {"ella", "egli", "she"}}},
      {PosTag::kAdjDet,
       {{"questa", "questo", "this"}, {"nostra", "nostro", "our"},
        {"prima", "primo", "first"}, {"sua", "suo", "her"}, {"mia", "mio", "my"},
        {"tanta", "tanto", "much"}, {"alcuna", "alcuno", "any"}}},
      {PosTag::kAdjDes,
       {{"brava", "bravo", "good"}, {"stanca", "stanco", "tired"},
        {"pronta", "pronto", "ready"}, {"nuova", "nuovo", "new"},
        {"sola", "solo", "alone"}, {"contenta", "contento", "happy"},
        {"famosa", "famoso", "famous"}, {"musulmana", "musulmano", "muslim"}}},
      {PosTag::kNoun,
       {{"ragazza", "ragazzo", "kid"}, {"senatrice", "senatore", "senator"},
        {"studentessa", "studente", "student"}, {"inventrice", "inventore", "inventor"},
        {"maestra", "maestro", "teacher"}, {"dottoressa", "dottore", "doctor"},
        {"scienziata", "scienziato", "scientist"}, {"amica", "amico", "friend"}}},
      {PosTag::kVerb,
       {{"andata", "andato", "gone"}, {"stata", "stato", "been"},
        {"nata", "nato", "born"}, {"arrivata", "arrivato", "arrived"},
        {"diventata", "diventato", "become"}, {"attratta", "attratto", "attracted"},
        {"cresciuta", "cresciuto", "grown"}, {"partita", "partito", "left"}}},
  };
  return kLexicon.at(pos);
}

inline constexpr std::array<std::string_view, 12> kSynthFillers = {
    "e", "che", "molto", "oggi", "qui", "sempre", "poi", "anche", "ma", "per", "con", "non"};
inline constexpr std::array<std::string_view, 8> kSynthSourceFillers = {
    "and", "that", "very", "today", "here", "always", "then", "also"};

namespace detail {

inline std::vector<std::size_t> SampleChainSizes(const SynthSpec& spec, SynthRng& rng) {
  std::vector<std::pair<std::size_t, double>> weights;
  double total = 0;
  for (auto [size, w] : spec.chain_size_weights) {
    if (size < 2) throw InfeasibleSpec("chain size " + std::to_string(size) + " < 2");
    if (w < 0) throw InfeasibleSpec("negative chain size weight");
    if (w > 0) weights.emplace_back(size, w);
    total += w;
  }
  if (spec.chain_count > 0 && weights.empty())
    throw InfeasibleSpec("chains requested but no chain size has positive weight");
  std::vector<std::size_t> sizes;
  sizes.reserve(spec.chain_count);
  for (std::size_t k = 0; k < spec.chain_count; ++k) {
    double u = rng.unit() * total;
    std::size_t pick = weights.back().first;
    for (auto [size, w] : weights) {
      if (u < w) {
        pick = size;
        break;
      }
      u -= w;
    }
    sizes.push_back(pick);
  }
  return sizes;
}

inline std::string CapitalizeFirst(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace detail

/// Draws a valid corpus whose POS counts equal spec.pos_distribution and
/// whose chain count equals spec.chain_count, exactly.
inline Corpus gen_corpus(const SynthSpec& spec) {
  const std::size_t n = spec.n_sentences;
  const std::size_t total_terms = spec.total_terms();
  const std::size_t cap = spec.max_terms_per_sentence;
  if (n == 0) throw InfeasibleSpec("n_sentences must be positive");
  if (cap == 0) throw InfeasibleSpec("max_terms_per_sentence must be positive");
  if (total_terms < n)
    throw InfeasibleSpec(std::to_string(total_terms) + " terms cannot fill " +
                         std::to_string(n) + " sentences (each needs >= 1)");
  if (total_terms > n * cap)
    throw InfeasibleSpec(std::to_string(total_terms) + " terms exceed " +
                         std::to_string(n) + " sentences x " + std::to_string(cap) +
                         " terms");
  if (spec.female_ratio < 0 || spec.female_ratio > 1)
    throw InfeasibleSpec("female_ratio must be in [0, 1]");

  SynthRng rng(spec.seed);
  const std::vector<std::size_t> chain_sizes = detail::SampleChainSizes(spec, rng);
  std::size_t chained_terms = 0;
  for (std::size_t s : chain_sizes) {
    if (s > cap)
      throw InfeasibleSpec("a " + std::to_string(s) + "-word chain does not fit in a " +
                           std::to_string(cap) + "-term sentence");
    chained_terms += s;
  }
  if (chained_terms > total_terms)
    throw InfeasibleSpec("chains need " + std::to_string(chained_terms) +
                         " terms but only " + std::to_string(total_terms) + " exist");

  // Chains first: one per sentence in shuffled order, then anywhere they fit.
  std::vector<std::size_t> load(n, 0);
  std::vector<std::vector<std::size_t>> sentence_chains(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t k = 0; k < chain_sizes.size(); ++k) {
    const std::size_t size = chain_sizes[k];
    std::size_t target;
    if (k < n) {
      target = order[k];
    } else {
      std::vector<std::size_t> fits;
      for (std::size_t i = 0; i < n; ++i)
        if (load[i] + size <= cap) fits.push_back(i);
      if (fits.empty())
        throw InfeasibleSpec("no sentence has room for a " + std::to_string(size) +
                             "-word chain");
      target = fits[rng.below(fits.size())];
    }
    load[target] += size;
    sentence_chains[target].push_back(size);
  }

  // Free terms: every empty sentence gets one, the rest go anywhere.
  std::size_t free_terms = total_terms - chained_terms;
  std::vector<std::size_t> free_per_sentence(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (load[i] > 0) continue;
    if (free_terms == 0)
      throw InfeasibleSpec("not enough unchained terms to give every sentence one");
    ++load[i];
    ++free_per_sentence[i];
    --free_terms;
  }
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < n; ++i)
    if (load[i] < cap) open.push_back(i);
  for (; free_terms > 0; --free_terms) {
    if (open.empty()) throw InfeasibleSpec("sentences are full");
    const std::size_t j = rng.below(open.size());
    const std::size_t i = open[j];
    ++load[i];
    ++free_per_sentence[i];
    if (load[i] == cap) {
      open[j] = open.back();
      open.pop_back();
    }
  }

  std::vector<PosTag> pos_pool;
  pos_pool.reserve(total_terms);
  for (auto [pos, count] : spec.pos_distribution) pos_pool.insert(pos_pool.end(), count, pos);
  rng.shuffle(pos_pool);
  std::size_t next_pos = 0;

  Corpus corpus;
  corpus.language_pair = spec.language_pair;
  corpus.comments.push_back("generator=" + std::string(kSynthGeneratorId) +
                            " seed=" + std::to_string(spec.seed));
  corpus.entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SentenceEntry e;
    char id[32];
    std::snprintf(id, sizeof id, "synth-%06zu", i + 1);
    e.id = id;
    e.gender = rng.unit() < spec.female_ratio ? GenderLabel::kF : GenderLabel::kM;
    e.category = std::string(rng.below(2) == 0 ? "1" : "2") + std::string(to_string(e.gender));

    // Slot layout: chain ids (1-based) repeated by chain size, 0 for free.
    std::vector<int> slots;
    for (std::size_t c = 0; c < sentence_chains[i].size(); ++c)
      slots.insert(slots.end(), sentence_chains[i][c], static_cast<int>(c + 1));
    slots.insert(slots.end(), free_per_sentence[i], 0);
    rng.shuffle(slots);

    std::string ref;
    std::string src;
    auto append = [](std::string& s, std::string_view w) {
      if (!s.empty()) s += ' ';
      s += w;
    };
    for (int slot : slots) {
      TermAnnotation t;
      t.pos = pos_pool[next_pos++];
      const auto& lex = synth_lexicon(t.pos);
      const LexiconPair& pair = lex[rng.below(lex.size())];
      const bool fem = e.gender == GenderLabel::kF;
      t.correct_form = std::string(fem ? pair.feminine : pair.masculine);
      t.wrong_form = std::string(fem ? pair.masculine : pair.feminine);
      if (slot > 0) t.chain_id = slot;
      if (rng.below(2) == 0) {
        const std::size_t f = rng.below(kSynthFillers.size());
        append(ref, kSynthFillers[f]);
        append(src, kSynthSourceFillers[f % kSynthSourceFillers.size()]);
      }
      append(ref, t.correct_form);
      append(src, pair.gloss);
      e.terms.push_back(std::move(t));
    }
    append(ref, kSynthFillers[rng.below(kSynthFillers.size())]);
    e.ref = detail::CapitalizeFirst(ref) + ".";
    e.src = detail::CapitalizeFirst(src) + ".";
    corpus.entries.push_back(std::move(e));
  }
  return corpus;
}

/// Rewrites each reference term by term: keep the correct form with
/// p_correct, swap in the wrong form with p_wrong, drop it otherwise.
inline HypothesisSet gen_hypotheses(const Corpus& corpus, const HypothesisProfile& profile,
                                    std::uint64_t seed) {
  profile.validate();
  SynthRng rng(seed);
  HypothesisSet hyps;
  hyps.lines.reserve(corpus.size());
  for (const auto& e : corpus.entries) {
    std::vector<std::string> tokens = normalized_tokens(e.ref);
    std::vector<bool> claimed(tokens.size(), false);
    std::vector<bool> dropped(tokens.size(), false);
    for (const auto& term : e.terms) {
      const double u = rng.unit();
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (claimed[i] || tokens[i] != term.correct_form) continue;
        claimed[i] = true;
        if (u >= profile.p_correct + profile.p_wrong) {
          dropped[i] = true;
        } else if (u >= profile.p_correct) {
          tokens[i] = term.wrong_form;
        }
        break;
      }
    }
    std::string line;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (dropped[i]) continue;
      if (!line.empty()) line += ' ';
      line += tokens[i];
    }
    hyps.lines.push_back(std::move(line));
  }
  return hyps;
}

}  // namespace mge
