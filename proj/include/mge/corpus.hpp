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

// Annotated corpus model, TSV reader/writer and hypothesis loading.
//
// Corpus file layout (UTF-8, LF, tab separated):
//
//   # language_pair=en-it          optional comment lines before the header
//   ID  SRC  REF  GENDER  CATEGORY  GENDERTERMS
//   ...
//
// GENDERTERMS is `term (";" term)*` with `term = correct ">" wrong ">" pos
// ">" chain_id?`. An empty chain_id means the term is not part of an
// agreement chain.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mge/error.hpp"
#include "mge/textnorm.hpp"

namespace mge {

enum class PosTag { kArt, kPron, kAdjDet, kAdjDes, kNoun, kVerb };
enum class WordClass { kClosed, kOpen };
enum class GenderLabel { kF, kM };

inline constexpr std::array<PosTag, 6> kAllPosTags = {
    PosTag::kArt,  PosTag::kPron, PosTag::kAdjDet,
    PosTag::kAdjDes, PosTag::kNoun, PosTag::kVerb};
inline constexpr std::array<WordClass, 2> kAllWordClasses = {
    WordClass::kClosed, WordClass::kOpen};
inline constexpr std::array<GenderLabel, 2> kAllGenders = {GenderLabel::kF,
                                                           GenderLabel::kM};

inline constexpr std::string_view to_string(PosTag pos) {
  switch (pos) {
    case PosTag::kArt: return "ART";
    case PosTag::kPron: return "PRON";
    case PosTag::kAdjDet: return "ADJ-DET";
    case PosTag::kAdjDes: return "ADJ-DES";
    case PosTag::kNoun: return "NOUN";
    case PosTag::kVerb: return "VERB";
  }
  return "?";
}

inline constexpr std::string_view to_string(WordClass c) {
  return c == WordClass::kClosed ? "CLOSED" : "OPEN";
}

inline constexpr std::string_view to_string(GenderLabel g) {
  return g == GenderLabel::kF ? "F" : "M";
}

inline std::optional<PosTag> parse_pos(std::string_view s) {
  for (PosTag p : kAllPosTags)
    if (to_string(p) == s) return p;
  return std::nullopt;
}

inline std::optional<GenderLabel> parse_gender(std::string_view s) {
  if (s == "F") return GenderLabel::kF;
  if (s == "M") return GenderLabel::kM;
  return std::nullopt;
}

/// Function words (articles, pronouns, limiting adjectives) are closed
/// class; nouns, verbs and descriptive adjectives are open class.
inline constexpr WordClass word_class(PosTag pos) {
  switch (pos) {
    case PosTag::kArt:
    case PosTag::kPron:
    case PosTag::kAdjDet:
      return WordClass::kClosed;
    default:
      return WordClass::kOpen;
  }
}

struct TermAnnotation {
  std::string correct_form;
  std::string wrong_form;
  PosTag pos = PosTag::kNoun;
  std::optional<int> chain_id;

  friend bool operator==(const TermAnnotation&,
                         const TermAnnotation&) = default;
};

struct SentenceEntry {
  std::string id;
  std::string src;
  std::string ref;
  GenderLabel gender = GenderLabel::kF;
  std::string category;
  std::vector<TermAnnotation> terms;

  friend bool operator==(const SentenceEntry&, const SentenceEntry&) = default;
};

struct Chain {
  std::string sentence_id;
  int chain_id = 0;
  std::vector<std::size_t> members;  // indices into SentenceEntry::terms

  friend bool operator==(const Chain&, const Chain&) = default;
};

struct Corpus {
  std::string language_pair;
  // Comment lines (without the leading "# ") other than language_pair.
  std::vector<std::string> comments;
  std::vector<SentenceEntry> entries;

  std::size_t size() const { return entries.size(); }

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct ParseOptions {
  // Check that annotated correct forms occur (with multiplicity) in the
  // tokenized reference.
  bool check_forms_in_reference = true;
};

inline constexpr std::array<std::string_view, 6> kCorpusHeader = {
    "ID", "SRC", "REF", "GENDER", "CATEGORY", "GENDERTERMS"};

/// Groups terms by chain id. Chains come out sorted by id, members in
/// annotation order.
inline std::vector<Chain> chains_of(const SentenceEntry& entry) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < entry.terms.size(); ++i) {
    if (entry.terms[i].chain_id) groups[*entry.terms[i].chain_id].push_back(i);
  }
  std::vector<Chain> chains;
  chains.reserve(groups.size());
  for (auto& [id, members] : groups) {
    chains.push_back(Chain{entry.id, id, std::move(members)});
  }
  return chains;
}

/// The reference with every annotated correct form replaced by its wrong
/// form, as a space-joined normalized token sequence. Terms claim reference
/// token occurrences left to right, in annotation order.
inline std::string wrong_substituted(const SentenceEntry& entry) {
  std::vector<std::string> tokens = normalized_tokens(entry.ref);
  std::vector<bool> claimed(tokens.size(), false);
  for (const auto& term : entry.terms) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!claimed[i] && tokens[i] == term.correct_form) {
        tokens[i] = term.wrong_form;
        claimed[i] = true;
        break;
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view TrimSpaces(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Reads the whole stream and splits it into lines. A trailing LF does not
// start an extra line; a trailing CR on each line is dropped.
inline std::vector<std::string> ReadLines(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::vector<std::string> lines;
  if (data.empty()) return lines;
  std::size_t start = 0;
  while (start < data.size()) {
    std::size_t end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    std::string line = data.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

inline bool FormIsSingleToken(const std::string& form) {
  if (form.find('>') != std::string::npos) return false;
  auto tokens = tokenize(form);
  return tokens.size() == 1 && tokens.front() == form;
}

inline TermAnnotation ParseTerm(std::string_view raw, std::size_t line) {
  static constexpr const char* kCol = "GENDERTERMS";
  auto fields = Split(raw, '>');
  if (fields.size() != 4) {
    throw ValueError(line, kCol,
                     "term '" + std::string(raw) +
                         "' must have the form correct>wrong>POS>chain_id");
  }
  TermAnnotation term;
  term.correct_form = normalize(TrimSpaces(fields[0]));
  term.wrong_form = normalize(TrimSpaces(fields[1]));
  auto pos = parse_pos(TrimSpaces(fields[2]));
  if (!pos) {
    throw ValueError(line, kCol,
                     "bad POS tag '" + std::string(fields[2]) +
                         "' (expected ART, PRON, ADJ-DET, ADJ-DES, NOUN or VERB)");
  }
  term.pos = *pos;
  std::string_view chain = TrimSpaces(fields[3]);
  if (!chain.empty()) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(chain.data(), chain.data() + chain.size(), id);
    if (ec != std::errc() || ptr != chain.data() + chain.size() || id < 0) {
      throw ValueError(line, kCol,
                       "chain id '" + std::string(chain) +
                           "' is not a non-negative decimal integer");
    }
    term.chain_id = id;
  }
  if (term.correct_form.empty() || term.wrong_form.empty()) {
    throw ValueError(line, kCol, "term '" + std::string(raw) + "' has an empty form");
  }
  if (!FormIsSingleToken(term.correct_form) ||
      !FormIsSingleToken(term.wrong_form)) {
    throw ValueError(line, kCol,
                     "term '" + std::string(raw) + "' has a form that is not a single token");
  }
  if (term.correct_form == term.wrong_form) {
    throw ValueError(line, kCol,
                     "correct and wrong form are identical ('" +
                         term.correct_form + "')");
  }
  return term;
}

inline std::string Join(const std::vector<std::string>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace detail

/// Checks the sentence-level invariants of an entry: non-empty terms, no
/// singleton chains, and (optionally) that the reference realizes every
/// correct form. `line` is used only for error locations.
inline void validate_entry(const SentenceEntry& entry, std::size_t line,
                           const ParseOptions& options = {}) {
  if (entry.id.empty()) throw ValueError(line, "ID", "empty id");
  if (entry.terms.empty()) {
    throw ValueError(line, "GENDERTERMS", "terms empty for '" + entry.id + "'");
  }
  std::map<int, std::size_t> chain_sizes;
  for (const auto& t : entry.terms)
    if (t.chain_id) ++chain_sizes[*t.chain_id];
  for (auto [id, n] : chain_sizes) {
    if (n < 2) {
      throw ValueError(line, "GENDERTERMS",
                       "singleton chain " + std::to_string(id) + " in '" +
                           entry.id + "' (a chain needs at least 2 terms)");
    }
  }
  if (!options.check_forms_in_reference) return;

  TokenMultiset ref = to_multiset(normalized_tokens(entry.ref));
  for (const auto& t : entry.terms) {
    if (!ref.take(t.correct_form)) {
      throw ValueError(line, "REF",
                       "correct form '" + t.correct_form +
                           "' does not occur (often enough) in the reference");
    }
  }
  TokenMultiset wrong = to_multiset(tokenize(wrong_substituted(entry)));
  for (const auto& t : entry.terms) {
    if (!wrong.take(t.wrong_form)) {
      throw ValueError(line, "REF",
                       "wrong form '" + t.wrong_form +
                           "' does not occur in the wrong-substituted reference");
    }
  }
}

/// Reads a corpus TSV. Text fields are NFC-normalized, term forms are fully
/// normalized (NFC + lowercase). Every failure carries its line number.
inline Corpus parse_corpus(std::istream& in, const ParseOptions& options = {}) {
  std::vector<std::string> lines = detail::ReadLines(in);
  Corpus corpus;
  std::size_t i = 0;

  for (; i < lines.size() && !lines[i].empty() && lines[i][0] == '#'; ++i) {
    if (!is_valid_utf8(lines[i])) throw DecodeError(i + 1, "invalid UTF-8");
    std::string_view body = std::string_view(lines[i]).substr(1);
    if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    constexpr std::string_view kLangKey = "language_pair=";
    if (body.starts_with(kLangKey)) {
      corpus.language_pair = std::string(body.substr(kLangKey.size()));
    } else {
      corpus.comments.emplace_back(body);
    }
  }

  if (i >= lines.size()) throw SchemaError(i + 1, "", "missing header line");
  {
    auto header = detail::Split(lines[i], '\t');
    if (header.size() != kCorpusHeader.size() ||
        !std::equal(header.begin(), header.end(), kCorpusHeader.begin())) {
      throw SchemaError(i + 1, "",
                        "header must be ID\\tSRC\\tREF\\tGENDER\\tCATEGORY\\tGENDERTERMS");
    }
  }
  ++i;

  std::unordered_set<std::string> seen_ids;
  for (; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string& line = lines[i];
    if (!is_valid_utf8(line)) throw DecodeError(line_no, "invalid UTF-8");
    auto cols = detail::Split(line, '\t');
    if (cols.size() != kCorpusHeader.size()) {
      throw SchemaError(line_no, "",
                        "expected 6 tab-separated columns, found " +
                            std::to_string(cols.size()));
    }
    SentenceEntry entry;
    entry.id = nfc(cols[0]);
    entry.src = nfc(cols[1]);
    entry.ref = nfc(cols[2]);
    auto gender = parse_gender(cols[3]);
    if (!gender) {
      throw ValueError(line_no, "GENDER",
                       "bad gender '" + std::string(cols[3]) + "' (expected F or M)");
    }
    entry.gender = *gender;
    entry.category = nfc(cols[4]);

    std::string_view terms_col = detail::TrimSpaces(cols[5]);
    if (!terms_col.empty()) {
      for (auto raw : detail::Split(terms_col, ';')) {
        raw = detail::TrimSpaces(raw);
        if (raw.empty()) {
          throw ValueError(line_no, "GENDERTERMS", "empty term in list");
        }
        entry.terms.push_back(detail::ParseTerm(nfc(raw), line_no));
      }
    }
    if (!seen_ids.insert(entry.id).second) {
      throw ValueError(line_no, "ID", "duplicate id '" + entry.id + "'");
    }
    validate_entry(entry, line_no, options);
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

inline Corpus parse_corpus_file(const std::string& path,
                                const ParseOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  try {
    return parse_corpus(in, options);
  } catch (const LocatedError& e) {
    throw Error(path + ": " + e.what());
  }
}

inline std::string format_terms(const std::vector<TermAnnotation>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i) out += ';';
    out += t.correct_form;
    out += '>';
    out += t.wrong_form;
    out += '>';
    out += to_string(t.pos);
    out += '>';
    if (t.chain_id) out += std::to_string(*t.chain_id);
  }
  return out;
}

/// Serializes a valid corpus. parse_corpus(write_corpus(c)) == c.
inline void write_corpus(const Corpus& corpus, std::ostream& out) {
  if (!corpus.language_pair.empty())
    out << "# language_pair=" << corpus.language_pair << '\n';
  for (const auto& c : corpus.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < kCorpusHeader.size(); ++i) {
    if (i) out << '\t';
    out << kCorpusHeader[i];
  }
  out << '\n';
  for (const auto& e : corpus.entries) {
    out << e.id << '\t' << e.src << '\t' << e.ref << '\t' << to_string(e.gender)
        << '\t' << e.category << '\t' << format_terms(e.terms) << '\n';
  }
}

inline std::string write_corpus(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return out.str();
}

/// System outputs aligned 1:1 with a corpus by line number.
struct HypothesisSet {
  std::vector<std::string> lines;

  std::size_t size() const { return lines.size(); }
  const std::string& operator[](std::size_t i) const { return lines[i]; }
};

inline void check_aligned(const Corpus& corpus, const HypothesisSet& hyps) {
  if (hyps.size() != corpus.size())
    throw LengthMismatch(hyps.size(), corpus.size());
}

inline HypothesisSet load_hypotheses(std::istream& in, const Corpus& corpus) {
  HypothesisSet hyps;
  hyps.lines = detail::ReadLines(in);
  for (std::size_t i = 0; i < hyps.lines.size(); ++i) {
    if (!is_valid_utf8(hyps.lines[i])) throw DecodeError(i + 1, "invalid UTF-8");
    hyps.lines[i] = nfc(hyps.lines[i]);
  }
  check_aligned(corpus, hyps);
  return hyps;
}

inline HypothesisSet load_hypotheses_file(const std::string& path,
                                          const Corpus& corpus) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open hypothesis file '" + path + "'");
  try {
    return load_hypotheses(in, corpus);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

/// The reference column as a hypothesis set.
inline HypothesisSet references_as_hypotheses(const Corpus& corpus) {
  HypothesisSet hyps;
  for (const auto& e : corpus.entries) hyps.lines.push_back(e.ref);
  return hyps;
}

/// Each reference with its annotated correct forms swapped for wrong forms.
inline HypothesisSet inverted_references(const Corpus& corpus) {
  HypothesisSet hyps;
  for (const auto& e : corpus.entries) hyps.lines.push_back(wrong_substituted(e));
  return hyps;
}

/// Keeps the entries (and their aligned hypotheses) accepted by `keep`.
inline std::pair<Corpus, HypothesisSet> filter_aligned(
    const Corpus& corpus, const HypothesisSet& hyps,
    const std::function<bool(const SentenceEntry&)>& keep) {
  check_aligned(corpus, hyps);
  Corpus sub;
  sub.language_pair = corpus.language_pair;
  sub.comments = corpus.comments;
  HypothesisSet sub_hyps;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!keep(corpus.entries[i])) continue;
    sub.entries.push_back(corpus.entries[i]);
    sub_hyps.lines.push_back(hyps[i]);
  }
  return {std::move(sub), std::move(sub_hyps)};
}

/// Annotation statistics in the shape of a per-language distribution table.
struct CorpusStats {
  std::size_t sentences = 0;
  std::size_t terms = 0;
  std::size_t chains = 0;
  std::size_t chain_members = 0;
  std::map<PosTag, std::size_t> by_pos;
  std::map<GenderLabel, std::size_t> terms_by_gender;
  std::map<GenderLabel, std::size_t> chains_by_gender;
  std::map<std::size_t, std::size_t> chain_size_histogram;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

inline CorpusStats stats(const Corpus& corpus) {
  CorpusStats s;
  for (PosTag p : kAllPosTags) s.by_pos[p] = 0;
  for (GenderLabel g : kAllGenders) {
    s.terms_by_gender[g] = 0;
    s.chains_by_gender[g] = 0;
  }
  s.sentences = corpus.size();
  for (const auto& e : corpus.entries) {
    s.terms += e.terms.size();
    s.terms_by_gender[e.gender] += e.terms.size();
    for (const auto& t : e.terms) ++s.by_pos[t.pos];
    for (const auto& c : chains_of(e)) {
      ++s.chains;
      ++s.chains_by_gender[e.gender];
      s.chain_members += c.members.size();
      ++s.chain_size_histogram[c.members.size()];
    }
  }
  return s;
}

}  // namespace mge
