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

// Out-of-coverage (OOC) workflow: export the words and chains the automatic
// matcher could not evaluate, read back the labels a human assigned to them,
// and aggregate label proportions.
//
// The tool never assigns labels itself.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mge/chain_metrics.hpp"
#include "mge/corpus.hpp"
#include "mge/error.hpp"
#include "mge/matcher.hpp"

namespace mge {

enum class OocKind { kWord, kChain };

/// Err: translation error. Alt-O: acceptable omission. Alt-C / Alt-W:
/// rewording with correct / wrong gender. Alt-N: neutral rewording.
enum class OocWordLabel { kErr, kAltO, kAltC, kAltW, kAltN };

/// Err: translation error. NO-chain: reworded into a single word. C / W / NO
/// as for covered chains.
enum class OocChainLabel { kErr, kNoChain, kC, kW, kNo };

inline constexpr std::size_t kOocLabelCount = 5;

inline constexpr std::string_view to_string(OocKind k) {
  return k == OocKind::kWord ? "WORD" : "CHAIN";
}

inline constexpr std::array<std::string_view, kOocLabelCount> kWordLabelNames = {
    "Err", "Alt-O", "Alt-C", "Alt-W", "Alt-N"};
inline constexpr std::array<std::string_view, kOocLabelCount> kChainLabelNames = {
    "Err", "NO-chain", "C", "W", "NO"};

inline constexpr const std::array<std::string_view, kOocLabelCount>& label_names(
    OocKind k) {
  return k == OocKind::kWord ? kWordLabelNames : kChainLabelNames;
}

inline constexpr std::string_view to_string(OocWordLabel l) {
  return kWordLabelNames[static_cast<std::size_t>(l)];
}
inline constexpr std::string_view to_string(OocChainLabel l) {
  return kChainLabelNames[static_cast<std::size_t>(l)];
}

namespace detail {

// Accepts the display spelling ("Alt-N") and the enum-style spelling
// ("ALT_N"), case-insensitively.
inline std::string LabelKey(std::string_view s) {
  std::string k;
  for (char c : s) {
    if (c == '_') c = '-';
    k += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return k;
}

}  // namespace detail

inline std::optional<std::size_t> parse_ooc_label(OocKind kind, std::string_view s) {
  const std::string key = detail::LabelKey(s);
  const auto& names = label_names(kind);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (detail::LabelKey(names[i]) == key) return i;
  return std::nullopt;
}

inline std::optional<OocWordLabel> parse_word_label(std::string_view s) {
  auto i = parse_ooc_label(OocKind::kWord, s);
  if (!i) return std::nullopt;
  return static_cast<OocWordLabel>(*i);
}

inline std::optional<OocChainLabel> parse_chain_label(std::string_view s) {
  auto i = parse_ooc_label(OocKind::kChain, s);
  if (!i) return std::nullopt;
  return static_cast<OocChainLabel>(*i);
}

struct OocRecord {
  std::string sentence_id;
  OocKind kind = OocKind::kWord;
  int target = 0;  // term index (WORD) or chain id (CHAIN)
  std::string src;
  std::string ref;
  std::string hyp;
  std::string expected;  // correct>wrong>POS, ';'-joined for chains
  std::string label;     // empty on export
  std::string annotator;

  // Context not carried by the TSV; filled from the corpus on export.
  std::optional<GenderLabel> gender;
  std::optional<PosTag> pos;  // WORD records only
  std::size_t source_line = 0;

  auto identity() const { return std::tuple(sentence_id, kind, target); }
};

inline std::string expected_forms(const SentenceEntry& entry,
                                  std::span<const std::size_t> members) {
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& t = entry.terms[members[i]];
    if (i) out += ';';
    out += t.correct_form + ">" + t.wrong_form + ">" + std::string(to_string(t.pos));
  }
  return out;
}

/// One unlabeled record per NotFound term (WORD) or per uncovered chain
/// (CHAIN), in corpus order.
inline std::vector<OocRecord> extract_ooc(const Corpus& corpus,
                                          const HypothesisSet& hyps, OocKind kind,
                                          const std::string& annotator = "") {
  check_aligned(corpus, hyps);
  std::vector<OocRecord> records;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const SentenceEntry& entry = corpus.entries[i];
    const SentenceMatch m = match_sentence(entry, hyps[i]);
    auto make = [&](int target, std::span<const std::size_t> members) {
      OocRecord r;
      r.sentence_id = entry.id;
      r.kind = kind;
      r.target = target;
      r.src = entry.src;
      r.ref = entry.ref;
      r.hyp = hyps[i];
      r.expected = expected_forms(entry, members);
      r.annotator = annotator;
      r.gender = entry.gender;
      if (kind == OocKind::kWord) r.pos = entry.terms[members.front()].pos;
      return r;
    };
    if (kind == OocKind::kWord) {
      for (std::size_t t = 0; t < entry.terms.size(); ++t) {
        if (m.outcomes[t] != MatchOutcome::kNotFound) continue;
        const std::size_t one[] = {t};
        records.push_back(make(static_cast<int>(t), one));
      }
    } else {
      for (const Chain& c : chains_of(entry)) {
        if (classify_chain(c, m.outcomes) == ChainOutcome::kOutOfCoverage)
          records.push_back(make(c.chain_id, c.members));
      }
    }
  }
  return records;
}

inline constexpr std::array<std::string_view, 9> kOocHeader = {
    "SENTENCE_ID", "KIND", "TARGET", "SRC", "REF", "HYP", "EXPECTED", "LABEL",
    "ANNOTATOR"};

namespace detail {

inline std::string TsvField(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

}  // namespace detail

/// Tabs and line breaks inside fields are written as spaces.
inline void write_ooc_tsv(const std::vector<OocRecord>& records, std::ostream& out) {
  for (std::size_t i = 0; i < kOocHeader.size(); ++i) {
    if (i) out << '\t';
    out << kOocHeader[i];
  }
  out << '\n';
  for (const auto& r : records) {
    using detail::TsvField;
    out << TsvField(r.sentence_id) << '\t' << to_string(r.kind) << '\t' << r.target
        << '\t' << TsvField(r.src) << '\t' << TsvField(r.ref) << '\t'
        << TsvField(r.hyp) << '\t' << TsvField(r.expected) << '\t'
        << TsvField(r.label) << '\t' << TsvField(r.annotator) << '\n';
  }
}

inline std::vector<OocRecord> read_ooc_tsv(std::istream& in) {
  std::vector<std::string> lines = detail::ReadLines(in);
  if (lines.empty()) throw SchemaError(1, "", "missing OOC header line");
  {
    auto header = detail::Split(lines[0], '\t');
    if (header.size() != kOocHeader.size() ||
        !std::equal(header.begin(), header.end(), kOocHeader.begin())) {
      throw SchemaError(1, "", "not an OOC table header");
    }
  }
  std::vector<OocRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (!is_valid_utf8(lines[i])) throw DecodeError(line_no, "invalid UTF-8");
    auto cols = detail::Split(lines[i], '\t');
    if (cols.size() != kOocHeader.size()) {
      throw SchemaError(line_no, "",
                        "expected 9 tab-separated columns, found " +
                            std::to_string(cols.size()));
    }
    OocRecord r;
    r.source_line = line_no;
    r.sentence_id = nfc(cols[0]);
    if (cols[1] == "WORD") {
      r.kind = OocKind::kWord;
    } else if (cols[1] == "CHAIN") {
      r.kind = OocKind::kChain;
    } else {
      throw ValueError(line_no, "KIND", "expected WORD or CHAIN");
    }
    auto [ptr, ec] =
        std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), r.target);
    if (ec != std::errc() || ptr != cols[2].data() + cols[2].size()) {
      throw ValueError(line_no, "TARGET", "not an integer");
    }
    r.src = std::string(cols[3]);
    r.ref = std::string(cols[4]);
    r.hyp = std::string(cols[5]);
    r.expected = std::string(cols[6]);
    r.label = std::string(detail::TrimSpaces(cols[7]));
    r.annotator = std::string(detail::TrimSpaces(cols[8]));
    records.push_back(std::move(r));
  }
  return records;
}

struct LabeledOoc {
  std::string sentence_id;
  OocKind kind = OocKind::kWord;
  int target = 0;
  std::size_t label = 0;  // index into label_names(kind)
  std::string annotator;
  GenderLabel gender = GenderLabel::kF;
  std::optional<PosTag> pos;
};

using LabeledOocSet = std::vector<LabeledOoc>;

/// Validates labeled records against the export they were produced from.
/// Gender and POS context is taken from the export, not from the file.
inline LabeledOocSet ingest_labels(const std::vector<OocRecord>& labeled,
                                   const std::vector<OocRecord>& exported) {
  std::map<std::tuple<std::string, OocKind, int>, const OocRecord*> index;
  for (const auto& r : exported) index[r.identity()] = &r;

  std::set<std::tuple<std::string, OocKind, int, std::string>> seen;
  LabeledOocSet out;
  out.reserve(labeled.size());
  for (const auto& r : labeled) {
    auto it = index.find(r.identity());
    if (it == index.end()) {
      throw UnknownRecord(r.source_line,
                          "no exported " + std::string(to_string(r.kind)) +
                              " record for sentence '" + r.sentence_id +
                              "' target " + std::to_string(r.target));
    }
    auto label = parse_ooc_label(r.kind, r.label);
    if (!label) throw UnknownLabel(r.source_line, r.label);
    if (!seen.emplace(r.sentence_id, r.kind, r.target, r.annotator).second) {
      throw DuplicateRecord(r.source_line,
                            "record for sentence '" + r.sentence_id + "' target " +
                                std::to_string(r.target) +
                                " labeled twice by annotator '" + r.annotator + "'");
    }
    const OocRecord& exp = *it->second;
    LabeledOoc l;
    l.sentence_id = r.sentence_id;
    l.kind = r.kind;
    l.target = r.target;
    l.label = *label;
    l.annotator = r.annotator;
    l.gender = exp.gender.value_or(GenderLabel::kF);
    l.pos = exp.pos;
    out.push_back(std::move(l));
  }
  return out;
}

/// Label counts for one slice.
struct LabelCounts {
  std::array<std::size_t, kOocLabelCount> counts{};

  std::size_t total() const {
    std::size_t n = 0;
    for (auto c : counts) n += c;
    return n;
  }

  /// Unrounded percentage of label i; nullopt for an empty slice.
  std::optional<double> percent(std::size_t i) const {
    if (total() == 0) return std::nullopt;
    return 100.0 * static_cast<double>(counts[i]) / static_cast<double>(total());
  }

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;
};

struct OocKindReport {
  LabelCounts overall;
  std::map<GenderLabel, LabelCounts> by_gender{{GenderLabel::kF, {}},
                                               {GenderLabel::kM, {}}};
  // Neutral rewordings (Alt-N) per POS of the expected word. WORD only.
  std::map<PosTag, std::size_t> alt_n_by_pos;

  friend bool operator==(const OocKindReport&, const OocKindReport&) = default;
};

struct OocReport {
  OocKindReport word;
  OocKindReport chain;

  const OocKindReport& of(OocKind k) const { return k == OocKind::kWord ? word : chain; }
  friend bool operator==(const OocReport&, const OocReport&) = default;
};

inline OocReport aggregate_ooc(const LabeledOocSet& labels) {
  if (labels.empty()) throw EmptySet("no labeled OOC records to aggregate");
  OocReport report;
  for (PosTag p : kAllPosTags) report.word.alt_n_by_pos[p] = 0;
  for (const auto& l : labels) {
    OocKindReport& k = l.kind == OocKind::kWord ? report.word : report.chain;
    ++k.overall.counts[l.label];
    ++k.by_gender[l.gender].counts[l.label];
    if (l.kind == OocKind::kWord &&
        l.label == static_cast<std::size_t>(OocWordLabel::kAltN) && l.pos) {
      ++k.alt_n_by_pos[*l.pos];
    }
  }
  return report;
}

/// Rounds percentages of `counts` to one decimal with the largest-remainder
/// method, so the rounded values of a non-empty slice sum to exactly 100.0.
inline std::array<std::optional<double>, kOocLabelCount> rounded_shares(
    const LabelCounts& counts) {
  std::array<std::optional<double>, kOocLabelCount> out{};
  const std::uint64_t total = counts.total();
  if (total == 0) return out;
  std::array<std::uint64_t, kOocLabelCount> tenths{};
  std::array<std::uint64_t, kOocLabelCount> remainder{};
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < kOocLabelCount; ++i) {
    const std::uint64_t scaled = 1000 * counts.counts[i];
    tenths[i] = scaled / total;
    remainder[i] = scaled % total;
    assigned += tenths[i];
  }
  std::array<std::size_t, kOocLabelCount> order{0, 1, 2, 3, 4};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t j = 0; assigned < 1000; ++j, ++assigned) ++tenths[order[j]];
  for (std::size_t i = 0; i < kOocLabelCount; ++i)
    out[i] = static_cast<double>(tenths[i]) / 10.0;
  return out;
}

}  // namespace mge
