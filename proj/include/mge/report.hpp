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

// JSON, CSV and Markdown renderings of every report. All three derive from
// the same integer counts; percentages are one-decimal, half-up, and an
// undefined ratio is JSON null, an empty CSV field and "–" in Markdown.

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mge/chain_metrics.hpp"
#include "mge/corpus.hpp"
#include "mge/error.hpp"
#include "mge/iaa.hpp"
#include "mge/ooc.hpp"
#include "mge/word_metrics.hpp"

namespace mge {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ReportFormat { kJson, kCsv, kMarkdown };

inline std::optional<ReportFormat> parse_format(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

struct ManifestInput {
  std::string role;  // e.g. "corpus", "hyp"
  std::string path;
  std::string sha256;
};

/// Provenance embedded in every emitted report.
struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string command;
  std::vector<ManifestInput> inputs;
  std::vector<std::pair<std::string, std::string>> options;
  std::optional<std::string> timestamp;  // omitted with --no-timestamp
};

namespace detail {

inline Json NullablePct(std::optional<double> v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::string Fixed1(std::optional<double> v, std::string_view undefined) {
  if (!v) return std::string(undefined);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

inline std::string Signed1(std::optional<double> v, std::string_view undefined) {
  if (!v) return std::string(undefined);
  double r = std::round(*v * 10.0) / 10.0;
  if (r == 0.0) r = 0.0;  // no "-0.0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.1f", r);
  return buf;
}

inline std::optional<double> Round1(std::optional<double> v) {
  if (!v) return std::nullopt;
  double r = std::round(*v * 10.0) / 10.0;
  return r == 0.0 ? 0.0 : r;
}

inline constexpr std::string_view kDash = "–";

inline std::string CsvManifest(const RunManifest& m) {
  std::ostringstream out;
  out << "# tool=mge " << m.tool_version << '\n';
  if (!m.command.empty()) out << "# command=" << m.command << '\n';
  for (const auto& in : m.inputs)
    out << "# input." << in.role << '=' << in.path << " sha256=" << in.sha256 << '\n';
  for (const auto& [k, v] : m.options) out << "# option." << k << '=' << v << '\n';
  if (m.timestamp) out << "# timestamp=" << *m.timestamp << '\n';
  return out.str();
}

inline std::string MarkdownManifest(const RunManifest& m) {
  std::ostringstream out;
  out << "\n_mge " << m.tool_version;
  if (!m.command.empty()) out << " `" << m.command << "`";
  out << "_\n";
  for (const auto& in : m.inputs)
    out << "\n- " << in.role << ": `" << in.path << "` (sha256 `" << in.sha256 << "`)";
  for (const auto& [k, v] : m.options) out << "\n- " << k << ": `" << v << "`";
  if (m.timestamp) out << "\n- timestamp: " << *m.timestamp;
  out << '\n';
  return out.str();
}

inline std::string SliceKey(GenderLabel g, PosTag p) {
  return std::string(to_string(g)) + "/" + std::string(to_string(p));
}
inline std::string SliceKey(GenderLabel g, WordClass c) {
  return std::string(to_string(g)) + "/" + std::string(to_string(c));
}

}  // namespace detail

inline Json to_json(const RunManifest& m) {
  Json j;
  j["tool"] = "mge";
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  Json inputs = Json::array();
  for (const auto& in : m.inputs)
    inputs.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  j["inputs"] = inputs;
  Json options = Json::object();
  for (const auto& [k, v] : m.options) options[k] = v;
  j["options"] = options;
  if (m.timestamp) j["timestamp"] = *m.timestamp;
  return j;
}

// ---------------------------------------------------------------------------
// Word-level report.

inline Json to_json(const CountCell& c) {
  return Json{{"total", c.total()},
              {"found_correct", c.found_correct},
              {"found_wrong", c.found_wrong},
              {"coverage", detail::NullablePct(c.coverage_pct())},
              {"accuracy", detail::NullablePct(c.accuracy_pct())}};
}

inline Json to_json(const WordEvalReport& r) {
  Json j;
  j["overall"] = to_json(r.overall);
  Json by_gender = Json::object();
  for (auto& [g, c] : r.by_gender) by_gender[std::string(to_string(g))] = to_json(c);
  j["by_gender"] = by_gender;
  Json by_pos = Json::object();
  for (auto& [p, c] : r.by_pos) by_pos[std::string(to_string(p))] = to_json(c);
  j["by_pos"] = by_pos;
  Json by_class = Json::object();
  for (auto& [k, c] : r.by_class) by_class[std::string(to_string(k))] = to_json(c);
  j["by_class"] = by_class;
  Json gp = Json::object();
  for (auto& [k, c] : r.by_gender_pos)
    gp[std::string(to_string(k.first))][std::string(to_string(k.second))] = to_json(c);
  j["by_gender_pos"] = gp;
  Json gc = Json::object();
  for (auto& [k, c] : r.by_gender_class)
    gc[std::string(to_string(k.first))][std::string(to_string(k.second))] = to_json(c);
  j["by_gender_class"] = gc;
  return j;
}

namespace detail {

inline CountCell CellFromJson(const Json& j, const std::string& where) {
  try {
    CountCell c;
    c.found_correct = j.at("found_correct").get<std::size_t>();
    c.found_wrong = j.at("found_wrong").get<std::size_t>();
    const std::size_t total = j.at("total").get<std::size_t>();
    if (total < c.found_correct + c.found_wrong)
      throw Error("total smaller than found counts");
    c.not_found = total - c.found_correct - c.found_wrong;
    return c;
  } catch (const Json::exception& e) {
    throw Error("malformed word report cell " + where + ": " + e.what());
  }
}

}  // namespace detail

/// Rebuilds the counts of a word report from its JSON rendering.
inline WordEvalReport word_report_from_json(const Json& j) {
  WordEvalReport r;
  try {
    r.overall = detail::CellFromJson(j.at("overall"), "overall");
    for (GenderLabel g : kAllGenders) {
      const std::string gs(to_string(g));
      r.by_gender[g] = detail::CellFromJson(j.at("by_gender").at(gs), gs);
      for (PosTag p : kAllPosTags) {
        const std::string ps(to_string(p));
        r.by_gender_pos[{g, p}] =
            detail::CellFromJson(j.at("by_gender_pos").at(gs).at(ps), gs + "/" + ps);
      }
      for (WordClass c : kAllWordClasses) {
        const std::string cs(to_string(c));
        r.by_gender_class[{g, c}] =
            detail::CellFromJson(j.at("by_gender_class").at(gs).at(cs), gs + "/" + cs);
      }
    }
    for (PosTag p : kAllPosTags) {
      const std::string ps(to_string(p));
      r.by_pos[p] = detail::CellFromJson(j.at("by_pos").at(ps), ps);
    }
    for (WordClass c : kAllWordClasses) {
      const std::string cs(to_string(c));
      r.by_class[c] = detail::CellFromJson(j.at("by_class").at(cs), cs);
    }
  } catch (const Json::exception& e) {
    throw Error(std::string("not a word report: ") + e.what());
  }
  return r;
}

namespace detail {

template <class Fn>
void ForEachWordSlice(const WordEvalReport& r, Fn fn) {
  fn("overall", "All", r.overall);
  for (auto& [g, c] : r.by_gender) fn("by_gender", std::string(to_string(g)), c);
  for (auto& [p, c] : r.by_pos) fn("by_pos", std::string(to_string(p)), c);
  for (auto& [k, c] : r.by_class) fn("by_class", std::string(to_string(k)), c);
  for (auto& [k, c] : r.by_gender_pos) fn("by_gender_pos", SliceKey(k.first, k.second), c);
  for (auto& [k, c] : r.by_gender_class)
    fn("by_gender_class", SliceKey(k.first, k.second), c);
}

}  // namespace detail

inline std::string render(const WordEvalReport& r, ReportFormat format,
                          const RunManifest& manifest) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(r);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv: {
      out << detail::CsvManifest(manifest);
      out << "slice,key,total,found_correct,found_wrong,not_found,coverage,accuracy\n";
      detail::ForEachWordSlice(r, [&](std::string_view slice, const std::string& key,
                                      const CountCell& c) {
        out << slice << ',' << key << ',' << c.total() << ',' << c.found_correct << ','
            << c.found_wrong << ',' << c.not_found << ','
            << detail::Fixed1(c.coverage_pct(), "") << ','
            << detail::Fixed1(c.accuracy_pct(), "") << '\n';
      });
      break;
    }
    case ReportFormat::kMarkdown: {
      using detail::Fixed1;
      using detail::kDash;
      out << "| All-Cov | All-Acc | F-Acc | M-Acc |\n|---:|---:|---:|---:|\n";
      out << "| " << Fixed1(r.overall.coverage_pct(), kDash) << " | "
          << Fixed1(r.overall.accuracy_pct(), kDash) << " | "
          << Fixed1(r.by_gender.at(GenderLabel::kF).accuracy_pct(), kDash) << " | "
          << Fixed1(r.by_gender.at(GenderLabel::kM).accuracy_pct(), kDash) << " |\n\n";

      out << "| POS | F-Acc | M-Acc | Cov |\n|---|---:|---:|---:|\n";
      for (PosTag p : kAllPosTags) {
        out << "| " << to_string(p) << " | "
            << Fixed1(r.by_gender_pos.at({GenderLabel::kF, p}).accuracy_pct(), kDash)
            << " | "
            << Fixed1(r.by_gender_pos.at({GenderLabel::kM, p}).accuracy_pct(), kDash)
            << " | " << Fixed1(r.by_pos.at(p).coverage_pct(), kDash) << " |\n";
      }
      for (WordClass c : kAllWordClasses) {
        out << "| " << to_string(c) << " | "
            << Fixed1(r.by_gender_class.at({GenderLabel::kF, c}).accuracy_pct(), kDash)
            << " | "
            << Fixed1(r.by_gender_class.at({GenderLabel::kM, c}).accuracy_pct(), kDash)
            << " | " << Fixed1(r.by_class.at(c).coverage_pct(), kDash) << " |\n";
      }

      out << "\n| Slice | Key | Total | Correct | Wrong | Not found | Cov | Acc |\n"
          << "|---|---|---:|---:|---:|---:|---:|---:|\n";
      detail::ForEachWordSlice(r, [&](std::string_view slice, const std::string& key,
                                      const CountCell& c) {
        out << "| " << slice << " | " << key << " | " << c.total() << " | "
            << c.found_correct << " | " << c.found_wrong << " | " << c.not_found << " | "
            << Fixed1(c.coverage_pct(), kDash) << " | " << Fixed1(c.accuracy_pct(), kDash)
            << " |\n";
      });
      out << detail::MarkdownManifest(manifest);
      break;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Chain-level report.

inline Json to_json(const ChainCell& c) {
  return Json{{"total", c.total},
              {"covered", c.covered},
              {"C", c.c_count},
              {"W", c.w_count},
              {"NO", c.no_count},
              {"coverage", detail::NullablePct(c.coverage_pct())},
              {"C_pct", detail::NullablePct(c.c_pct())},
              {"W_pct", detail::NullablePct(c.w_pct())},
              {"NO_pct", detail::NullablePct(c.no_pct())}};
}

inline Json to_json(const ChainEvalReport& r) {
  return Json{{"all", to_json(r.all)},
              {"F", to_json(r.by_gender.at(GenderLabel::kF))},
              {"M", to_json(r.by_gender.at(GenderLabel::kM))}};
}

inline std::string render(const ChainEvalReport& r, ReportFormat format,
                          const RunManifest& manifest) {
  std::ostringstream out;
  const std::pair<std::string_view, const ChainCell*> rows[] = {
      {"All", &r.all},
      {"F", &r.by_gender.at(GenderLabel::kF)},
      {"M", &r.by_gender.at(GenderLabel::kM)}};
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(r);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv: {
      out << detail::CsvManifest(manifest);
      out << "slice,total,covered,C,W,NO,coverage,C_pct,W_pct,NO_pct\n";
      for (auto [name, c] : rows) {
        out << name << ',' << c->total << ',' << c->covered << ',' << c->c_count << ','
            << c->w_count << ',' << c->no_count << ','
            << detail::Fixed1(c->coverage_pct(), "") << ','
            << detail::Fixed1(c->c_pct(), "") << ',' << detail::Fixed1(c->w_pct(), "")
            << ',' << detail::Fixed1(c->no_pct(), "") << '\n';
      }
      break;
    }
    case ReportFormat::kMarkdown: {
      using detail::Fixed1;
      using detail::kDash;
      out << "| Chains | Total | Covered | Cov | C | W | NO |\n"
          << "|---|---:|---:|---:|---:|---:|---:|\n";
      for (auto [name, c] : rows) {
        out << "| " << name << " | " << c->total << " | " << c->covered << " | "
            << Fixed1(c->coverage_pct(), kDash) << " | " << Fixed1(c->c_pct(), kDash)
            << " | " << Fixed1(c->w_pct(), kDash) << " | " << Fixed1(c->no_pct(), kDash)
            << " |\n";
      }
      out << detail::MarkdownManifest(manifest);
      break;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Report deltas.

inline Json to_json(const MetricDelta& d) {
  return Json{{"coverage", detail::NullablePct(detail::Round1(d.coverage_pp))},
              {"accuracy", detail::NullablePct(detail::Round1(d.accuracy_pp))}};
}

inline Json to_json(const ReportDelta& d) {
  Json j;
  j["overall"] = to_json(d.overall);
  Json g = Json::object();
  for (auto& [k, v] : d.by_gender) g[std::string(to_string(k))] = to_json(v);
  j["by_gender"] = g;
  Json p = Json::object();
  for (auto& [k, v] : d.by_pos) p[std::string(to_string(k))] = to_json(v);
  j["by_pos"] = p;
  Json c = Json::object();
  for (auto& [k, v] : d.by_class) c[std::string(to_string(k))] = to_json(v);
  j["by_class"] = c;
  Json gp = Json::object();
  for (auto& [k, v] : d.by_gender_pos)
    gp[std::string(to_string(k.first))][std::string(to_string(k.second))] = to_json(v);
  j["by_gender_pos"] = gp;
  Json gc = Json::object();
  for (auto& [k, v] : d.by_gender_class)
    gc[std::string(to_string(k.first))][std::string(to_string(k.second))] = to_json(v);
  j["by_gender_class"] = gc;
  return j;
}

inline std::string render(const ReportDelta& d, ReportFormat format,
                          const RunManifest& manifest) {
  std::vector<std::pair<std::string, const MetricDelta*>> rows;
  rows.emplace_back("overall/All", &d.overall);
  for (auto& [k, v] : d.by_gender) rows.emplace_back("by_gender/" + std::string(to_string(k)), &v);
  for (auto& [k, v] : d.by_pos) rows.emplace_back("by_pos/" + std::string(to_string(k)), &v);
  for (auto& [k, v] : d.by_class) rows.emplace_back("by_class/" + std::string(to_string(k)), &v);
  for (auto& [k, v] : d.by_gender_pos)
    rows.emplace_back("by_gender_pos/" + detail::SliceKey(k.first, k.second), &v);
  for (auto& [k, v] : d.by_gender_class)
    rows.emplace_back("by_gender_class/" + detail::SliceKey(k.first, k.second), &v);

  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(d);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << detail::CsvManifest(manifest) << "slice,coverage_pp,accuracy_pp\n";
      for (auto& [name, v] : rows)
        out << name << ',' << detail::Signed1(v->coverage_pp, "") << ','
            << detail::Signed1(v->accuracy_pp, "") << '\n';
      break;
    case ReportFormat::kMarkdown:
      out << "| Slice | ΔCov | ΔAcc |\n|---|---:|---:|\n";
      for (auto& [name, v] : rows)
        out << "| " << name << " | " << detail::Signed1(v->coverage_pp, detail::kDash)
            << " | " << detail::Signed1(v->accuracy_pp, detail::kDash) << " |\n";
      out << detail::MarkdownManifest(manifest);
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Corpus statistics.

inline Json to_json(const CorpusStats& s) {
  Json pos = Json::object();
  for (auto& [p, n] : s.by_pos) pos[std::string(to_string(p))] = n;
  Json sizes = Json::object();
  for (auto& [size, n] : s.chain_size_histogram) sizes[std::to_string(size)] = n;
  return Json{{"sentences", s.sentences},
              {"pos_total", s.terms},
              {"pos", pos},
              {"agr_chains", s.chains},
              {"chain_members", s.chain_members},
              {"chain_sizes", sizes},
              {"terms_by_gender",
               {{"F", s.terms_by_gender.at(GenderLabel::kF)},
                {"M", s.terms_by_gender.at(GenderLabel::kM)}}},
              {"chains_by_gender",
               {{"F", s.chains_by_gender.at(GenderLabel::kF)},
                {"M", s.chains_by_gender.at(GenderLabel::kM)}}}};
}

inline std::string render(const CorpusStats& s, ReportFormat format,
                          const RunManifest& manifest) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(s);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << detail::CsvManifest(manifest) << "row,count\n";
      out << "POS (tot)," << s.terms << '\n';
      for (auto& [p, n] : s.by_pos) out << to_string(p) << ',' << n << '\n';
      out << "AGR-CHAINS," << s.chains << '\n';
      out << "SENTENCES," << s.sentences << '\n';
      break;
    case ReportFormat::kMarkdown:
      out << "| | Count |\n|---|---:|\n";
      out << "| **POS** (tot) | " << s.terms << " |\n";
      for (auto& [p, n] : s.by_pos) out << "| " << to_string(p) << " | " << n << " |\n";
      out << "| **AGR-CHAINS** | " << s.chains << " |\n";
      out << "| Sentences | " << s.sentences << " |\n";
      out << detail::MarkdownManifest(manifest);
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// OOC label proportions.

inline Json to_json(const LabelCounts& c, OocKind kind) {
  Json counts = Json::object();
  Json pct = Json::object();
  const auto shares = rounded_shares(c);
  const auto& names = label_names(kind);
  for (std::size_t i = 0; i < kOocLabelCount; ++i) {
    counts[std::string(names[i])] = c.counts[i];
    pct[std::string(names[i])] = detail::NullablePct(shares[i]);
  }
  return Json{{"total", c.total()}, {"counts", counts}, {"pct", pct}};
}

inline Json to_json(const OocKindReport& r, OocKind kind) {
  Json j{{"all", to_json(r.overall, kind)},
         {"F", to_json(r.by_gender.at(GenderLabel::kF), kind)},
         {"M", to_json(r.by_gender.at(GenderLabel::kM), kind)}};
  if (kind == OocKind::kWord) {
    Json pos = Json::object();
    for (auto& [p, n] : r.alt_n_by_pos) pos[std::string(to_string(p))] = n;
    j["alt_n_by_pos"] = pos;
  }
  return j;
}

inline Json to_json(const OocReport& r) {
  return Json{{"word", to_json(r.word, OocKind::kWord)},
              {"chain", to_json(r.chain, OocKind::kChain)}};
}

inline std::string render(const OocReport& r, ReportFormat format,
                          const RunManifest& manifest) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(r);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << detail::CsvManifest(manifest) << "kind,slice,label,count,pct\n";
      for (OocKind kind : {OocKind::kWord, OocKind::kChain}) {
        const OocKindReport& k = r.of(kind);
        const std::pair<std::string_view, const LabelCounts*> rows[] = {
            {"All", &k.overall},
            {"F", &k.by_gender.at(GenderLabel::kF)},
            {"M", &k.by_gender.at(GenderLabel::kM)}};
        for (auto [slice, c] : rows) {
          const auto shares = rounded_shares(*c);
          for (std::size_t i = 0; i < kOocLabelCount; ++i)
            out << to_string(kind) << ',' << slice << ',' << label_names(kind)[i] << ','
                << c->counts[i] << ',' << detail::Fixed1(shares[i], "") << '\n';
        }
      }
      break;
    case ReportFormat::kMarkdown:
      for (OocKind kind : {OocKind::kWord, OocKind::kChain}) {
        const OocKindReport& k = r.of(kind);
        const auto& names = label_names(kind);
        out << "| " << to_string(kind) << " | n |";
        for (auto n : names) out << ' ' << n << " |";
        out << "\n|---|---:|";
        for (std::size_t i = 0; i < kOocLabelCount; ++i) out << "---:|";
        out << '\n';
        const std::pair<std::string_view, const LabelCounts*> rows[] = {
            {"All", &k.overall},
            {"F", &k.by_gender.at(GenderLabel::kF)},
            {"M", &k.by_gender.at(GenderLabel::kM)}};
        for (auto [slice, c] : rows) {
          const auto shares = rounded_shares(*c);
          out << "| " << slice << " | " << c->total() << " |";
          for (std::size_t i = 0; i < kOocLabelCount; ++i)
            out << ' ' << detail::Fixed1(shares[i], detail::kDash) << " |";
          out << '\n';
        }
        out << '\n';
      }
      out << "| Alt-N by POS | n |\n|---|---:|\n";
      for (auto& [p, n] : r.word.alt_n_by_pos)
        out << "| " << to_string(p) << " | " << n << " |\n";
      out << detail::MarkdownManifest(manifest);
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Inter-annotator agreement.

struct IaaReport {
  std::size_t sentences = 0;
  std::size_t items = 0;
  std::optional<double> scott_pi;  // nullopt: degenerate distribution
  double observed = 0.0;
  std::optional<double> expected;
  std::size_t chains_a = 0;
  std::size_t chains_b = 0;
  std::size_t chains_common = 0;
  std::optional<double> dice;  // nullopt: both chain sets empty
};

inline IaaReport compute_iaa(const Corpus& a, const Corpus& b) {
  AnnotationPair pair = pair_annotations(a, b);
  IaaReport r;
  r.sentences = a.size();
  r.items = pair.pos_a.size();
  if (r.items > 0) {
    try {
      PiResult pi = scott_pi_detail(std::span<const PosTag>(pair.pos_a),
                                    std::span<const PosTag>(pair.pos_b));
      r.scott_pi = pi.pi;
      r.observed = pi.observed;
      r.expected = pi.expected;
    } catch (const DegenerateDistribution&) {
      r.observed = 1.0;
      r.expected = 1.0;
    }
  }
  r.chains_a = pair.chains_a.size();
  r.chains_b = pair.chains_b.size();
  for (const auto& c : pair.chains_a) r.chains_common += pair.chains_b.count(c);
  if (r.chains_a + r.chains_b > 0) r.dice = dice_chains(pair.chains_a, pair.chains_b);
  return r;
}

inline Json to_json(const IaaReport& r) {
  auto nullable = [](std::optional<double> v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"sentences", r.sentences},
              {"pos_items", r.items},
              {"scott_pi", nullable(r.scott_pi)},
              {"observed_agreement", r.observed},
              {"expected_agreement", nullable(r.expected)},
              {"chains_a", r.chains_a},
              {"chains_b", r.chains_b},
              {"chains_exact_match", r.chains_common},
              {"dice", nullable(r.dice)}};
}

inline std::string render(const IaaReport& r, ReportFormat format,
                          const RunManifest& manifest) {
  auto fixed4 = [](std::optional<double> v, std::string_view undefined) {
    if (!v) return std::string(undefined);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return std::string(buf);
  };
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      Json j = to_json(r);
      j["manifest"] = to_json(manifest);
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << detail::CsvManifest(manifest) << "measure,value\n";
      out << "scott_pi," << fixed4(r.scott_pi, "") << '\n';
      out << "dice," << fixed4(r.dice, "") << '\n';
      out << "pos_items," << r.items << '\n';
      out << "chains_exact_match," << r.chains_common << '\n';
      break;
    case ReportFormat::kMarkdown:
      out << "| Layer | Measure | Value | Items |\n|---|---|---:|---:|\n";
      out << "| POS | Scott's pi | " << fixed4(r.scott_pi, detail::kDash) << " | "
          << r.items << " |\n";
      out << "| Chains | Dice | " << fixed4(r.dice, detail::kDash) << " | "
          << r.chains_a << " / " << r.chains_b << " |\n";
      out << detail::MarkdownManifest(manifest);
      break;
  }
  return out.str();
}

}  // namespace mge
