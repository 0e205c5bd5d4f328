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

// The `mge` command line. run_cli() is the whole program; tools/mge.cpp only
// forwards argv to it, which keeps every subcommand testable in-process.
//
// Exit codes: 0 success, 1 data or metric error, 2 usage error.

#pragma once

#include <openssl/evp.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mge/chain_metrics.hpp"
#include "mge/corpus.hpp"
#include "mge/error.hpp"
#include "mge/iaa.hpp"
#include "mge/ooc.hpp"
#include "mge/report.hpp"
#include "mge/synthgen.hpp"
#include "mge/word_metrics.hpp"

namespace mge {

namespace cli_detail {

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline std::string Sha256Hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

inline std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline bool UseColor(const std::ostream& err) {
  if (const char* env = std::getenv("MGE_COLOR")) return std::string_view(env) == "1";
  return &err == &std::cerr && isatty(STDERR_FILENO);
}

inline void WriteOutput(const std::string& out_path, const std::string& data,
                        std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << data;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write '" + out_path + "'");
  f << data;
  if (!f) throw Error("failed writing '" + out_path + "'");
}

// Options shared by the reporting subcommands.
struct Common {
  std::string corpus;
  std::string hyp;
  std::string format = "json";
  std::string out;
  std::string filter_category;
  std::string filter_gender;
  unsigned jobs = 1;
  bool no_timestamp = false;
};

inline void AddOutputOptions(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "json, csv or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
  cmd->add_option("--out", c.out, "Output file (default: standard output)");
  cmd->add_flag("--no-timestamp", c.no_timestamp,
                "Omit the timestamp from the run manifest");
}

inline void AddFilterOptions(CLI::App* cmd, Common& c) {
  cmd->add_option("--filter-category", c.filter_category,
                  "Keep only sentences with this CATEGORY");
  cmd->add_option("--filter-gender", c.filter_gender, "Keep only F or M sentences")
      ->check(CLI::IsMember({"F", "M"}));
}

inline RunManifest MakeManifest(const std::string& command, const Common& c,
                                const std::vector<std::pair<std::string, std::string>>& inputs) {
  RunManifest m;
  m.command = command;
  for (const auto& [role, path] : inputs)
    m.inputs.push_back({role, path, Sha256Hex(ReadFile(path))});
  m.options.emplace_back("format", c.format == "md" ? "markdown" : c.format);
  if (!c.filter_category.empty()) m.options.emplace_back("filter_category", c.filter_category);
  if (!c.filter_gender.empty()) m.options.emplace_back("filter_gender", c.filter_gender);
  if (!c.no_timestamp) m.timestamp = UtcTimestamp();
  return m;
}

inline ReportFormat FormatOf(const Common& c) { return *parse_format(c.format); }

inline std::pair<Corpus, HypothesisSet> LoadFiltered(const Common& c) {
  Corpus corpus = parse_corpus_file(c.corpus);
  HypothesisSet hyps = load_hypotheses_file(c.hyp, corpus);
  if (c.filter_category.empty() && c.filter_gender.empty()) return {corpus, hyps};
  const auto gender = parse_gender(c.filter_gender);
  return filter_aligned(corpus, hyps, [&](const SentenceEntry& e) {
    if (!c.filter_category.empty() && e.category != c.filter_category) return false;
    if (gender && e.gender != *gender) return false;
    return true;
  });
}

inline std::map<PosTag, std::size_t> ParsePosCounts(const std::string& s) {
  std::map<PosTag, std::size_t> out;
  for (auto part : detail::Split(s, ',')) {
    auto kv = detail::Split(part, '=');
    if (kv.size() != 2) throw std::invalid_argument("--pos expects TAG=COUNT pairs");
    auto pos = parse_pos(detail::TrimSpaces(kv[0]));
    if (!pos) throw std::invalid_argument("--pos: unknown tag '" + std::string(kv[0]) + "'");
    out[*pos] = std::stoull(std::string(kv[1]));
  }
  return out;
}

inline std::map<std::size_t, double> ParseChainSizes(const std::string& s) {
  std::map<std::size_t, double> out;
  for (auto part : detail::Split(s, ',')) {
    auto kv = detail::Split(part, ':');
    if (kv.size() != 2) throw std::invalid_argument("--chain-sizes expects SIZE:WEIGHT pairs");
    out[std::stoull(std::string(kv[0]))] = std::stod(std::string(kv[1]));
  }
  return out;
}

inline HypothesisProfile ParseProfile(const std::string& s) {
  auto parts = detail::Split(s, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("--profile expects p_correct,p_wrong,p_drop");
  HypothesisProfile p{std::stod(std::string(parts[0])), std::stod(std::string(parts[1])),
                      std::stod(std::string(parts[2]))};
  p.validate();
  return p;
}

inline void WriteHypotheses(const std::string& path, const HypothesisSet& hyps) {
  std::string data;
  for (const auto& line : hyps.lines) {
    data += line;
    data += '\n';
  }
  std::ostringstream unused;
  WriteOutput(path, data, unused);
}

}  // namespace cli_detail

/// Runs the `mge` command line with `args` (args[0] is the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"mge: multi-granularity evaluation of gender translation", "mge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common c;

  // validate
  bool skip_ref_check = false;
  auto* validate = app.add_subcommand("validate", "Check a corpus TSV");
  validate->add_option("--corpus", c.corpus, "Corpus TSV")->required();
  validate->add_flag("--no-ref-check", skip_ref_check,
                     "Do not require annotated forms to occur in the reference");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "POS and chain counts of a corpus");
  stats_cmd->add_option("--corpus", c.corpus, "Corpus TSV")->required();
  AddOutputOptions(stats_cmd, c);
  AddFilterOptions(stats_cmd, c);

  // eval-words / eval-chains
  auto* eval_words = app.add_subcommand("eval-words", "Word-level coverage and accuracy");
  auto* eval_chains = app.add_subcommand("eval-chains", "Chain-level agreement (C/W/NO)");
  for (auto* cmd : {eval_words, eval_chains}) {
    cmd->add_option("--corpus", c.corpus, "Corpus TSV")->required();
    cmd->add_option("--hyp", c.hyp, "System output, one sentence per line")->required();
    cmd->add_option("--jobs", c.jobs, "Evaluation threads")->check(CLI::PositiveNumber);
    AddOutputOptions(cmd, c);
    AddFilterOptions(cmd, c);
  }

  // extract-ooc
  std::string kind = "word";
  std::string annotator;
  auto* extract = app.add_subcommand("extract-ooc",
                                     "Export out-of-coverage words or chains for labeling");
  extract->add_option("--corpus", c.corpus, "Corpus TSV")->required();
  extract->add_option("--hyp", c.hyp, "System output")->required();
  extract->add_option("--kind", kind, "word, chain or all")
      ->check(CLI::IsMember({"word", "chain", "all"}));
  extract->add_option("--annotator", annotator, "Prefill the ANNOTATOR column");
  extract->add_option("--out", c.out, "Output TSV (default: standard output)");
  AddFilterOptions(extract, c);

  // aggregate-ooc
  std::vector<std::string> label_files;
  auto* aggregate = app.add_subcommand("aggregate-ooc", "Proportions of human OOC labels");
  aggregate->add_option("--corpus", c.corpus, "Corpus TSV")->required();
  aggregate->add_option("--hyp", c.hyp, "System output the export was made from")->required();
  aggregate->add_option("--labels", label_files, "Labeled OOC TSV file(s)")->required();
  AddOutputOptions(aggregate, c);
  AddFilterOptions(aggregate, c);

  // iaa
  std::string file_a, file_b;
  auto* iaa_cmd = app.add_subcommand("iaa", "Scott's pi on POS and Dice on chains");
  iaa_cmd->add_option("--a", file_a, "First annotator's corpus TSV")->required();
  iaa_cmd->add_option("--b", file_b, "Second annotator's corpus TSV")->required();
  iaa_cmd->add_flag("--no-ref-check", skip_ref_check,
                    "Do not require annotated forms to occur in the reference");
  AddOutputOptions(iaa_cmd, c);

  // gen
  std::string preset, pos_counts, chain_sizes, profile_str = "1,0,0";
  std::string corpus_out, hyp_out;
  SynthSpec spec;
  std::optional<std::uint64_t> hyp_seed;
  std::size_t sentences = 0;
  std::size_t chains = 0;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic corpus and system output");
  gen->add_option("--preset", preset, "Term/chain counts of a language pair")
      ->check(CLI::IsMember({"en-es", "en-fr", "en-it"}));
  gen->add_option("--pos", pos_counts, "Counts per POS, e.g. ART=413,NOUN=346");
  gen->add_option("--chains", chains, "Number of agreement chains");
  gen->add_option("--chain-sizes", chain_sizes, "Chain size weights, e.g. 2:0.6,3:0.4");
  gen->add_option("--sentences", sentences, "Number of sentences");
  gen->add_option("--max-terms", spec.max_terms_per_sentence, "Max annotated words per sentence");
  gen->add_option("--female-ratio", spec.female_ratio, "Share of F sentences")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", spec.seed, "Generator seed");
  gen->add_option("--language-pair", spec.language_pair, "language_pair metadata");
  gen->add_option("--profile", profile_str, "p_correct,p_wrong,p_drop for --hyp-out");
  gen->add_option("--hyp-seed", hyp_seed, "Seed for the system output (default: --seed)");
  gen->add_option("--corpus-out", corpus_out, "Corpus TSV to write")->required();
  gen->add_option("--hyp-out", hyp_out, "System output to write");

  // diff
  std::string report_a, report_b;
  auto* diff = app.add_subcommand("diff", "Per-slice differences of two eval-words reports");
  diff->add_option("--a", report_a, "eval-words JSON report")->required();
  diff->add_option("--b", report_b, "eval-words JSON report (subtracted)")->required();
  AddOutputOptions(diff, c);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool color = UseColor(err);
  try {
    if (validate->parsed()) {
      ParseOptions opts;
      opts.check_forms_in_reference = !skip_ref_check;
      Corpus corpus = parse_corpus_file(c.corpus, opts);
      CorpusStats s = stats(corpus);
      out << c.corpus << ": OK (" << s.sentences << " sentences, " << s.terms
          << " annotated words, " << s.chains << " chains)\n";
      return 0;
    }
    if (stats_cmd->parsed()) {
      Corpus corpus = parse_corpus_file(c.corpus);
      if (!c.filter_category.empty() || !c.filter_gender.empty()) {
        auto gender = parse_gender(c.filter_gender);
        std::erase_if(corpus.entries, [&](const SentenceEntry& e) {
          return (!c.filter_category.empty() && e.category != c.filter_category) ||
                 (gender && e.gender != *gender);
        });
      }
      RunManifest m = MakeManifest("stats", c, {{"corpus", c.corpus}});
      WriteOutput(c.out, render(stats(corpus), FormatOf(c), m), out);
      return 0;
    }
    if (eval_words->parsed() || eval_chains->parsed()) {
      auto [corpus, hyps] = LoadFiltered(c);
      const bool words = eval_words->parsed();
      RunManifest m = MakeManifest(words ? "eval-words" : "eval-chains", c,
                                   {{"corpus", c.corpus}, {"hyp", c.hyp}});
      std::string text = words
                             ? render(evaluate_words(corpus, hyps, c.jobs), FormatOf(c), m)
                             : render(evaluate_chains(corpus, hyps, c.jobs), FormatOf(c), m);
      WriteOutput(c.out, text, out);
      return 0;
    }
    if (extract->parsed()) {
      auto [corpus, hyps] = LoadFiltered(c);
      std::vector<OocRecord> records;
      if (kind != "chain") records = extract_ooc(corpus, hyps, OocKind::kWord, annotator);
      if (kind != "word") {
        auto ch = extract_ooc(corpus, hyps, OocKind::kChain, annotator);
        records.insert(records.end(), ch.begin(), ch.end());
      }
      std::ostringstream tsv;
      write_ooc_tsv(records, tsv);
      WriteOutput(c.out, tsv.str(), out);
      return 0;
    }
    if (aggregate->parsed()) {
      auto [corpus, hyps] = LoadFiltered(c);
      std::vector<OocRecord> exported = extract_ooc(corpus, hyps, OocKind::kWord);
      auto ch = extract_ooc(corpus, hyps, OocKind::kChain);
      exported.insert(exported.end(), ch.begin(), ch.end());
      std::vector<OocRecord> labeled;
      std::vector<std::pair<std::string, std::string>> inputs{{"corpus", c.corpus},
                                                              {"hyp", c.hyp}};
      for (const auto& path : label_files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open '" + path + "'");
        try {
          auto records = read_ooc_tsv(in);
          labeled.insert(labeled.end(), records.begin(), records.end());
        } catch (const Error& e) {
          throw Error(path + ": " + e.what());
        }
        inputs.emplace_back("labels", path);
      }
      OocReport report = aggregate_ooc(ingest_labels(labeled, exported));
      RunManifest m = MakeManifest("aggregate-ooc", c, inputs);
      WriteOutput(c.out, render(report, FormatOf(c), m), out);
      return 0;
    }
    if (iaa_cmd->parsed()) {
      ParseOptions opts;
      opts.check_forms_in_reference = !skip_ref_check;
      Corpus a = parse_corpus_file(file_a, opts);
      Corpus b = parse_corpus_file(file_b, opts);
      RunManifest m = MakeManifest("iaa", c, {{"a", file_a}, {"b", file_b}});
      WriteOutput(c.out, render(compute_iaa(a, b), FormatOf(c), m), out);
      return 0;
    }
    if (gen->parsed()) {
      if (!preset.empty()) {
        SynthSpec p = preset_spec(preset);
        spec.pos_distribution = p.pos_distribution;
        spec.chain_count = p.chain_count;
        spec.n_sentences = p.n_sentences;
        if (gen->count("--language-pair") == 0) spec.language_pair = p.language_pair;
      }
      if (!pos_counts.empty()) spec.pos_distribution = ParsePosCounts(pos_counts);
      if (gen->count("--chains")) spec.chain_count = chains;
      if (gen->count("--sentences")) spec.n_sentences = sentences;
      if (!chain_sizes.empty()) spec.chain_size_weights = ParseChainSizes(chain_sizes);
      if (spec.pos_distribution.empty())
        throw std::invalid_argument("gen needs --preset or --pos");
      spec.profile = ParseProfile(profile_str);
      Corpus corpus = gen_corpus(spec);
      WriteOutput(corpus_out, write_corpus(corpus), out);
      if (!hyp_out.empty())
        WriteHypotheses(hyp_out, gen_hypotheses(corpus, spec.profile, hyp_seed.value_or(spec.seed)));
      return 0;
    }
    if (diff->parsed()) {
      auto load = [](const std::string& path) {
        try {
          return word_report_from_json(Json::parse(ReadFile(path)));
        } catch (const Json::exception& e) {
          throw Error(path + ": invalid JSON: " + e.what());
        }
      };
      ReportDelta d = diff_reports(load(report_a), load(report_b));
      RunManifest m = MakeManifest("diff", c, {{"a", report_a}, {"b", report_b}});
      WriteOutput(c.out, render(d, FormatOf(c), m), out);
      return 0;
    }
  } catch (const std::exception& e) {
    err << (color ? "\x1b[31merror:\x1b[0m " : "error: ") << e.what() << '\n';
    return 1;
  }
  return 2;
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mge
