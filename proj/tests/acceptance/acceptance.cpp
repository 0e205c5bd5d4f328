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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mge/cli.hpp"
#include "mge/mge.hpp"
#include "support/fixtures.hpp"
#include "support/instances.hpp"
#include "support/match_oracle.hpp"

namespace {

using namespace mge;
using Clock = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    else if (!ok) failures.back() = "... " + what;
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

SynthSpec RandomSpec(std::mt19937_64& rng, std::uint64_t seed) {
  SynthSpec s;
  s.seed = seed;
  s.n_sentences = 20 + rng() % 80;
  std::size_t terms = 0;
  for (PosTag p : kAllPosTags) {
    std::size_t n = rng() % (s.n_sentences / 2 + 1);
    if (n) s.pos_distribution[p] = n;
    terms += n;
  }
  s.chain_count = rng() % (s.n_sentences / 3 + 1);
  // Room for the largest chains plus one unchained term per sentence.
  const std::size_t needed = s.n_sentences + 4 * s.chain_count;
  if (terms < needed) s.pos_distribution[PosTag::kNoun] += needed - terms + rng() % 20;
  s.female_ratio = static_cast<double>(rng() % 11) / 10.0;
  return s;
}

HypothesisProfile RandomProfile(std::mt19937_64& rng) {
  double a = static_cast<double>(rng() % 100), b = static_cast<double>(rng() % 100),
         c = static_cast<double>(rng() % 100) + 1;
  double t = a + b + c;
  return {a / t, b / t, 1.0 - a / t - b / t};
}

bool AllWordSlices(const WordEvalReport& r, std::optional<double> cov,
                   std::optional<double> acc, std::string* bad) {
  bool ok = true;
  auto check = [&](const std::string& name, const CountCell& c) {
    if (c.total() == 0) return;
    if (c.coverage_pct() != cov || c.accuracy_pct() != acc) {
      ok = false;
      *bad = name;
    }
  };
  check("overall", r.overall);
  for (auto& [k, c] : r.by_gender) check("gender", c);
  for (auto& [k, c] : r.by_pos) check("pos", c);
  for (auto& [k, c] : r.by_class) check("class", c);
  for (auto& [k, c] : r.by_gender_pos) check("gender_pos", c);
  for (auto& [k, c] : r.by_gender_class) check("gender_class", c);
  return ok;
}

// 1
Check Identity() {
  Check ck;
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Corpus c = gen_corpus(RandomSpec(rng, seed));
    EvalReports r = evaluate(c, references_as_hypotheses(c));
    std::string bad;
    ck.expect(AllWordSlices(r.words, 100.0, 100.0, &bad), "seed " + std::to_string(seed) + " slice " + bad);
    if (r.chains.all.total)
      ck.expect(r.chains.all.coverage_pct() == 100.0 && r.chains.all.c_pct() == 100.0 &&
                    r.chains.all.w_pct() == 0.0 && r.chains.all.no_pct() == 0.0,
                "seed " + std::to_string(seed) + " chains");
  }
  Corpus big = gen_corpus(preset_spec("en-it"));
  HypothesisSet refs = references_as_hypotheses(big);
  auto t0 = Clock::now();
  EvalReports r = evaluate(big, refs);
  double secs = Seconds(t0);
  std::string bad;
  ck.expect(AllWordSlices(r.words, 100.0, 100.0, &bad), "1000-sentence slice " + bad);
  ck.expect(r.chains.all.c_pct() == 100.0 && r.chains.all.coverage_pct() == 100.0 &&
                r.chains.all.w_pct() == 0.0 && r.chains.all.no_pct() == 0.0,
            "1000-sentence chains");
  ck.expect(secs < 1.0, "1000 sentences took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "31 corpora; 1000 sentences evaluated in %.3f s", secs);
  ck.detail = buf;
  return ck;
}

// 2
Check Inversion() {
  Check ck;
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Corpus c = seed == 30 ? gen_corpus(preset_spec("en-fr")) : gen_corpus(RandomSpec(rng, seed));
    EvalReports r = evaluate(c, inverted_references(c));
    std::string bad;
    ck.expect(AllWordSlices(r.words, 100.0, 0.0, &bad), "seed " + std::to_string(seed) + " slice " + bad);
    if (r.chains.all.total)
      ck.expect(r.chains.all.coverage_pct() == 100.0 && r.chains.all.w_pct() == 100.0,
                "seed " + std::to_string(seed) + " chains");
  }
  ck.detail = "30 corpora";
  return ck;
}

// 3
Check Oracle() {
  Check ck;
  std::mt19937_64 rng(3);
  constexpr int kInstances = 20000;
  auto t0 = Clock::now();
  for (int i = 0; i < kInstances; ++i) {
    testing::Instance inst = testing::random_instance(rng);
    SentenceEntry e = testing::entry("t", "", GenderLabel::kF, inst.terms);
    SentenceMatch m = match_sentence(e, inst.hypothesis);
    std::size_t covered = 0;
    for (auto o : m.outcomes) covered += o != MatchOutcome::kNotFound;
    ck.expect(covered == testing::brute_force_match(e, inst.hypothesis).coverage,
              "diverged on '" + inst.hypothesis + "' / " + format_terms(inst.terms));
  }
  double secs = Seconds(t0);
  ck.expect(secs < 60.0, "took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d instances in %.2f s", kInstances, secs);
  ck.detail = buf;
  return ck;
}

// 4
Check Partitions() {
  Check ck;
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Corpus c = gen_corpus(RandomSpec(rng, seed));
    EvalReports r = evaluate(c, gen_hypotheses(c, RandomProfile(rng), seed), 1 + seed % 4);
    const std::string s = "seed " + std::to_string(seed) + ": ";
    CountCell g, p, k, gp, gk;
    for (auto& [x, cell] : r.words.by_gender) g += cell;
    for (auto& [x, cell] : r.words.by_pos) p += cell;
    for (auto& [x, cell] : r.words.by_class) k += cell;
    for (auto& [x, cell] : r.words.by_gender_pos) gp += cell;
    for (auto& [x, cell] : r.words.by_gender_class) gk += cell;
    ck.expect(g == r.words.overall, s + "gender");
    ck.expect(p == r.words.overall, s + "pos");
    ck.expect(k == r.words.overall, s + "class");
    ck.expect(gp == r.words.overall && gk == r.words.overall, s + "crossed slices");
    ChainCell fm = r.chains.by_gender.at(GenderLabel::kF);
    fm += r.chains.by_gender.at(GenderLabel::kM);
    ck.expect(fm == r.chains.all, s + "F+M chains");
    for (const ChainCell* cell : {&r.chains.all, &r.chains.by_gender.at(GenderLabel::kF),
                                  &r.chains.by_gender.at(GenderLabel::kM)})
      ck.expect(cell->c_count + cell->w_count + cell->no_count == cell->covered, s + "C+W+NO");
  }
  ck.detail = "100 corpus/hypothesis pairs";
  return ck;
}

// 5
Check Calibration() {
  Check ck;
  SynthSpec spec = preset_spec("en-it");
  spec.n_sentences = 6000;
  for (auto& [pos, n] : spec.pos_distribution) n *= 6;
  spec.chain_count *= 6;
  spec.seed = 5;
  Corpus c = gen_corpus(spec);
  std::size_t terms = stats(c).terms;
  ck.expect(terms >= 10000, "only " + std::to_string(terms) + " terms");
  WordEvalReport r = evaluate_words(c, gen_hypotheses(c, {0.5, 0.3, 0.2}, 55));
  double cov = *r.overall.coverage_pct(), acc = *r.overall.accuracy_pct();
  ck.expect(std::abs(cov - 80.0) <= 2.0, "coverage " + std::to_string(cov));
  ck.expect(std::abs(acc - 62.5) <= 2.0, "accuracy " + std::to_string(acc));
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu terms: coverage %.1f, accuracy %.1f", terms, cov, acc);
  ck.detail = buf;
  return ck;
}

// 6
Check Iaa() {
  Check ck;
  using P = PosTag;
  double pi1 = scott_pi(std::vector<P>{P::kNoun, P::kVerb, P::kNoun, P::kArt},
                        std::vector<P>{P::kNoun, P::kVerb, P::kVerb, P::kArt});
  ck.expect(std::abs(pi1 - 0.6190476190476191) < 1e-9, "pi fixture " + std::to_string(pi1));
  double pi2 = scott_pi(std::vector<P>{P::kNoun, P::kVerb}, std::vector<P>{P::kVerb, P::kNoun});
  ck.expect(std::abs(pi2 + 1.0) < 1e-9, "pi -1 fixture " + std::to_string(pi2));

  Corpus c = gen_corpus(preset_spec("en-es"));
  IaaReport same = compute_iaa(c, c);
  ck.expect(same.scott_pi && *same.scott_pi == 1.0, "identical annotations pi");
  ck.expect(same.dice && *same.dice == 1.0, "identical annotations dice");

  std::set<int> a{1, 2, 3}, b{2, 3, 4};
  ck.expect(std::abs(dice(a, b) - 2.0 / 3.0) < 1e-9, "dice 2/3");
  ck.detail = "pi 0.619047..., -1, 1; dice 2/3, 1";
  return ck;
}

// 7
Check Jobs() {
  Check ck;
  testing::TempDir dir;
  SynthSpec spec = preset_spec("en-it");
  spec.n_sentences = 10000;
  for (auto& [pos, n] : spec.pos_distribution) n *= 10;
  spec.chain_count *= 10;
  spec.seed = 7;
  Corpus c = gen_corpus(spec);
  std::string corpus = dir.write("c.tsv", write_corpus(c));
  HypothesisSet h = gen_hypotheses(c, {0.6, 0.25, 0.15}, 7);
  std::string text;
  for (const auto& line : h.lines) text += line + '\n';
  std::string hyp = dir.write("h.txt", text);

  for (const char* cmd : {"eval-words", "eval-chains"}) {
    for (const char* fmt : {"json", "csv", "markdown"}) {
      std::string outputs[2];
      int i = 0;
      for (const char* jobs : {"1", "8"}) {
        std::ostringstream out, err;
        int code = run_cli({"mge", cmd, "--corpus", corpus, "--hyp", hyp, "--jobs", jobs,
                            "--format", fmt, "--no-timestamp"},
                           out, err);
        ck.expect(code == 0, std::string(cmd) + " exit " + std::to_string(code) + ": " + err.str());
        outputs[i++] = out.str();
      }
      ck.expect(!outputs[0].empty() && outputs[0] == outputs[1],
                std::string(cmd) + " --format " + fmt + " differs between --jobs 1 and 8");
    }
  }
  ck.detail = "10000 sentences, eval-words and eval-chains, json/csv/markdown";
  return ck;
}

// 8
Check RoundTrip() {
  Check ck;
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Corpus c = gen_corpus(RandomSpec(rng, seed));
    std::string text = write_corpus(c);
    std::istringstream in(text);
    Corpus back = parse_corpus(in);
    ck.expect(back == c && write_corpus(back) == text, "seed " + std::to_string(seed));
  }

  testing::TempDir dir;
  std::string path = dir.write("it.tsv", write_corpus(gen_corpus(preset_spec("en-it"))));
  std::ostringstream out, err;
  int code = run_cli({"mge", "stats", "--corpus", path, "--no-timestamp"}, out, err);
  ck.expect(code == 0, "stats exit " + std::to_string(code) + ": " + err.str());
  if (code == 0) {
    Json j = Json::parse(out.str());
    const std::pair<const char*, int> expected[] = {{"ART", 413}, {"PRON", 48}, {"ADJ-DET", 149},
                                                    {"ADJ-DES", 448}, {"NOUN", 346}, {"VERB", 622}};
    for (auto [tag, n] : expected)
      ck.expect(j["pos"][tag] == n, std::string(tag) + " = " + j["pos"][tag].dump());
    ck.expect(j["agr_chains"] == 421, "chains = " + j["agr_chains"].dump());
  }
  ck.detail = "100 corpora; en-it counts 413/48/149/448/346/622, 421 chains";
  return ck;
}

// 9
Check OocCompleteness() {
  Check ck;
  std::mt19937_64 rng(9);
  std::mt19937 label_rng(9);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Corpus c = gen_corpus(RandomSpec(rng, seed));
    HypothesisSet h = gen_hypotheses(c, RandomProfile(rng), seed);
    EvalReports r = evaluate(c, h);
    auto words = extract_ooc(c, h, OocKind::kWord);
    auto chains = extract_ooc(c, h, OocKind::kChain);
    const std::string s = "seed " + std::to_string(seed) + ": ";
    ck.expect(words.size() == r.words.overall.not_found, s + "word export size");
    ck.expect(chains.size() == r.chains.all.total - r.chains.all.covered, s + "chain export size");

    std::vector<OocRecord> exported = words;
    exported.insert(exported.end(), chains.begin(), chains.end());
    if (exported.empty()) continue;
    for (auto& rec : exported) rec.label = std::string(label_names(rec.kind)[label_rng() % kOocLabelCount]);
    OocReport agg = aggregate_ooc(ingest_labels(exported, exported));
    for (OocKind kind : {OocKind::kWord, OocKind::kChain}) {
      const OocKindReport& k = agg.of(kind);
      for (const LabelCounts* cell : {&k.overall, &k.by_gender.at(GenderLabel::kF),
                                      &k.by_gender.at(GenderLabel::kM)}) {
        if (cell->total() == 0) continue;
        double sum = 0;
        for (auto share : rounded_shares(*cell)) sum += *share;
        worst = std::max(worst, std::abs(sum - 100.0));
        ck.expect(std::abs(sum - 100.0) <= 0.1, s + "shares sum to " + std::to_string(sum));
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "50 fixtures; max |sum - 100| = %.3g", worst);
  ck.detail = buf;
  return ck;
}

// 10
Check Examples() {
  Check ck;
  using testing::entry;
  using testing::term;
  SentenceEntry it = entry("it", "La ragazza è andata via", GenderLabel::kF,
                           {term("la", "il", PosTag::kArt), term("andata", "andato", PosTag::kVerb)});
  auto m = match_sentence(it, "La ragazza è andata via").outcomes;
  ck.expect(m == std::vector<MatchOutcome>{MatchOutcome::kCorrectForm, MatchOutcome::kCorrectForm},
            "Italian example");

  SentenceEntry fr = entry("fr", "parler à cet inventeur", GenderLabel::kM,
                           {term("cet", "cette", PosTag::kAdjDet, 1),
                            term("inventeur", "inventrice", PosTag::kNoun, 1)});
  ck.expect(classify_chain(chains_of(fr)[0], match_sentence(fr, "parler à cette inventeur").outcomes) ==
                ChainOutcome::kNo,
            "French chain");

  SentenceEntry es = entry("es", "Fui la primera senadora somalí", GenderLabel::kF,
                           {term("la", "el", PosTag::kArt, 1), term("primera", "primer", PosTag::kAdjDet, 1),
                            term("senadora", "senador", PosTag::kNoun, 1)});
  ck.expect(classify_chain(chains_of(es)[0],
                           match_sentence(es, "Fui la primera senadora somalí estudiantil").outcomes) ==
                ChainOutcome::kC,
            "Spanish chain");
  ck.detail = "2x CorrectForm, NO, C";
  return ck;
}

}  // namespace

int main() {
  setenv("MGE_COLOR", "0", 1);
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"identity", Identity},
      {"inversion", Inversion},
      {"oracle equivalence", Oracle},
      {"partition identities", Partitions},
      {"statistical calibration", Calibration},
      {"agreement fixtures", Iaa},
      {"parallel determinism", Jobs},
      {"round trip and preset counts", RoundTrip},
      {"OOC completeness", OocCompleteness},
      {"worked examples", Examples},
  };
  int failed = 0, n = 0;
  for (auto& [name, fn] : criteria) {
    ++n;
    Check ck;
    try {
      ck = fn();
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = ck.failures.empty();
    failed += !ok;
    std::printf("[%s] %2d %-30s %s\n", ok ? "PASS" : "FAIL", n, name, ck.detail.c_str());
    for (const auto& f : ck.failures) std::printf("         - %s\n", f.c_str());
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
