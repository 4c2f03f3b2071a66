// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Kept separate from the unit suite so the release check is a single
// binary with readable output.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cru/augmentor.hpp"
#include "cru/corpus_io.hpp"
#include "cru/evaluator.hpp"
#include "cru/extractor.hpp"
#include "cru/matcher.hpp"
#include "cru/phonetic.hpp"
#include "cru/registry.hpp"
#include "cru/rng.hpp"
#include "cru/variants.hpp"
#include "test_support.hpp"

using namespace cru;
using json = nlohmann::json;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << number << " (" << name << ") — "
            << detail << "\n";
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AirlineRegistry registry() {
  return AirlineRegistry::from_tsv(std::string(CRU_DATA_DIR) + "/airlines.tsv");
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(CRU_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

// Recognize every sample in the requested mode and score against the targets.
double mode_csa(const std::vector<TranscriptSample>& corpus, RecognizerMode mode,
                const AirlineRegistry& reg, const MatchConfig& match) {
  std::vector<std::optional<IcaoCallsign>> predictions;
  std::vector<IcaoCallsign> targets;
  for (const auto& s : corpus) {
    targets.push_back(s.target);
    if (mode == RecognizerMode::Van) {
      predictions.push_back(vanilla_recognize(s.transcript, reg));
    } else {
      predictions.push_back(
          recognize_with_context(s.transcript, s.surveillance, reg, match).first);
    }
  }
  return csa(predictions, targets);
}

// Corpus of recoverable spoken variants (no identifier-only samples), with
// optional calibrated noise.
std::vector<TranscriptSample> build_corpus(const AirlineRegistry& reg, std::size_t n,
                                           std::uint64_t seed, double target_wer,
                                           bool bare_numbers = true) {
  auto profile = uniform_profile(reg);
  auto donors = make_donor_corpus(n, seed, reg, profile);
  AugmentConfig cfg;
  cfg.airspace_profile = profile;
  cfg.seed = seed;
  if (bare_numbers) {
    cfg.variant_distribution = {{VariantKind::Full, 0.7},
                                {VariantKind::NoIdentifier, 0.1},
                                {VariantKind::GroupedNumber, 0.1},
                                {VariantKind::SpelledDesignator, 0.1}};
  } else {
    // identifier-bearing variants only; a bare-number utterance carries no
    // signal to tell same-number candidates apart, which is not what the
    // duplicate-robustness criteria measure
    cfg.variant_distribution = {{VariantKind::Full, 0.8},
                                {VariantKind::GroupedNumber, 0.1},
                                {VariantKind::SpelledDesignator, 0.1}};
  }
  if (target_wer > 0.0) {
    cfg.noise = NoiseModel::builtin(reg);
    cfg.noise->target_wer = target_wer;
  }
  return augment_corpus(donors, cfg, reg, 4).samples;
}

void criterion_1(const AirlineRegistry& reg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<VariantKind> kinds = {VariantKind::Full, VariantKind::GroupedNumber,
                                    VariantKind::SpelledDesignator};
  auto designators = reg.designators();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, designators.size() - 1);
  std::size_t generated = 0, recovered = 0, forms = 0;
  while (generated < 5000) {
    IcaoCallsign cs{designators[pick(rng)], cru::testing::random_number(rng)};
    ++generated;
    bool all_ok = true;
    for (const auto& variant : expand_to_spoken(cs, reg, kinds)) {
      ++forms;
      auto back = spoken_to_icao(variant.tokens, reg);
      if (!back || *back != cs) all_ok = false;
    }
    if (all_ok) ++recovered;
  }
  double elapsed = seconds_since(t0);
  bool ok = reg.size() >= 50 && recovered == generated && elapsed < 10.0;
  report(1, "round-trip conversion", ok,
         std::to_string(recovered) + "/" + std::to_string(generated) + " call-signs over " +
             std::to_string(forms) + " spoken forms, registry size " +
             std::to_string(reg.size()) + ", " + fmt(elapsed) + " s");
}

void criterion_2(const AirlineRegistry& reg) {
  // Full-variant corpus with 3-4 character numbers; then delete exactly one
  // digit word from every call-sign span.
  auto profile = uniform_profile(reg);
  auto donors = make_donor_corpus(1000, 202, reg, profile);
  AugmentConfig cfg;
  cfg.airspace_profile = profile;
  cfg.seed = 202;
  cfg.variant_distribution = {{VariantKind::Full, 1.0}};
  cfg.number_length_weights = {0.0, 0.0, 0.5, 0.5};
  auto corpus = augment_corpus(donors, cfg, reg, 4).samples;

  std::size_t mutated = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto& s = corpus[i];
    std::vector<std::size_t> digit_positions;
    for (std::size_t p = s.callsign_span.start; p < s.callsign_span.end; ++p) {
      if (digit_for(s.transcript[p]).has_value()) digit_positions.push_back(p);
    }
    if (digit_positions.empty()) continue;
    auto rng = rng_for(202, {kStreamNoise, i});
    std::uniform_int_distribution<std::size_t> pick(0, digit_positions.size() - 1);
    std::size_t victim = digit_positions[pick(rng)];
    s.transcript.erase(s.transcript.begin() + static_cast<long>(victim));
    s.callsign_span.end -= 1;
    s.callsign_span.tokens.assign(
        s.transcript.begin() + static_cast<long>(s.callsign_span.start),
        s.transcript.begin() + static_cast<long>(s.callsign_span.end));
    ++mutated;
  }

  MatchConfig match;
  double sur = mode_csa(corpus, RecognizerMode::Sur, reg, match);
  double van = mode_csa(corpus, RecognizerMode::Van, reg, match);
  bool ok = mutated == corpus.size() && sur >= 95.0 && van <= 5.0;
  report(2, "single-digit deletion recovery", ok,
         "Sur CSA " + fmt(sur) + "%, Van CSA " + fmt(van) + "% on " +
             std::to_string(mutated) + " mutated samples");
}

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (double target : {7.0, 30.0}) {
    std::string out = "acc_cal_" + std::to_string(static_cast<int>(target)) + ".jsonl";
    int rc = run_cli("augment --synthetic-donors 2000 --registry " +
                     std::string(CRU_DATA_DIR) + "/airlines.tsv --seed 303 --target-wer " +
                     fmt(target) + " --out " + out);
    if (rc != 0) {
      ok = false;
      detail += "exit " + std::to_string(rc) + " at target " + fmt(target) + "; ";
      continue;
    }
    json manifest = json::parse(slurp(out + ".manifest.json"));
    double realized = manifest["realized_wer"].get<double>();
    if (std::abs(realized - target) > 1.0) ok = false;
    detail += "target " + fmt(target) + " -> realized " + fmt(realized) + "; ";
  }
  double elapsed = seconds_since(t0);
  if (elapsed >= 60.0) ok = false;
  report(3, "noise calibration", ok, detail + fmt(elapsed) + " s");
}

void criterion_4(const AirlineRegistry& reg) {
  auto clean = build_corpus(reg, 1000, 404, 0.0);
  auto noisy = build_corpus(reg, 1000, 405, 30.0);
  MatchConfig match;
  double sur_clean = mode_csa(clean, RecognizerMode::Sur, reg, match);
  double van_clean = mode_csa(clean, RecognizerMode::Van, reg, match);
  double sur_noisy = mode_csa(noisy, RecognizerMode::Sur, reg, match);
  double van_noisy = mode_csa(noisy, RecognizerMode::Van, reg, match);
  bool ok = sur_clean >= 99.0 && sur_clean >= van_clean && sur_noisy >= 1.5 * van_noisy;
  report(4, "Sur-vs-Van trend", ok,
         "WER 0: Sur " + fmt(sur_clean) + "% vs Van " + fmt(van_clean) + "%; WER 30: Sur " +
             fmt(sur_noisy) + "% vs Van " + fmt(van_noisy) + "%");
}

void criterion_5(const AirlineRegistry& reg) {
  auto corpus = build_corpus(reg, 1000, 505, 30.0, false);
  SweepConfig cfg;
  cfg.profile = uniform_profile(reg);
  cfg.seed = 505;
  cfg.jobs = 4;
  auto rep = sweep(corpus, RecognizerMode::Sur, SweepParameter::SurveillanceSize,
                   {1, 5, 10, 15, 19}, reg, cfg);
  bool steps_ok = true;
  for (std::size_t i = 1; i < rep.points.size(); ++i) {
    if (rep.points[i].csa > rep.points[i - 1].csa + 2.0) steps_ok = false;
  }
  bool ok = rep.points.back().csa < rep.points.front().csa && steps_ok;
  std::string series;
  for (const auto& pt : rep.points) series += fmt(pt.csa) + " ";
  report(5, "surveillance-size sweep", ok, "CSA series " + series + "(non-increasing: " +
                                               (rep.non_increasing ? "yes" : "no") + ")");
}

void criterion_6(const AirlineRegistry& reg) {
  auto corpus = build_corpus(reg, 1000, 606, 30.0, false);
  SweepConfig cfg;
  cfg.profile = uniform_profile(reg);
  cfg.seed = 606;
  cfg.jobs = 4;
  auto rep = sweep(corpus, RecognizerMode::Sur, SweepParameter::IdentifierDupFraction,
                   {0.0, 0.8}, reg, cfg);
  double delta = std::abs(rep.points[0].csa - rep.points[1].csa);
  bool ok = delta <= 2.0;
  report(6, "identifier-duplicate robustness", ok,
         "CSA " + fmt(rep.points[0].csa) + "% at 0 vs " + fmt(rep.points[1].csa) +
             "% at 0.8 (|delta| " + fmt(delta) + ")");
}

void criterion_7(const AirlineRegistry& reg) {
  bool ok = true;
  std::string detail;
  struct Level {
    double wer;
    double budget;
    std::uint64_t seed;
  };
  for (const Level& level : {Level{7.0, 5.0, 707}, Level{30.0, 10.0, 708}}) {
    auto corpus = build_corpus(reg, 1000, level.seed, level.wer, false);
    SweepConfig cfg;
    cfg.profile = uniform_profile(reg);
    cfg.seed = level.seed;
    cfg.jobs = 4;
    auto rep = sweep(corpus, RecognizerMode::Sur, SweepParameter::NumberDuplicates, {0.0, 1.0},
                     reg, cfg);
    double drop = rep.points[0].csa - rep.points[1].csa;
    if (drop >= level.budget) ok = false;
    detail += "WER " + fmt(level.wer) + ": drop " + fmt(drop) + " (< " + fmt(level.budget) +
              "); ";
  }
  report(7, "number-duplicate robustness", ok, detail);
}

void criterion_8() {
  std::mt19937_64 rng(808);
  const std::vector<std::string> vocab = {
      "lufthansa", "ryanair",  "speedbird", "eight", "three", "five",  "nine",
      "kilo",      "whiskey",  "oh",        "zero",  "tree",  "tower", "contact",
      "descend",   "seventy-two", "hundred", "level", "x-ray", "good"};
  std::uniform_int_distribution<std::size_t> tlen(0, 12), vlen(1, 6),
      pick(0, vocab.size() - 1);
  MatchConfig weighted;
  MatchConfig unit;
  unit.ins_cost = 1.0;
  unit.digit_weight = 1.0;
  unit.char_aware_substitution = false;
  std::size_t agree = 0;
  const std::size_t total = 10000;
  for (std::size_t i = 0; i < total; ++i) {
    SpokenForm transcript(tlen(rng)), variant(vlen(rng));
    for (auto& t : transcript) t = vocab[pick(rng)];
    for (auto& t : variant) t = vocab[pick(rng)];
    const MatchConfig& cfg = (i % 2 == 0) ? weighted : unit;
    if (similarity(transcript, variant, cfg) ==
        cru::testing::oracle_similarity(transcript, variant, cfg)) {
      ++agree;
    }
  }
  report(8, "similarity oracle equivalence", agree == total,
         std::to_string(agree) + "/" + std::to_string(total) + " exact matches");
}

void criterion_9() {
  std::string reg_path = std::string(CRU_DATA_DIR) + "/airlines.tsv";
  bool ok = true;
  std::string detail;
  for (const std::string tag : {"a", "b"}) {
    int rc = 0;
    rc |= run_cli("augment --synthetic-donors 300 --registry " + reg_path +
                  " --seed 909 --target-wer 15 --out acc_det_" + tag + ".jsonl");
    rc |= run_cli("recognize --corpus acc_det_" + tag + ".jsonl --mode sur --registry " +
                  reg_path + " --out acc_det_" + tag + ".preds.jsonl");
    rc |= run_cli("evaluate --predictions acc_det_" + tag + ".preds.jsonl --out acc_det_" +
                  tag + ".metrics.json");
    if (rc != 0) {
      ok = false;
      detail += "pipeline exit " + std::to_string(rc) + "; ";
    }
  }
  bool corpus_same = slurp("acc_det_a.jsonl") == slurp("acc_det_b.jsonl");
  bool preds_same = slurp("acc_det_a.preds.jsonl") == slurp("acc_det_b.preds.jsonl");
  bool metrics_same = slurp("acc_det_a.metrics.json") == slurp("acc_det_b.metrics.json");
  ok = ok && corpus_same && preds_same && metrics_same && !slurp("acc_det_a.jsonl").empty();
  report(9, "pipeline determinism", ok,
         detail + std::string("corpus ") + (corpus_same ? "identical" : "differs") +
             ", predictions " + (preds_same ? "identical" : "differs") + ", metrics " +
             (metrics_same ? "identical" : "differs"));
}

void criterion_10(const AirlineRegistry& reg) {
  auto profile = uniform_profile(reg);
  SurveillanceParams params;  // defaults: mean 26, dup rate 1.45
  IcaoCallsign target = parse_icao("DLH83K");
  std::mt19937_64 rng(1010);
  double total = 0.0, distinct_total = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    auto snap =
        generate_surveillance(rng, target, params, profile, {0.05, 0.2, 0.45, 0.3});
    total += static_cast<double>(snap.callsigns.size());
    std::set<std::string> identifiers;
    for (const auto& cs : snap.callsigns) identifiers.insert(cs.designator);
    distinct_total += static_cast<double>(identifiers.size());
  }
  double mean = total / n;
  double dup_rate = total / distinct_total;
  bool ok = std::abs(mean - params.size_mean) / params.size_mean <= 0.02 &&
            std::abs(dup_rate - params.identifier_dup_rate) / params.identifier_dup_rate <=
                0.05;
  report(10, "surveillance statistics", ok,
         "size mean " + fmt(mean) + " (target 26 +-2%), identifier dup rate " + fmt(dup_rate) +
             " (target 1.45 +-5%)");
}

}  // namespace

int main() {
  auto reg = registry();
  criterion_1(reg);
  criterion_2(reg);
  criterion_3();
  criterion_4(reg);
  criterion_5(reg);
  criterion_6(reg);
  criterion_7(reg);
  criterion_8();
  criterion_9();
  criterion_10(reg);
  if (g_failures != 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all 10 acceptance criteria passed\n";
  return 0;
}
