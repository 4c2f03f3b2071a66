#include "cru/augmentor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "cru/errors.hpp"
#include "cru/evaluator.hpp"
#include "cru/phonetic.hpp"
#include "cru/rng.hpp"

namespace cru {

namespace {

constexpr double kMaxChannelProb = 0.95;

double clamp_prob(double p) { return std::clamp(p, 0.0, kMaxChannelProb); }

template <typename T>
const T& weighted_choice(std::mt19937_64& rng, const std::vector<std::pair<T, double>>& items) {
  double total = 0.0;
  for (const auto& [_, w] : items) total += w;
  std::uniform_real_distribution<double> dist(0.0, total);
  double u = dist(rng);
  for (const auto& [item, w] : items) {
    u -= w;
    if (u <= 0.0) return item;
  }
  return items.back().first;
}

const std::string& weighted_designator(std::mt19937_64& rng,
                                       const std::vector<WeightedDesignator>& profile) {
  double total = 0.0;
  for (const auto& wd : profile) total += wd.weight;
  std::uniform_real_distribution<double> dist(0.0, total);
  double u = dist(rng);
  for (const auto& wd : profile) {
    u -= wd.weight;
    if (u <= 0.0) return wd.designator;
  }
  return profile.back().designator;
}

std::string random_number(std::mt19937_64& rng, const std::vector<double>& length_weights) {
  std::vector<std::pair<std::size_t, double>> lengths;
  for (std::size_t i = 0; i < length_weights.size() && i < 4; ++i) {
    lengths.emplace_back(i + 1, length_weights[i]);
  }
  std::size_t len = weighted_choice(rng, lengths);
  static const char* kDigits = "0123456789";
  static const char* kAlnum = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::uniform_int_distribution<int> digit(0, 9);
  std::uniform_int_distribution<int> alnum(0, 35);
  std::string number;
  number.push_back(kDigits[digit(rng)]);
  for (std::size_t i = 1; i < len; ++i) number.push_back(kAlnum[alnum(rng)]);
  return number;
}

// Sampled Poisson via inversion; fine for the means used here.
std::size_t poisson(std::mt19937_64& rng, double mean) {
  std::poisson_distribution<std::size_t> dist(mean);
  return dist(rng);
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::size_t per = (n + jobs - 1) / jobs;
  for (std::size_t w = 0; w < jobs; ++w) {
    std::size_t lo = w * per;
    std::size_t hi = std::min(n, lo + per);
    if (lo >= hi) break;
    workers.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

NoiseModel NoiseModel::scaled(double factor) const {
  NoiseModel out = *this;
  out.p_sub = clamp_prob(p_sub * factor);
  out.p_del = clamp_prob(p_del * factor);
  out.p_ins = clamp_prob(p_ins * factor);
  return out;
}

NoiseModel NoiseModel::builtin(const AirlineRegistry& reg) {
  NoiseModel nm;
  nm.p_sub = 0.06;
  nm.p_del = 0.03;
  nm.p_ins = 0.03;

  auto add = [&](const std::string& src, std::initializer_list<std::string> repls) {
    for (const auto& r : repls) nm.confusions[src].emplace_back(r, 1.0);
  };
  add("zero", {"oh", "hero"});
  add("oh", {"zero", "or"});
  add("one", {"won", "wun"});
  add("two", {"to", "too"});
  add("three", {"tree", "free"});
  add("four", {"for", "fore"});
  add("five", {"fife", "nine"});
  add("six", {"fix", "sick"});
  add("seven", {"heaven", "sever"});
  add("eight", {"ate", "late"});
  add("nine", {"five", "wine"});
  add("alfa", {"alpha", "alva"});
  add("bravo", {"brother", "bravos"});
  add("charlie", {"charly", "early"});
  add("delta", {"delia", "deta"});
  add("echo", {"ecko", "hecho"});
  add("foxtrot", {"fox", "foxtrott"});
  add("golf", {"gulf", "golfer"});
  add("hotel", {"motel", "hotels"});
  add("india", {"indian", "indigo"});
  add("juliett", {"juliet", "julia"});
  add("kilo", {"key", "keelo"});
  add("lima", {"leema", "lena"});
  add("mike", {"bike", "might"});
  add("november", {"remember", "movember"});
  add("oscar", {"oskar", "scar"});
  add("papa", {"pepper", "pappa"});
  add("quebec", {"kebek", "quebeck"});
  add("romeo", {"romea", "rodeo"});
  add("sierra", {"serra", "sara"});
  add("tango", {"tengo", "mango"});
  add("uniform", {"unicorn", "uniforms"});
  add("victor", {"victa", "victory"});
  add("whiskey", {"whisky", "whisk"});
  add("x-ray", {"xray", "ray"});
  add("yankee", {"yanky", "yank"});
  add("zulu", {"sulu", "zoo"});
  for (int t = 20; t <= 90; t += 10) {
    std::string w = tens_word(t);
    add(w, {w.substr(0, w.size() - 1)});
  }

  // Near-spellings of telephony words, so identifier noise stays
  // phonetically plausible like real ASR confusions.
  for (const auto& designator : reg.designators()) {
    for (const auto& name : reg.telephony_names(designator)) {
      for (const auto& word : name) {
        if (word.size() < 4 || nm.confusions.count(word)) continue;
        nm.confusions[word].emplace_back(word.substr(1), 1.0);
        nm.confusions[word].emplace_back(word.substr(0, word.size() - 1), 1.0);
      }
    }
  }

  for (const char* w : {"the", "and", "to", "a", "er", "ah", "uh", "again", "with", "you",
                        "is", "that", "on", "for", "roger", "say", "correction", "please"}) {
    nm.insert_vocab.emplace_back(w, 1.0);
  }
  return nm;
}

void NoiseModel::load_confusions_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open confusion table: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string src, repl, weight_text;
    if (!std::getline(row, src, '\t') || !std::getline(row, repl, '\t') ||
        !std::getline(row, weight_text, '\t')) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected source<TAB>replacement<TAB>weight");
    }
    double weight = std::stod(weight_text);
    if (weight <= 0.0) throw ConfigError(path + ":" + std::to_string(lineno) + ": weight <= 0");
    confusions[src].emplace_back(repl, weight);
  }
}

std::vector<WeightedDesignator> uniform_profile(const AirlineRegistry& reg) {
  std::vector<WeightedDesignator> profile;
  for (const auto& d : reg.designators()) profile.push_back({d, 1.0});
  return profile;
}

std::vector<std::pair<VariantKind, double>> AugmentConfig::default_variant_distribution() {
  return {{VariantKind::Full, 0.55},          {VariantKind::NoIdentifier, 0.15},
          {VariantKind::GroupedNumber, 0.10}, {VariantKind::SpelledDesignator, 0.10},
          {VariantKind::IdentifierOnly, 0.05}, {VariantKind::ShortenedNumber, 0.05}};
}

IcaoCallsign synthesize_callsign(std::mt19937_64& rng,
                                 const std::vector<WeightedDesignator>& profile,
                                 const std::vector<double>& length_weights,
                                 const std::optional<std::string>& forced_number) {
  if (profile.empty()) throw ConfigError("airspace profile is empty");
  std::string designator = weighted_designator(rng, profile);
  std::string number = forced_number ? *forced_number : random_number(rng, length_weights);
  if (!valid_callsign_number(number)) throw ConfigError("invalid forced number: " + number);
  return IcaoCallsign{designator, number};
}

TranscriptSample replace_callsign(const TranscriptSample& donor, const IcaoCallsign& cs,
                                  VariantKind kind, const AirlineRegistry& reg,
                                  std::mt19937_64& rng) {
  auto variants = expand_to_spoken(cs, reg, {kind});
  if (variants.empty()) {
    throw ConfigError(std::string("variant kind ") + to_string(kind) +
                      " does not apply to " + cs.canonical());
  }
  std::uniform_int_distribution<std::size_t> pick(0, variants.size() - 1);
  const SpokenForm& inserted = variants[pick(rng)].tokens;

  TranscriptSample out = donor;
  out.transcript.clear();
  out.transcript.insert(out.transcript.end(), donor.transcript.begin(),
                        donor.transcript.begin() + static_cast<long>(donor.callsign_span.start));
  out.transcript.insert(out.transcript.end(), inserted.begin(), inserted.end());
  out.transcript.insert(out.transcript.end(),
                        donor.transcript.begin() + static_cast<long>(donor.callsign_span.end),
                        donor.transcript.end());
  out.target = cs;
  out.callsign_span = Span{donor.callsign_span.start,
                           donor.callsign_span.start + inserted.size(), kind, inserted};
  return out;
}

SurveillanceSnapshot generate_surveillance(std::mt19937_64& rng, const IcaoCallsign& target,
                                           const SurveillanceParams& params,
                                           const std::vector<WeightedDesignator>& profile,
                                           const std::vector<double>& length_weights) {
  std::size_t n = 1;
  if (params.size_dispersion > 0.0) {
    std::normal_distribution<double> dist(params.size_mean, params.size_dispersion);
    n = static_cast<std::size_t>(std::max(1.0, std::round(dist(rng))));
  } else if (params.size_mean > 1.0) {
    n = 1 + poisson(rng, params.size_mean - 1.0);
  }

  std::size_t want_distinct = static_cast<std::size_t>(
      std::clamp(std::round(static_cast<double>(n) / params.identifier_dup_rate), 1.0,
                 static_cast<double>(n)));
  std::set<std::string> pool{target.designator};
  for (int tries = 0; pool.size() < want_distinct && tries < 2000; ++tries) {
    pool.insert(weighted_designator(rng, profile));
  }

  // Assign each pool identifier at least once, then fill uniformly.
  std::vector<std::string> pool_vec(pool.begin(), pool.end());
  std::vector<std::string> slots;
  for (const auto& d : pool_vec) {
    if (d != target.designator && slots.size() < n - 1) slots.push_back(d);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool_vec.size() - 1);
  while (slots.size() < n - 1) slots.push_back(pool_vec[pick(rng)]);

  SurveillanceSnapshot snapshot;
  snapshot.callsigns.push_back(target);
  for (const auto& designator : slots) {
    IcaoCallsign cs{designator, ""};
    for (int tries = 0; tries < 100; ++tries) {
      cs.number = random_number(rng, length_weights);
      // Reject the target itself and, within the target's airline, numbers
      // confusable with the target's: allocation avoids such pairs in one
      // airspace.
      bool confusable = cs.designator == target.designator &&
                        confusable_numbers(cs.number, target.number);
      if (!confusable) break;
    }
    snapshot.callsigns.push_back(cs);
  }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (snapshot.callsigns.size() > 1 && u(rng) < params.number_dup_prob) {
    std::uniform_int_distribution<std::size_t> slot(1, snapshot.callsigns.size() - 1);
    IcaoCallsign& dup = snapshot.callsigns[slot(rng)];
    dup.number = target.number;
    for (int tries = 0; dup.designator == target.designator && tries < 2000; ++tries) {
      dup.designator = weighted_designator(rng, profile);
    }
    if (dup.designator == target.designator) dup.number = random_number(rng, length_weights);
  }
  return snapshot;
}

SpokenForm apply_noise(std::mt19937_64& rng, const SpokenForm& tokens, const NoiseModel& nm) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SpokenForm out;
  out.reserve(tokens.size() + 2);

  auto maybe_insert = [&] {
    bool fire = u(rng) < nm.p_ins;
    if (fire && !nm.insert_vocab.empty()) out.push_back(weighted_choice(rng, nm.insert_vocab));
  };

  for (const auto& token : tokens) {
    maybe_insert();
    if (u(rng) < nm.p_del) continue;
    if (u(rng) < nm.p_sub) {
      auto it = nm.confusions.find(token);
      if (it != nm.confusions.end() && !it->second.empty()) {
        out.push_back(weighted_choice(rng, it->second));
      } else if (!nm.insert_vocab.empty()) {
        std::string repl = weighted_choice(rng, nm.insert_vocab);
        for (int tries = 0; repl == token && tries < 10; ++tries) {
          repl = weighted_choice(rng, nm.insert_vocab);
        }
        if (repl != token) {
          out.push_back(repl);
        } else {
          out.push_back(token);
        }
      } else {
        out.push_back(token);
      }
      continue;
    }
    out.push_back(token);
  }
  maybe_insert();
  return out;
}

std::pair<SpokenForm, Span> apply_noise_sample(std::uint64_t seed, std::uint64_t index,
                                               const SpokenForm& tokens, const Span& span,
                                               const NoiseModel& nm) {
  auto rng = rng_for(seed, {kStreamNoise, index});
  SpokenForm before(tokens.begin(), tokens.begin() + static_cast<long>(span.start));
  SpokenForm inside(tokens.begin() + static_cast<long>(span.start),
                    tokens.begin() + static_cast<long>(span.end));
  SpokenForm after(tokens.begin() + static_cast<long>(span.end), tokens.end());

  SpokenForm noisy_before = apply_noise(rng, before, nm);
  SpokenForm noisy_inside = apply_noise(rng, inside, nm);
  SpokenForm noisy_after = apply_noise(rng, after, nm);

  SpokenForm out = noisy_before;
  out.insert(out.end(), noisy_inside.begin(), noisy_inside.end());
  out.insert(out.end(), noisy_after.begin(), noisy_after.end());

  Span new_span = span;
  new_span.start = noisy_before.size();
  new_span.end = noisy_before.size() + noisy_inside.size();
  new_span.tokens = noisy_inside;
  return {std::move(out), std::move(new_span)};
}

namespace {

double measure_corpus_wer(const NoiseModel& nm, const std::vector<TranscriptSample>& reference,
                          std::uint64_t seed) {
  std::vector<SpokenForm> hyps, refs;
  hyps.reserve(reference.size());
  refs.reserve(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    auto [noisy, _] =
        apply_noise_sample(seed, i, reference[i].transcript, reference[i].callsign_span, nm);
    hyps.push_back(std::move(noisy));
    refs.push_back(reference[i].transcript);
  }
  return wer(hyps, refs);
}

}  // namespace

NoiseModel calibrate_noise(const NoiseModel& nm, double target_wer,
                           const std::vector<TranscriptSample>& reference, std::uint64_t seed) {
  if (target_wer < 0.0 || target_wer >= 60.0) {
    throw CalibrationFailed("target WER out of range [0, 60)");
  }
  if (target_wer == 0.0) {
    NoiseModel out = nm.scaled(0.0);
    out.target_wer = 0.0;
    return out;
  }
  if (reference.empty()) throw CalibrationFailed("empty reference corpus");
  if (nm.p_sub + nm.p_del + nm.p_ins <= 0.0) {
    throw CalibrationFailed("channel has zero base probabilities");
  }

  const double tolerance = 1.0;
  double lo = 0.0, hi = 1.0;
  double wer_hi = measure_corpus_wer(nm.scaled(hi), reference, seed);
  int grow = 0;
  while (wer_hi < target_wer && grow++ < 12) {
    lo = hi;
    hi *= 2.0;
    wer_hi = measure_corpus_wer(nm.scaled(hi), reference, seed);
  }
  if (wer_hi < target_wer - tolerance) {
    throw CalibrationFailed("cannot bracket target WER " + std::to_string(target_wer));
  }

  double best_factor = hi;
  double best_err = std::abs(wer_hi - target_wer);
  for (int iter = 0; iter < 50 && best_err > 0.05; ++iter) {
    double mid = (lo + hi) / 2.0;
    double w = measure_corpus_wer(nm.scaled(mid), reference, seed);
    if (std::abs(w - target_wer) < best_err) {
      best_err = std::abs(w - target_wer);
      best_factor = mid;
    }
    if (w < target_wer) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_err > tolerance) {
    throw CalibrationFailed("bisection landed " + std::to_string(best_err) +
                            " points away from target " + std::to_string(target_wer));
  }
  NoiseModel out = nm.scaled(best_factor);
  out.target_wer = target_wer;
  return out;
}

AugmentResult augment_corpus(const std::vector<TranscriptSample>& donors,
                             const AugmentConfig& cfg, const AirlineRegistry& reg,
                             std::size_t jobs) {
  if (donors.empty()) throw ConfigError("donor corpus is empty");
  if (cfg.airspace_profile.empty()) throw ConfigError("airspace profile is empty");

  std::size_t n = cfg.output_size ? cfg.output_size : donors.size();
  AugmentResult result;
  result.samples.resize(n);

  parallel_for(n, jobs, [&](std::size_t i) {
    auto synth_rng = rng_for(cfg.seed, {kStreamSynthesize, i});
    IcaoCallsign cs =
        synthesize_callsign(synth_rng, cfg.airspace_profile, cfg.number_length_weights);
    VariantKind kind = weighted_choice(synth_rng, cfg.variant_distribution);
    if (expand_to_spoken(cs, reg, {kind}).empty()) kind = VariantKind::Full;

    auto variant_rng = rng_for(cfg.seed, {kStreamVariant, i});
    const TranscriptSample& donor = donors[i % donors.size()];
    TranscriptSample sample = replace_callsign(donor, cs, kind, reg, variant_rng);

    auto sur_rng = rng_for(cfg.seed, {kStreamSurveillance, i});
    sample.surveillance = generate_surveillance(sur_rng, cs, cfg.surveillance,
                                                cfg.airspace_profile, cfg.number_length_weights);
    result.samples[i] = std::move(sample);
  });

  if (cfg.noise && cfg.noise->target_wer > 0.0) {
    NoiseModel calibrated =
        calibrate_noise(*cfg.noise, cfg.noise->target_wer, result.samples, cfg.seed);
    result.noise_scale = calibrated.p_sub / (cfg.noise->p_sub > 0 ? cfg.noise->p_sub : 1.0);

    std::vector<SpokenForm> clean(n);
    for (std::size_t i = 0; i < n; ++i) clean[i] = result.samples[i].transcript;

    parallel_for(n, jobs, [&](std::size_t i) {
      auto [noisy, span] = apply_noise_sample(cfg.seed, i, result.samples[i].transcript,
                                              result.samples[i].callsign_span, calibrated);
      result.samples[i].transcript = std::move(noisy);
      result.samples[i].callsign_span = std::move(span);
    });

    std::vector<SpokenForm> noisy(n);
    for (std::size_t i = 0; i < n; ++i) noisy[i] = result.samples[i].transcript;
    result.realized_wer = wer(noisy, clean);
  }
  return result;
}

std::vector<TranscriptSample> make_donor_corpus(std::size_t n, std::uint64_t seed,
                                                const AirlineRegistry& reg,
                                                const std::vector<WeightedDesignator>& profile) {
  static const std::vector<SpokenForm> kTails = {
      {"descend", "three", "thousand", "feet"},
      {"climb", "flight", "level", "three", "four", "zero"},
      {"contact", "tower", "on", "one", "one", "eight", "decimal", "seven"},
      {"cleared", "to", "land", "runway", "two", "seven"},
      {"turn", "left", "heading", "three", "four", "zero"},
      {"reduce", "speed", "one", "eight", "zero", "knots"},
      {"hold", "short", "of", "runway"},
      {"line", "up", "and", "wait"},
      {"wind", "calm", "cleared", "for", "takeoff"},
      {"squawk", "seven", "four", "six", "two"},
      {"report", "final"},
      {"taxi", "to", "holding", "point"},
      {"expect", "vectors", "for", "the", "approach"},
      {"good", "day", "radar", "contact"},
  };

  std::vector<TranscriptSample> donors(n);
  std::vector<double> length_weights = {0.05, 0.20, 0.45, 0.30};
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = rng_for(seed, {kStreamDonor, i});
    IcaoCallsign cs = synthesize_callsign(rng, profile, length_weights);
    TranscriptSample donor;
    donor.target = cs;
    auto variants = expand_to_spoken(cs, reg, {VariantKind::Full});
    std::uniform_int_distribution<std::size_t> pick(0, variants.size() - 1);
    SpokenForm inserted = variants[pick(rng)].tokens;
    std::uniform_int_distribution<std::size_t> tail_pick(0, kTails.size() - 1);
    const SpokenForm& tail = kTails[tail_pick(rng)];
    donor.transcript = inserted;
    donor.transcript.insert(donor.transcript.end(), tail.begin(), tail.end());
    donor.callsign_span = Span{0, inserted.size(), VariantKind::Full, inserted};
    donors[i] = std::move(donor);
  }
  return donors;
}

}  // namespace cru
