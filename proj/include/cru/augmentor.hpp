#ifndef CRU_AUGMENTOR_HPP
#define CRU_AUGMENTOR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cru/callsign.hpp"
#include "cru/extractor.hpp"
#include "cru/matcher.hpp"
#include "cru/registry.hpp"
#include "cru/variants.hpp"

namespace cru {

// One corpus record: a transcript with its target call-sign, the location of
// the call-sign within the transcript, and the surveillance context.
struct TranscriptSample {
  SpokenForm transcript;
  IcaoCallsign target;
  Span callsign_span;
  SurveillanceSnapshot surveillance;
  std::optional<std::int64_t> timestamp;
  std::optional<double> lat;
  std::optional<double> lon;
};

// Shape parameters of simulated surveillance, matched to real ADS-B
// statistics (mean 26 call-signs, identifiers repeating 1.45 times, a number
// duplicated in 2.7% of samples).
struct SurveillanceParams {
  double size_mean = 26.0;
  double size_dispersion = 0.0;  // 0: shifted Poisson; >0: rounded normal
  double identifier_dup_rate = 1.45;
  double number_dup_prob = 0.027;
};

// Token-level substitution/deletion/insertion channel. Substitutions draw
// from per-token confusion sets and fall back to the insertion vocabulary.
struct NoiseModel {
  double p_sub = 0.0;
  double p_del = 0.0;
  double p_ins = 0.0;
  std::map<std::string, std::vector<std::pair<std::string, double>>> confusions;
  std::vector<std::pair<std::string, double>> insert_vocab;
  double target_wer = 0.0;  // percent

  NoiseModel scaled(double factor) const;

  // Parametric channel with a phonetic confusion table for digit/NATO/tens
  // words plus near-spellings of the registry's telephony words.
  static NoiseModel builtin(const AirlineRegistry& reg);

  // Confusion rows: source<TAB>replacement<TAB>weight. Merges into the model.
  void load_confusions_tsv(const std::string& path);
};

struct WeightedDesignator {
  std::string designator;
  double weight = 1.0;
};

std::vector<WeightedDesignator> uniform_profile(const AirlineRegistry& reg);

struct AugmentConfig {
  std::vector<std::pair<VariantKind, double>> variant_distribution =
      default_variant_distribution();
  std::vector<WeightedDesignator> airspace_profile;
  SurveillanceParams surveillance;
  std::optional<NoiseModel> noise;  // nullopt => WER 0 corpus
  std::uint64_t seed = 0;
  // Probability of call-sign number lengths 1..4.
  std::vector<double> number_length_weights = {0.05, 0.20, 0.45, 0.30};
  std::size_t output_size = 0;  // 0 => one sample per donor

  static std::vector<std::pair<VariantKind, double>> default_variant_distribution();
};

// Random call-sign: designator from the weighted airspace profile, number of
// length 1..4 starting with a digit. forced_number overrides the number draw
// (test hook).
IcaoCallsign synthesize_callsign(std::mt19937_64& rng,
                                 const std::vector<WeightedDesignator>& profile,
                                 const std::vector<double>& length_weights,
                                 const std::optional<std::string>& forced_number = std::nullopt);

// Cut-and-replace: the donor's call-sign span is replaced with one drawn
// spoken variant of cs; everything outside the span is preserved.
TranscriptSample replace_callsign(const TranscriptSample& donor, const IcaoCallsign& cs,
                                  VariantKind kind, const AirlineRegistry& reg,
                                  std::mt19937_64& rng);

// Simulated surveillance: the target exactly once plus distractors with the
// configured size and duplicate statistics. No distractor equals the target.
SurveillanceSnapshot generate_surveillance(std::mt19937_64& rng, const IcaoCallsign& target,
                                           const SurveillanceParams& params,
                                           const std::vector<WeightedDesignator>& profile,
                                           const std::vector<double>& length_weights);

// Independent per-token channel; the result may be empty.
SpokenForm apply_noise(std::mt19937_64& rng, const SpokenForm& tokens, const NoiseModel& nm);

// Span-preserving variant: noise is applied per segment so the call-sign
// span location stays known after insertions/deletions.
std::pair<SpokenForm, Span> apply_noise_sample(std::uint64_t seed, std::uint64_t index,
                                               const SpokenForm& tokens, const Span& span,
                                               const NoiseModel& nm);

// Scales the channel probabilities by a common bisection-found factor so the
// realized corpus WER lands within +-1.0 of target_wer. Measurement replays
// the exact per-sample noise streams the augmentation pipeline will use.
// Throws CalibrationFailed when the target cannot be bracketed.
NoiseModel calibrate_noise(const NoiseModel& nm, double target_wer,
                           const std::vector<TranscriptSample>& reference, std::uint64_t seed);

struct AugmentResult {
  std::vector<TranscriptSample> samples;
  double realized_wer = 0.0;  // percent, vs the pre-noise transcripts
  double noise_scale = 0.0;
};

// Whole pipeline: synthesize + cut-and-replace, simulate surveillance, then
// (optionally) inject calibrated ASR noise into the transcript only.
// Deterministic given cfg.seed for any jobs count.
AugmentResult augment_corpus(const std::vector<TranscriptSample>& donors,
                             const AugmentConfig& cfg, const AirlineRegistry& reg,
                             std::size_t jobs = 1);

// Synthetic donor transcripts built from templated ATC phraseology, for use
// when no labeled corpus is available.
std::vector<TranscriptSample> make_donor_corpus(std::size_t n, std::uint64_t seed,
                                                const AirlineRegistry& reg,
                                                const std::vector<WeightedDesignator>& profile);

}  // namespace cru

#endif  // CRU_AUGMENTOR_HPP
