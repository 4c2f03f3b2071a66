#ifndef CRU_EVALUATOR_HPP
#define CRU_EVALUATOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cru/augmentor.hpp"
#include "cru/callsign.hpp"
#include "cru/matcher.hpp"
#include "cru/registry.hpp"

namespace cru {

// Call-sign accuracy in percent. A null prediction counts as a miss.
// Throws LengthMismatch.
double csa(const std::vector<std::optional<IcaoCallsign>>& predictions,
           const std::vector<IcaoCallsign>& targets);

// Corpus-level word error rate in percent: total token edits over total
// reference tokens, unit costs. Throws LengthMismatch / EmptyReference.
double wer(const std::vector<SpokenForm>& hypotheses, const std::vector<SpokenForm>& references);

enum class RecognizerMode { Van, Sur };

const char* to_string(RecognizerMode mode);
std::optional<RecognizerMode> recognizer_mode_from_string(const std::string& name);

enum class SweepParameter { SurveillanceSize, IdentifierDupFraction, NumberDuplicates };

const char* to_string(SweepParameter parameter);
std::optional<SweepParameter> sweep_parameter_from_string(const std::string& name);

struct SweepPoint {
  double value = 0.0;
  double csa = 0.0;
  std::size_t n = 0;
};

struct SweepReport {
  std::string parameter;
  RecognizerMode mode = RecognizerMode::Sur;
  std::vector<SweepPoint> points;
  double corpus_target_wer = 0.0;
  std::uint64_t seed = 0;
  bool non_increasing = false;  // exact monotone trend over the point series
};

struct SweepConfig {
  MatchConfig match;
  std::vector<WeightedDesignator> profile;  // distractor airline mix
  std::vector<double> number_length_weights = {0.05, 0.20, 0.45, 0.30};
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

// Robustness sweep: for each value, rewrite every sample's surveillance
// (resize / force identifier duplicates / inject number duplicates), run the
// recognizer, and record CSA. Rewrites always retain the target and, for the
// size sweep, nest distractor sets across values so the series is exactly
// monotone per sample.
SweepReport sweep(const std::vector<TranscriptSample>& corpus, RecognizerMode mode,
                  SweepParameter parameter, const std::vector<double>& values,
                  const AirlineRegistry& reg, const SweepConfig& cfg);

std::string sweep_report_json(const SweepReport& report);
std::string sweep_report_csv(const SweepReport& report);

}  // namespace cru

#endif  // CRU_EVALUATOR_HPP
