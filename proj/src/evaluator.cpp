#include "cru/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cru/errors.hpp"
#include "cru/extractor.hpp"
#include "cru/rng.hpp"

namespace cru {

namespace {

std::size_t token_edits(const SpokenForm& hyp, const SpokenForm& ref) {
  std::vector<std::size_t> row(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = ref[i - 1] == hyp[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[hyp.size()];
}

}  // namespace

double csa(const std::vector<std::optional<IcaoCallsign>>& predictions,
           const std::vector<IcaoCallsign>& targets) {
  if (predictions.size() != targets.size()) {
    throw LengthMismatch("csa: prediction/target length mismatch");
  }
  if (targets.empty()) throw LengthMismatch("csa: empty inputs");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (predictions[i] && *predictions[i] == targets[i]) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(targets.size());
}

double wer(const std::vector<SpokenForm>& hypotheses, const std::vector<SpokenForm>& references) {
  if (hypotheses.size() != references.size()) {
    throw LengthMismatch("wer: hypothesis/reference length mismatch");
  }
  std::size_t edits = 0, ref_tokens = 0;
  for (std::size_t i = 0; i < references.size(); ++i) {
    edits += token_edits(hypotheses[i], references[i]);
    ref_tokens += references[i].size();
  }
  if (ref_tokens == 0) throw EmptyReference("wer: reference corpus has no tokens");
  return 100.0 * static_cast<double>(edits) / static_cast<double>(ref_tokens);
}

const char* to_string(RecognizerMode mode) {
  return mode == RecognizerMode::Van ? "van" : "sur";
}

std::optional<RecognizerMode> recognizer_mode_from_string(const std::string& name) {
  if (name == "van") return RecognizerMode::Van;
  if (name == "sur") return RecognizerMode::Sur;
  return std::nullopt;
}

const char* to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::SurveillanceSize: return "surveillance_size";
    case SweepParameter::IdentifierDupFraction: return "identifier_dup_fraction";
    case SweepParameter::NumberDuplicates: return "number_duplicates";
  }
  return "?";
}

std::optional<SweepParameter> sweep_parameter_from_string(const std::string& name) {
  if (name == "surveillance_size") return SweepParameter::SurveillanceSize;
  if (name == "identifier_dup_fraction") return SweepParameter::IdentifierDupFraction;
  if (name == "number_duplicates") return SweepParameter::NumberDuplicates;
  return std::nullopt;
}

namespace {

IcaoCallsign random_distractor(std::mt19937_64& rng, const IcaoCallsign& target,
                               const SweepConfig& cfg,
                               const std::optional<std::string>& forced_designator) {
  for (int tries = 0; tries < 100; ++tries) {
    IcaoCallsign cs =
        synthesize_callsign(rng, cfg.profile, cfg.number_length_weights, std::nullopt);
    if (forced_designator) cs.designator = *forced_designator;
    // Call-sign allocation avoids confusable same-airline pairs in one
    // airspace; simulated distractors honor that.
    if (cs.designator == target.designator && confusable_numbers(cs.number, target.number)) {
      continue;
    }
    if (!(cs == target)) return cs;
  }
  // Unreachable in practice; make the collision visible rather than loop.
  throw ConfigError("could not draw a distractor distinct from " + target.canonical());
}

}  // namespace

SweepReport sweep(const std::vector<TranscriptSample>& corpus, RecognizerMode mode,
                  SweepParameter parameter, const std::vector<double>& values,
                  const AirlineRegistry& reg, const SweepConfig& cfg) {
  if (corpus.empty()) throw ConfigError("sweep: empty corpus");
  if (values.empty()) throw ConfigError("sweep: no parameter values");

  for (double v : values) {
    switch (parameter) {
      case SweepParameter::SurveillanceSize:
        if (v < 1.0) throw ConfigError("surveillance_size values must be >= 1");
        break;
      case SweepParameter::IdentifierDupFraction:
        if (v < 0.0 || v > 1.0) throw ConfigError("identifier_dup_fraction values in [0,1]");
        break;
      case SweepParameter::NumberDuplicates:
        if (v < 0.0 || v != std::floor(v)) {
          throw ConfigError("number_duplicates values must be non-negative integers");
        }
        break;
    }
  }

  // Per-sample master draws shared across parameter values (common random
  // numbers: value changes only reveal more of the same draws).
  std::size_t max_size = 0;
  for (double v : values) max_size = std::max(max_size, static_cast<std::size_t>(v));

  SweepReport report;
  report.parameter = to_string(parameter);
  report.mode = mode;
  report.seed = cfg.seed;

  for (double value : values) {
    std::vector<std::optional<IcaoCallsign>> predictions(corpus.size());
    std::vector<IcaoCallsign> targets(corpus.size());

    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const TranscriptSample& sample = corpus[i];
      targets[i] = sample.target;

      if (mode == RecognizerMode::Van) {
        predictions[i] = vanilla_recognize(sample.transcript, reg);
        continue;
      }

      SurveillanceSnapshot rewritten;
      auto rng = rng_for(cfg.seed, {kStreamSweep, i});
      switch (parameter) {
        case SweepParameter::SurveillanceSize: {
          std::size_t size = static_cast<std::size_t>(value);
          rewritten.callsigns.push_back(sample.target);
          for (std::size_t k = 0; k + 1 < max_size; ++k) {
            IcaoCallsign d = random_distractor(rng, sample.target, cfg, std::nullopt);
            if (k + 1 < size) rewritten.callsigns.push_back(d);
          }
          break;
        }
        case SweepParameter::IdentifierDupFraction: {
          std::size_t n = std::max<std::size_t>(sample.surveillance.callsigns.size(), 1);
          std::size_t distractors = n - 1;
          std::size_t forced =
              static_cast<std::size_t>(std::round(value * static_cast<double>(distractors)));
          rewritten.callsigns.push_back(sample.target);
          for (std::size_t k = 0; k < distractors; ++k) {
            // Draw both alternatives so the stream is value-independent.
            IcaoCallsign plain = random_distractor(rng, sample.target, cfg, std::nullopt);
            IcaoCallsign dup =
                random_distractor(rng, sample.target, cfg, sample.target.designator);
            rewritten.callsigns.push_back(k < forced ? dup : plain);
          }
          break;
        }
        case SweepParameter::NumberDuplicates: {
          rewritten = sample.surveillance;
          std::size_t dups = static_cast<std::size_t>(value);
          for (std::size_t k = 0; k < dups; ++k) {
            IcaoCallsign dup = random_distractor(rng, sample.target, cfg, std::nullopt);
            for (int tries = 0; dup.designator == sample.target.designator && tries < 100;
                 ++tries) {
              dup = random_distractor(rng, sample.target, cfg, std::nullopt);
            }
            dup.number = sample.target.number;
            rewritten.callsigns.push_back(dup);
          }
          break;
        }
      }

      auto [prediction, trace] =
          recognize_with_context(sample.transcript, rewritten, reg, cfg.match);
      predictions[i] = prediction;
    }

    SweepPoint point;
    point.value = value;
    point.csa = csa(predictions, targets);
    point.n = corpus.size();
    report.points.push_back(point);
  }

  report.non_increasing = true;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    if (report.points[i].csa > report.points[i - 1].csa + 1e-9) report.non_increasing = false;
  }
  return report;
}

std::string sweep_report_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["parameter"] = report.parameter;
  j["mode"] = to_string(report.mode);
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : report.points) {
    j["points"].push_back({{"value", p.value}, {"csa", p.csa}, {"n", p.n}});
  }
  j["corpus"] = {{"target_wer", report.corpus_target_wer}, {"seed", report.seed}};
  j["non_increasing"] = report.non_increasing;
  return j.dump(2) + "\n";
}

std::string sweep_report_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "# parameter=" << report.parameter << " mode=" << to_string(report.mode)
      << " target_wer=" << report.corpus_target_wer << " seed=" << report.seed << "\n";
  out << "value,csa,n\n";
  for (const auto& p : report.points) {
    out << p.value << "," << p.csa << "," << p.n << "\n";
  }
  return out.str();
}

}  // namespace cru
