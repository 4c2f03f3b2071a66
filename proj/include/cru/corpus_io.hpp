#ifndef CRU_CORPUS_IO_HPP
#define CRU_CORPUS_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "cru/augmentor.hpp"
#include "cru/callsign.hpp"

namespace cru {

// Corpus JSONL, one object per line:
// {"transcript": [tokens], "target": "DLH83K", "span": [start,end],
//  "surveillance": ["AIF44T", ...], "timestamp": int|null,
//  "lat": float|null, "lon": float|null}
std::vector<TranscriptSample> read_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path, const std::vector<TranscriptSample>& samples);

std::string sample_to_json_line(const TranscriptSample& sample);

struct PredictionRecord {
  IcaoCallsign target;
  std::optional<IcaoCallsign> prediction;
  std::optional<double> score;
  std::string decision;
};

std::vector<PredictionRecord> read_predictions_jsonl(const std::string& path);
void write_predictions_jsonl(const std::string& path,
                             const std::vector<PredictionRecord>& records);

}  // namespace cru

#endif  // CRU_CORPUS_IO_HPP
