#include "cru/corpus_io.hpp"

#include <fstream>

#include <json.hpp>

#include "cru/errors.hpp"

namespace cru {

namespace {

using json = nlohmann::ordered_json;

json span_to_json(const Span& span) { return json::array({span.start, span.end}); }

[[noreturn]] void fail(const std::string& path, std::size_t lineno, const std::string& what) {
  throw ConfigError(path + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

std::string sample_to_json_line(const TranscriptSample& sample) {
  json j;
  j["transcript"] = sample.transcript;
  j["target"] = sample.target.canonical();
  j["span"] = span_to_json(sample.callsign_span);
  json sur = json::array();
  for (const auto& cs : sample.surveillance.callsigns) sur.push_back(cs.canonical());
  j["surveillance"] = std::move(sur);
  j["timestamp"] = sample.timestamp ? json(*sample.timestamp) : json(nullptr);
  j["lat"] = sample.lat ? json(*sample.lat) : json(nullptr);
  j["lon"] = sample.lon ? json(*sample.lon) : json(nullptr);
  return j.dump();
}

void write_corpus_jsonl(const std::string& path, const std::vector<TranscriptSample>& samples) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write corpus: " + path);
  for (const auto& sample : samples) out << sample_to_json_line(sample) << "\n";
}

std::vector<TranscriptSample> read_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus: " + path);
  std::vector<TranscriptSample> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(path, lineno, "not a JSON object");
    TranscriptSample sample;
    try {
      sample.transcript = j.at("transcript").get<SpokenForm>();
      sample.target = parse_icao(j.at("target").get<std::string>());
      auto span = j.at("span");
      sample.callsign_span.start = span.at(0).get<std::size_t>();
      sample.callsign_span.end = span.at(1).get<std::size_t>();
      if (sample.callsign_span.end > sample.transcript.size() ||
          sample.callsign_span.start > sample.callsign_span.end) {
        fail(path, lineno, "span out of range");
      }
      sample.callsign_span.tokens.assign(
          sample.transcript.begin() + static_cast<long>(sample.callsign_span.start),
          sample.transcript.begin() + static_cast<long>(sample.callsign_span.end));
      for (const auto& cs : j.at("surveillance")) {
        sample.surveillance.callsigns.push_back(parse_icao(cs.get<std::string>()));
      }
      if (j.contains("timestamp") && !j["timestamp"].is_null()) {
        sample.timestamp = j["timestamp"].get<std::int64_t>();
      }
      if (j.contains("lat") && !j["lat"].is_null()) sample.lat = j["lat"].get<double>();
      if (j.contains("lon") && !j["lon"].is_null()) sample.lon = j["lon"].get<double>();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(path, lineno, e.what());
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

void write_predictions_jsonl(const std::string& path,
                             const std::vector<PredictionRecord>& records) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write predictions: " + path);
  for (const auto& rec : records) {
    json j;
    j["target"] = rec.target.canonical();
    j["prediction"] = rec.prediction ? json(rec.prediction->canonical()) : json(nullptr);
    j["score"] = rec.score ? json(*rec.score) : json(nullptr);
    j["decision"] = rec.decision;
    out << j.dump() << "\n";
  }
}

std::vector<PredictionRecord> read_predictions_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open predictions: " + path);
  std::vector<PredictionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(path, lineno, "not a JSON object");
    PredictionRecord rec;
    try {
      rec.target = parse_icao(j.at("target").get<std::string>());
      if (!j.at("prediction").is_null()) {
        rec.prediction = parse_icao(j["prediction"].get<std::string>());
      }
      if (j.contains("score") && !j["score"].is_null()) rec.score = j["score"].get<double>();
      rec.decision = j.value("decision", "");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(path, lineno, e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace cru
