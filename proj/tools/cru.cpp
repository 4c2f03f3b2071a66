// Batch CLI wiring corpus augmentation, recognition, evaluation, robustness
// sweeps and surveillance fetching. Every output artifact gets a sibling
// <out>.manifest.json recording the resolved configuration and seed.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cru/augmentor.hpp"
#include "cru/corpus_io.hpp"
#include "cru/errors.hpp"
#include "cru/evaluator.hpp"
#include "cru/extractor.hpp"
#include "cru/matcher.hpp"
#include "cru/osn.hpp"
#include "cru/registry.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::int64_t unix_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag_seed, const json& config) {
  if (flag_seed) return *flag_seed;
  if (config.contains("seed")) return config["seed"].get<std::uint64_t>();
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw cru::ConfigError("cannot open config file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw cru::ConfigError("config file is not a JSON object: " + path);
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cru::ConfigError("cannot write output: " + path);
  out << text;
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    std::uint64_t seed, const json& inputs, const json& resolved,
                    std::int64_t started, json extra = json::object()) {
  json m;
  m["subcommand"] = subcommand;
  m["version"] = kVersion;
  m["seed"] = seed;
  m["inputs"] = inputs;
  m["output"] = out_path;
  m["config"] = resolved;
  for (auto& [k, v] : extra.items()) m[k] = v;
  m["started_unix"] = started;
  m["finished_unix"] = unix_now();
  write_text(out_path + ".manifest.json", m.dump(2) + "\n");
}

cru::MatchConfig match_config_from(const json& cfg) {
  cru::MatchConfig match;
  if (cfg.contains("match")) {
    const json& m = cfg["match"];
    match.threshold = m.value("threshold", match.threshold);
    match.digit_weight = m.value("digit_weight", match.digit_weight);
    match.char_aware_substitution =
        m.value("char_aware_substitution", match.char_aware_substitution);
    if (m.contains("costs")) {
      match.sub_cost = m["costs"].value("sub", match.sub_cost);
      match.del_cost = m["costs"].value("del", match.del_cost);
      match.ins_cost = m["costs"].value("ins", match.ins_cost);
    }
    if (m.contains("kinds")) {
      match.kinds.clear();
      for (const auto& name : m["kinds"]) {
        auto kind = cru::variant_kind_from_string(name.get<std::string>());
        if (!kind) throw cru::ConfigError("unknown variant kind: " + name.get<std::string>());
        match.kinds.push_back(*kind);
      }
    }
  }
  return match;
}

json match_config_to_json(const cru::MatchConfig& match) {
  json kinds = json::array();
  for (auto k : match.kinds) kinds.push_back(cru::to_string(k));
  return {{"threshold", match.threshold},
          {"digit_weight", match.digit_weight},
          {"char_aware_substitution", match.char_aware_substitution},
          {"costs", {{"sub", match.sub_cost}, {"del", match.del_cost}, {"ins", match.ins_cost}}},
          {"kinds", kinds}};
}

cru::AugmentConfig augment_config_from(const json& cfg, const cru::AirlineRegistry& reg,
                                       std::uint64_t seed,
                                       std::optional<double> target_wer_flag,
                                       std::size_t size_flag) {
  cru::AugmentConfig out;
  out.seed = seed;
  if (cfg.contains("variant_distribution")) {
    out.variant_distribution.clear();
    for (auto& [name, weight] : cfg["variant_distribution"].items()) {
      auto kind = cru::variant_kind_from_string(name);
      if (!kind) throw cru::ConfigError("unknown variant kind: " + name);
      out.variant_distribution.emplace_back(*kind, weight.get<double>());
    }
  }
  if (cfg.contains("airspace_profile")) {
    for (auto& [designator, weight] : cfg["airspace_profile"].items()) {
      out.airspace_profile.push_back({designator, weight.get<double>()});
    }
  } else {
    out.airspace_profile = cru::uniform_profile(reg);
  }
  if (cfg.contains("surveillance")) {
    const json& s = cfg["surveillance"];
    out.surveillance.size_mean = s.value("size_mean", out.surveillance.size_mean);
    out.surveillance.size_dispersion =
        s.value("size_dispersion", out.surveillance.size_dispersion);
    out.surveillance.identifier_dup_rate =
        s.value("identifier_dup_rate", out.surveillance.identifier_dup_rate);
    out.surveillance.number_dup_prob =
        s.value("number_dup_prob", out.surveillance.number_dup_prob);
  }
  if (cfg.contains("number_length_weights")) {
    out.number_length_weights = cfg["number_length_weights"].get<std::vector<double>>();
  }
  out.output_size = cfg.value("output_size", std::size_t{0});
  if (size_flag) out.output_size = size_flag;

  double target_wer = cfg.value("target_wer", 0.0);
  if (target_wer_flag) target_wer = *target_wer_flag;
  if (target_wer > 0.0) {
    cru::NoiseModel nm = cru::NoiseModel::builtin(reg);
    if (cfg.contains("confusions_tsv")) {
      nm.load_confusions_tsv(cfg["confusions_tsv"].get<std::string>());
    }
    nm.target_wer = target_wer;
    out.noise = std::move(nm);
  }
  return out;
}

json augment_config_to_json(const cru::AugmentConfig& cfg) {
  json vd = json::object();
  for (const auto& [kind, weight] : cfg.variant_distribution) {
    vd[cru::to_string(kind)] = weight;
  }
  json profile = json::object();
  for (const auto& wd : cfg.airspace_profile) profile[wd.designator] = wd.weight;
  return {{"seed", cfg.seed},
          {"output_size", cfg.output_size},
          {"target_wer", cfg.noise ? cfg.noise->target_wer : 0.0},
          {"variant_distribution", vd},
          {"airspace_profile", profile},
          {"surveillance",
           {{"size_mean", cfg.surveillance.size_mean},
            {"size_dispersion", cfg.surveillance.size_dispersion},
            {"identifier_dup_rate", cfg.surveillance.identifier_dup_rate},
            {"number_dup_prob", cfg.surveillance.number_dup_prob}}},
          {"number_length_weights", cfg.number_length_weights}};
}

int cmd_augment(const std::string& config_path, const std::string& donors_path,
                std::size_t synthetic_donors, const std::string& registry_path,
                const std::string& out_path, std::optional<std::uint64_t> seed_flag,
                std::optional<double> target_wer_flag, std::size_t size_flag,
                std::size_t jobs) {
  std::int64_t started = unix_now();
  json config = load_config(config_path);
  auto reg = cru::AirlineRegistry::from_tsv(registry_path);
  std::uint64_t seed = pick_seed(seed_flag, config);
  cru::AugmentConfig cfg = augment_config_from(config, reg, seed, target_wer_flag, size_flag);

  std::vector<cru::TranscriptSample> donors;
  if (!donors_path.empty()) {
    donors = cru::read_corpus_jsonl(donors_path);
  } else {
    std::size_t n = synthetic_donors ? synthetic_donors : 1000;
    donors = cru::make_donor_corpus(n, seed ^ 0x5d0f54d1ULL, reg, cfg.airspace_profile);
  }

  cru::AugmentResult result = cru::augment_corpus(donors, cfg, reg, jobs);
  cru::write_corpus_jsonl(out_path, result.samples);

  json extra;
  if (cfg.noise) extra["realized_wer"] = result.realized_wer;
  write_manifest(out_path, "augment", seed,
                 {{"donors", donors_path.empty() ? json(nullptr) : json(donors_path)},
                  {"synthetic_donors", donors_path.empty() ? donors.size() : 0},
                  {"registry", registry_path},
                  {"config", config_path}},
                 augment_config_to_json(cfg), started, extra);
  return 0;
}

int cmd_recognize(const std::string& corpus_path, const std::string& mode_name,
                  const std::string& registry_path, const std::string& out_path,
                  const std::string& config_path, std::optional<double> threshold_flag,
                  std::optional<double> digit_weight_flag) {
  std::int64_t started = unix_now();
  json config = load_config(config_path);
  auto mode = cru::recognizer_mode_from_string(mode_name);
  if (!mode) throw cru::ConfigError("mode must be 'van' or 'sur'");
  auto reg = cru::AirlineRegistry::from_tsv(registry_path);
  cru::MatchConfig match = match_config_from(config);
  if (threshold_flag) match.threshold = *threshold_flag;
  if (digit_weight_flag) match.digit_weight = *digit_weight_flag;

  auto corpus = cru::read_corpus_jsonl(corpus_path);
  std::vector<cru::PredictionRecord> records;
  records.reserve(corpus.size());
  for (const auto& sample : corpus) {
    cru::PredictionRecord rec;
    rec.target = sample.target;
    if (*mode == cru::RecognizerMode::Van) {
      rec.prediction = cru::vanilla_recognize(sample.transcript, reg);
      rec.decision = "van";
    } else {
      auto [prediction, trace] =
          cru::recognize_with_context(sample.transcript, sample.surveillance, reg, match);
      rec.prediction = prediction;
      rec.score = trace.best_score;
      rec.decision = cru::to_string(trace.decision);
    }
    records.push_back(std::move(rec));
  }
  cru::write_predictions_jsonl(out_path, records);

  write_manifest(out_path, "recognize", 0,
                 {{"corpus", corpus_path}, {"registry", registry_path}, {"mode", mode_name}},
                 match_config_to_json(match), started);
  return 0;
}

int cmd_evaluate(const std::string& predictions_path, const std::string& out_path) {
  std::int64_t started = unix_now();
  auto records = cru::read_predictions_jsonl(predictions_path);
  if (records.empty()) throw cru::ConfigError("predictions file is empty");
  std::vector<std::optional<cru::IcaoCallsign>> predictions;
  std::vector<cru::IcaoCallsign> targets;
  std::size_t matched = 0;
  for (const auto& rec : records) {
    predictions.push_back(rec.prediction);
    targets.push_back(rec.target);
    if (rec.prediction && *rec.prediction == rec.target) ++matched;
  }
  json metrics;
  metrics["csa"] = cru::csa(predictions, targets);
  metrics["n"] = records.size();
  metrics["matched"] = matched;
  write_text(out_path, metrics.dump(2) + "\n");
  write_manifest(out_path, "evaluate", 0, {{"predictions", predictions_path}}, json::object(),
                 started);
  return 0;
}

int cmd_sweep(const std::string& corpus_path, const std::string& parameter_name,
              const std::string& values_text, const std::string& mode_name,
              const std::string& registry_path, const std::string& out_path,
              const std::string& config_path, std::optional<std::uint64_t> seed_flag,
              std::size_t jobs) {
  std::int64_t started = unix_now();
  json config = load_config(config_path);
  auto parameter = cru::sweep_parameter_from_string(parameter_name);
  if (!parameter) {
    throw cru::ConfigError("parameter must be surveillance_size, identifier_dup_fraction or "
                           "number_duplicates");
  }
  auto mode = cru::recognizer_mode_from_string(mode_name);
  if (!mode) throw cru::ConfigError("mode must be 'van' or 'sur'");
  auto reg = cru::AirlineRegistry::from_tsv(registry_path);

  std::vector<double> values;
  std::stringstream ss(values_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw cru::ConfigError("no sweep values given");

  cru::SweepConfig sweep_cfg;
  sweep_cfg.match = match_config_from(config);
  sweep_cfg.profile = cru::uniform_profile(reg);
  sweep_cfg.seed = pick_seed(seed_flag, config);
  sweep_cfg.jobs = jobs;

  auto corpus = cru::read_corpus_jsonl(corpus_path);
  cru::SweepReport report = cru::sweep(corpus, *mode, *parameter, values, reg, sweep_cfg);

  write_text(out_path, cru::sweep_report_json(report));
  write_text(out_path + ".csv", cru::sweep_report_csv(report));
  write_manifest(out_path, "sweep", sweep_cfg.seed,
                 {{"corpus", corpus_path},
                  {"registry", registry_path},
                  {"parameter", parameter_name},
                  {"values", values},
                  {"mode", mode_name}},
                 match_config_to_json(sweep_cfg.match), started);
  return 0;
}

int cmd_fetch(const std::string& fixture_path, const std::string& url, std::int64_t time,
              double lat, double lon, double radius_km, double window_s,
              const std::string& out_path) {
  std::int64_t started = unix_now();
  cru::SurveillanceQuery query{time, lat, lon, radius_km, window_s};

  std::unique_ptr<cru::StateVectorProvider> provider;
  if (!fixture_path.empty()) {
    provider = std::make_unique<cru::FileProvider>(fixture_path);
  } else {
    cru::HttpProviderOptions options;
    if (!url.empty()) options.base_url = url;
    provider = std::make_unique<cru::HttpProvider>(options);
  }
  cru::FetchResult result = cru::fetch_surveillance(query, *provider);

  json j;
  json callsigns = json::array();
  for (const auto& cs : result.snapshot.callsigns) callsigns.push_back(cs.canonical());
  j["callsigns"] = std::move(callsigns);
  j["dropped"] = result.dropped;
  write_text(out_path, j.dump(2) + "\n");
  write_manifest(out_path, "fetch", 0,
                 {{"fixture", fixture_path.empty() ? json(nullptr) : json(fixture_path)},
                  {"url", url.empty() ? json(nullptr) : json(url)}},
                 {{"time", time},
                  {"lat", lat},
                  {"lon", lon},
                  {"radius_km", radius_km},
                  {"window_s", window_s}},
                 started);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Call-sign recognition and understanding toolkit"};
  app.require_subcommand(1);

  std::string config_path, registry_path, out_path;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;

  // augment
  auto* augment = app.add_subcommand("augment", "Generate an augmented corpus");
  std::string donors_path;
  std::size_t synthetic_donors = 0, out_size = 0;
  std::optional<double> target_wer;
  augment->add_option("--donors", donors_path, "Donor corpus JSONL");
  augment->add_option("--synthetic-donors", synthetic_donors,
                      "Generate this many synthetic donors instead of --donors");
  augment->add_option("--registry", registry_path, "Airline registry TSV")->required();
  augment->add_option("--config", config_path, "JSON config file");
  augment->add_option("--out", out_path, "Output corpus JSONL")->required();
  augment->add_option("--seed", seed, "Random seed (recorded in the manifest)");
  augment->add_option("--target-wer", target_wer, "Calibrate noise to this WER (percent)");
  augment->add_option("--size", out_size, "Number of output samples (donors cycled)");
  augment->add_option("--jobs", jobs, "Worker threads");

  // recognize
  auto* recognize = app.add_subcommand("recognize", "Run call-sign recognition on a corpus");
  std::string corpus_path, mode_name = "sur";
  std::optional<double> threshold, digit_weight;
  recognize->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  recognize->add_option("--mode", mode_name, "van|sur")->required();
  recognize->add_option("--registry", registry_path, "Airline registry TSV")->required();
  recognize->add_option("--config", config_path, "JSON config file");
  recognize->add_option("--out", out_path, "Predictions JSONL")->required();
  recognize->add_option("--threshold", threshold, "Similarity threshold");
  recognize->add_option("--digit-weight", digit_weight, "Digit/NATO edit weight");
  recognize->add_option("--jobs", jobs, "Worker threads");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Compute CSA from a predictions file");
  std::string predictions_path;
  evaluate->add_option("--predictions", predictions_path, "Predictions JSONL")->required();
  evaluate->add_option("--out", out_path, "Metrics JSON")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Robustness sweep over a surveillance parameter");
  std::string parameter_name, values_text;
  sweep->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  sweep->add_option("--parameter", parameter_name,
                    "surveillance_size|identifier_dup_fraction|number_duplicates")
      ->required();
  sweep->add_option("--values", values_text, "Comma-separated parameter values")->required();
  sweep->add_option("--mode", mode_name, "van|sur")->required();
  sweep->add_option("--registry", registry_path, "Airline registry TSV")->required();
  sweep->add_option("--config", config_path, "JSON config file");
  sweep->add_option("--out", out_path, "Report JSON (a .csv sibling is written too)")
      ->required();
  sweep->add_option("--seed", seed, "Random seed");
  sweep->add_option("--jobs", jobs, "Worker threads");

  // fetch
  auto* fetch = app.add_subcommand("fetch", "Fetch surveillance call-signs");
  std::string fixture_path, url;
  std::int64_t time = 0;
  double lat = 0, lon = 0, radius_km = 100, window_s = 30;
  fetch->add_option("--fixture", fixture_path, "Offline fixture JSON");
  fetch->add_option("--url", url, "State-vector API base URL");
  fetch->add_option("--time", time, "Query timestamp (unix seconds)")->required();
  fetch->add_option("--lat", lat, "Receiver latitude")->required();
  fetch->add_option("--lon", lon, "Receiver longitude")->required();
  fetch->add_option("--radius-km", radius_km, "Search radius in km");
  fetch->add_option("--window-s", window_s, "Time window half-width in seconds");
  fetch->add_option("--out", out_path, "Snapshot JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (augment->parsed()) {
      return cmd_augment(config_path, donors_path, synthetic_donors, registry_path, out_path,
                         seed, target_wer, out_size, jobs);
    }
    if (recognize->parsed()) {
      return cmd_recognize(corpus_path, mode_name, registry_path, out_path, config_path,
                           threshold, digit_weight);
    }
    if (evaluate->parsed()) return cmd_evaluate(predictions_path, out_path);
    if (sweep->parsed()) {
      return cmd_sweep(corpus_path, parameter_name, values_text, mode_name, registry_path,
                       out_path, config_path, seed, jobs);
    }
    if (fetch->parsed()) {
      return cmd_fetch(fixture_path, url, time, lat, lon, radius_km, window_s, out_path);
    }
  } catch (const cru::ConfigError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
