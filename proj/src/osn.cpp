#include "cru/osn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cru/errors.hpp"

namespace cru {

namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// Process-global token bucket shared by all HTTP providers.
class TokenBucket {
 public:
  void acquire(double rate_per_second) {
    std::unique_lock<std::mutex> lock(mutex_);
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_per_second);
    last_ = now;
    if (tokens_ < 1.0) {
      double wait_s = (1.0 - tokens_) / rate_per_second;
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
      lock.lock();
      tokens_ = 1.0;
      last_ = std::chrono::steady_clock::now();
    }
    tokens_ -= 1.0;
  }

 private:
  std::mutex mutex_;
  double tokens_ = 4.0;
  double burst_ = 4.0;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

TokenBucket& global_bucket() {
  static TokenBucket bucket;
  return bucket;
}

}  // namespace

void SurveillanceQuery::validate() const {
  if (lat < -90.0 || lat > 90.0) throw ConfigError("latitude out of [-90,90]");
  if (lon < -180.0 || lon > 180.0) throw ConfigError("longitude out of [-180,180]");
  if (radius_km <= 0.0) throw ConfigError("radius_km must be positive");
  if (window_s < 0.0) throw ConfigError("window_s must be non-negative");
}

BoundingBox bounding_box(const SurveillanceQuery& q) {
  constexpr double kKmPerDegree = 111.0;
  double dlat = q.radius_km / kKmPerDegree;
  double cos_lat = std::max(std::cos(q.lat * M_PI / 180.0), 1e-6);
  double dlon = q.radius_km / (kKmPerDegree * cos_lat);
  return {std::clamp(q.lat - dlat, -90.0, 90.0), std::clamp(q.lat + dlat, -90.0, 90.0),
          std::clamp(q.lon - dlon, -180.0, 180.0), std::clamp(q.lon + dlon, -180.0, 180.0)};
}

FileProvider::FileProvider(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open surveillance fixture: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("states")) {
    throw MalformedResponse("fixture is not a {time, states} object: " + path);
  }
  time_ = j.value("time", std::int64_t{0});
  for (const auto& s : j["states"]) {
    RawState state;
    if (s.contains("callsign") && s["callsign"].is_string()) {
      state.callsign = s["callsign"].get<std::string>();
    }
    if (s.contains("lat") && s["lat"].is_number()) state.lat = s["lat"].get<double>();
    if (s.contains("lon") && s["lon"].is_number()) state.lon = s["lon"].get<double>();
    state.time = time_;
    states_.push_back(std::move(state));
  }
}

std::vector<RawState> FileProvider::states(const SurveillanceQuery&) { return states_; }

HttpProvider::HttpProvider(HttpProviderOptions options) : options_(std::move(options)) {}

std::vector<RawState> HttpProvider::states(const SurveillanceQuery& q) {
  BoundingBox box = bounding_box(q);
  httplib::Params params{
      {"time", std::to_string(q.timestamp)},
      {"lamin", std::to_string(box.lat_min)},
      {"lamax", std::to_string(box.lat_max)},
      {"lomin", std::to_string(box.lon_min)},
      {"lomax", std::to_string(box.lon_max)},
  };

  httplib::Headers headers;
  if (const char* token = std::getenv("OSN_TOKEN")) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options_.backoff_ms << (attempt - 1)));
    }
    global_bucket().acquire(options_.rate_per_second);

    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_s);
    client.set_read_timeout(options_.timeout_s);
    const char* user = std::getenv("OSN_USERNAME");
    const char* pass = std::getenv("OSN_PASSWORD");
    if (user && pass) client.set_basic_auth(user, pass);

    auto res = client.Get(options_.path, params, headers);
    if (!res) {
      last_error = "connection failed";
      continue;
    }
    if (res->status == 429) throw QuotaExceeded("state-vector API quota exceeded (HTTP 429)");
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderUnavailable("state-vector API returned HTTP " +
                                std::to_string(res->status));
    }

    json j = json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("states")) {
      throw MalformedResponse("state-vector response is not a {time, states} object");
    }
    std::vector<RawState> out;
    std::int64_t time = j.value("time", q.timestamp);
    if (j["states"].is_null()) return out;
    for (const auto& vec : j["states"]) {
      // Public state-vector layout: callsign at index 1, lon at 5, lat at 6.
      if (!vec.is_array() || vec.size() < 2) continue;
      RawState state;
      if (vec[1].is_string()) state.callsign = vec[1].get<std::string>();
      if (vec.size() > 5 && vec[5].is_number()) state.lon = vec[5].get<double>();
      if (vec.size() > 6 && vec[6].is_number()) state.lat = vec[6].get<double>();
      state.time = time;
      out.push_back(std::move(state));
    }
    return out;
  }
  throw ProviderUnavailable("state-vector API unreachable after " +
                            std::to_string(options_.max_attempts) +
                            " attempts: " + last_error);
}

FetchResult fetch_surveillance(const SurveillanceQuery& q, StateVectorProvider& provider) {
  q.validate();
  BoundingBox box = bounding_box(q);
  FetchResult result;

  std::vector<IcaoCallsign> kept;
  for (const RawState& state : provider.states(q)) {
    if (state.time &&
        std::llabs(*state.time - q.timestamp) > static_cast<std::int64_t>(q.window_s)) {
      continue;
    }
    if (state.lat && (*state.lat < box.lat_min || *state.lat > box.lat_max)) continue;
    if (state.lon && (*state.lon < box.lon_min || *state.lon > box.lon_max)) continue;
    std::string text = trim(state.callsign);
    if (text.empty()) continue;
    auto cs = try_parse_icao(text);
    if (!cs) {
      ++result.dropped;
      continue;
    }
    kept.push_back(std::move(*cs));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  result.snapshot.callsigns = std::move(kept);
  return result;
}

}  // namespace cru
