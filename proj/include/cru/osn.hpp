#ifndef CRU_OSN_HPP
#define CRU_OSN_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cru/callsign.hpp"
#include "cru/matcher.hpp"

namespace cru {

struct SurveillanceQuery {
  std::int64_t timestamp = 0;  // seconds since epoch
  double lat = 0.0;
  double lon = 0.0;
  double radius_km = 100.0;
  double window_s = 30.0;  // half-width of the time window

  void validate() const;  // throws ConfigError
};

struct BoundingBox {
  double lat_min, lat_max, lon_min, lon_max;
};

// Flat-earth radius->box conversion at the query latitude; adequate at ATC
// ranges.
BoundingBox bounding_box(const SurveillanceQuery& q);

struct RawState {
  std::string callsign;  // as broadcast, possibly padded
  std::optional<double> lat;
  std::optional<double> lon;
  std::optional<std::int64_t> time;
};

// State-vector source: HTTP API or a local fixture file.
class StateVectorProvider {
 public:
  virtual ~StateVectorProvider() = default;
  virtual std::vector<RawState> states(const SurveillanceQuery& q) = 0;
};

// Offline provider backed by a JSON fixture:
// {"time": int, "states": [{"callsign": str, "lat": float, "lon": float}]}
class FileProvider : public StateVectorProvider {
 public:
  explicit FileProvider(const std::string& path);
  std::vector<RawState> states(const SurveillanceQuery& q) override;

 private:
  std::int64_t time_ = 0;
  std::vector<RawState> states_;
};

struct HttpProviderOptions {
  std::string base_url = "https://opensky-network.org";
  std::string path = "/api/states/all";
  int max_attempts = 3;
  int backoff_ms = 200;        // doubled per retry
  double rate_per_second = 4;  // process-global token bucket
  int timeout_s = 10;
};

// OpenSky-style states endpoint. Credentials come from OSN_USERNAME /
// OSN_PASSWORD (basic auth) or OSN_TOKEN (bearer) and are never logged.
// Retryable failures raise ProviderUnavailable after the attempt cap; HTTP
// 429 raises QuotaExceeded immediately.
class HttpProvider : public StateVectorProvider {
 public:
  explicit HttpProvider(HttpProviderOptions options = {});
  std::vector<RawState> states(const SurveillanceQuery& q) override;

 private:
  HttpProviderOptions options_;
};

struct FetchResult {
  SurveillanceSnapshot snapshot;
  std::size_t dropped = 0;  // states whose call-sign failed the ICAO grammar
};

// Call-signs of all state vectors inside the query's bounding box and time
// window: trimmed, uppercased, filtered through the ICAO grammar,
// deduplicated.
FetchResult fetch_surveillance(const SurveillanceQuery& q, StateVectorProvider& provider);

}  // namespace cru

#endif  // CRU_OSN_HPP
