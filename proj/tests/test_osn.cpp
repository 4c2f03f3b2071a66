#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>

#include <httplib.h>

#include "cru/errors.hpp"
#include "cru/osn.hpp"

using namespace cru;

namespace {

std::string write_fixture(const std::string& name, const std::string& body) {
  std::string path = std::string("osn_fixture_") + name + ".json";
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kFixture = R"({
  "time": 1700000000,
  "states": [
    {"callsign": "DLH83K  ", "lat": 47.45, "lon": 8.55},
    {"callsign": "RYR853K", "lat": 47.40, "lon": 8.60},
    {"callsign": "N123AB", "lat": 47.50, "lon": 8.50},
    {"callsign": "AFR34", "lat": 10.0, "lon": 10.0},
    {"callsign": "DLH83K", "lat": 47.46, "lon": 8.56}
  ]
})";

SurveillanceQuery zurich_query() {
  SurveillanceQuery q;
  q.timestamp = 1700000000;
  q.lat = 47.45;
  q.lon = 8.55;
  q.radius_km = 100;
  q.window_s = 30;
  return q;
}

}  // namespace

TEST_CASE("query validation") {
  SurveillanceQuery q = zurich_query();
  q.validate();
  q.lat = 95.0;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q = zurich_query();
  q.radius_km = -1;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("bounding_box flat-earth conversion") {
  SurveillanceQuery q = zurich_query();
  q.radius_km = 111.0;  // one degree of latitude
  BoundingBox box = bounding_box(q);
  CHECK(box.lat_max - box.lat_min == doctest::Approx(2.0).epsilon(0.01));
  // longitude degrees are wider at this latitude
  CHECK(box.lon_max - box.lon_min > 2.0);
  CHECK((box.lat_min + box.lat_max) / 2 == doctest::Approx(q.lat));
}

TEST_CASE("file provider + fetch_surveillance filters and dedupes") {
  std::string path = write_fixture("basic", kFixture);
  FileProvider provider(path);
  auto result = fetch_surveillance(zurich_query(), provider);
  std::remove(path.c_str());

  // AFR34 is outside the box; N123AB fails the grammar; DLH83K deduplicated
  REQUIRE(result.snapshot.callsigns.size() == 2);
  CHECK(result.dropped == 1);
  bool dlh = false, ryr = false;
  for (const auto& cs : result.snapshot.callsigns) {
    if (cs == parse_icao("DLH83K")) dlh = true;
    if (cs == parse_icao("RYR853K")) ryr = true;
  }
  CHECK(dlh);
  CHECK(ryr);
}

TEST_CASE("file provider empty time window") {
  std::string path = write_fixture("window", kFixture);
  FileProvider provider(path);
  SurveillanceQuery q = zurich_query();
  q.timestamp = 1700009999;  // fixture time is outside +-30 s
  auto result = fetch_surveillance(q, provider);
  std::remove(path.c_str());
  CHECK(result.snapshot.callsigns.empty());
}

TEST_CASE("file provider is deterministic") {
  std::string path = write_fixture("det", kFixture);
  FileProvider provider(path);
  auto a = fetch_surveillance(zurich_query(), provider);
  auto b = fetch_surveillance(zurich_query(), provider);
  std::remove(path.c_str());
  CHECK(a.snapshot.callsigns == b.snapshot.callsigns);
  CHECK(a.dropped == b.dropped);
}

TEST_CASE("every fetched call-sign satisfies the grammar") {
  std::string path = write_fixture("grammar", kFixture);
  FileProvider provider(path);
  auto result = fetch_surveillance(zurich_query(), provider);
  std::remove(path.c_str());
  for (const auto& cs : result.snapshot.callsigns) {
    CHECK(valid_designator(cs.designator));
    CHECK(valid_callsign_number(cs.number));
  }
}

TEST_CASE("retry policy respects the attempt cap") {
  class FlakyProvider : public StateVectorProvider {
   public:
    int calls = 0;
    std::vector<RawState> states(const SurveillanceQuery&) override {
      ++calls;
      throw ProviderUnavailable("down");
    }
  };
  FlakyProvider provider;
  CHECK_THROWS_AS(fetch_surveillance(zurich_query(), provider), ProviderUnavailable);
  CHECK(provider.calls == 1);  // retries live in HttpProvider, not the fetch layer
}

TEST_CASE("http provider against a local server") {
  httplib::Server server;
  std::atomic<int> hits{0};

  server.Get("/api/states/all", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    CHECK(req.has_param("time"));
    CHECK(req.has_param("lamin"));
    CHECK(req.has_param("lamax"));
    CHECK(req.has_param("lomin"));
    CHECK(req.has_param("lomax"));
    // OpenSky array layout: callsign at 1, lon at 5, lat at 6
    res.set_content(R"({"time": 1700000000, "states": [
        ["abc123", "DLH83K  ", "D", 1699999990, 1700000000, 8.55, 47.45, 10000.0],
        ["def456", null, "D", 1699999990, 1700000000, 8.56, 47.46, 9000.0],
        ["ghi789", "RYR853K", "D", 1699999990, 1700000000, 8.60, 47.40, 8000.0]
      ]})",
                    "application/json");
  });
  server.Get("/quota/api/states/all", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 429;
    res.set_content("slow down", "text/plain");
  });
  server.Get("/bad/api/states/all", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("not json at all", "text/plain");
  });
  server.Get("/flaky/api/states/all", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
  });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  SurveillanceQuery q = zurich_query();

  SUBCASE("happy path") {
    HttpProviderOptions opt;
    opt.base_url = "http://127.0.0.1:" + std::to_string(port);
    opt.rate_per_second = 1000;
    HttpProvider provider(opt);
    auto result = fetch_surveillance(q, provider);
    REQUIRE(result.snapshot.callsigns.size() == 2);
    CHECK(result.snapshot.callsigns[0] == parse_icao("DLH83K"));
  }

  SUBCASE("HTTP 429 raises QuotaExceeded immediately") {
    HttpProviderOptions opt;
    opt.base_url = "http://127.0.0.1:" + std::to_string(port);
    opt.path = "/quota/api/states/all";
    opt.rate_per_second = 1000;
    HttpProvider provider(opt);
    CHECK_THROWS_AS(provider.states(q), QuotaExceeded);
  }

  SUBCASE("malformed body raises MalformedResponse") {
    HttpProviderOptions opt;
    opt.base_url = "http://127.0.0.1:" + std::to_string(port);
    opt.path = "/bad/api/states/all";
    opt.rate_per_second = 1000;
    HttpProvider provider(opt);
    CHECK_THROWS_AS(provider.states(q), MalformedResponse);
  }

  SUBCASE("5xx retries up to the attempt cap then gives up") {
    HttpProviderOptions opt;
    opt.base_url = "http://127.0.0.1:" + std::to_string(port);
    opt.path = "/flaky/api/states/all";
    opt.max_attempts = 3;
    opt.backoff_ms = 1;
    opt.rate_per_second = 1000;
    HttpProvider provider(opt);
    hits = 0;
    CHECK_THROWS_AS(provider.states(q), ProviderUnavailable);
    CHECK(hits == 3);
  }

  server.stop();
  worker.join();
}
