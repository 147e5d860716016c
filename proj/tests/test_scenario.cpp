#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "splitplan/io.hpp"
#include "splitplan/profile.hpp"
#include "splitplan/scenario.hpp"

using namespace splitplan;

namespace {

LayerProfile toy_profile() {
  return build_profile({100, 200, 300, 400}, {200, 400, 600, 800},
                       {8000, 4000, 2000, 1000});
}

}  // namespace

TEST_CASE("sample_scenario stays inside its parameter ranges") {
  const LayerProfile p = toy_profile();
  namespace d = scenario_defaults;

  // bounds over many draws, spread across seeds
  int clients_seen = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Scenario s = sample_scenario(64, 50e9, p, seed);
    REQUIRE(s.client_count() == 64);
    for (const ClientConfig& c : s.clients) {
      ++clients_seen;
      CHECK(c.compute_hz >= d::client_hz_lo);
      CHECK(c.compute_hz < d::client_hz_hi);
      CHECK(c.uplink_bps >= d::uplink_bps_lo);
      CHECK(c.uplink_bps < d::uplink_bps_hi);
      CHECK(c.downlink_bps >= d::downlink_mult_lo * c.uplink_bps);
      CHECK(c.downlink_bps < d::downlink_mult_hi * c.uplink_bps);
      CHECK(c.batch_size == d::batch_size);
      CHECK(c.compute_intensity == d::k_client);
    }
    CHECK(s.server.capacity_hz == 50e9);
    CHECK(s.server.compute_intensity == d::k_server);
  }
  CHECK(clients_seen == 200 * 64);
}

TEST_CASE("sample_scenario is deterministic and prefix-stable") {
  const LayerProfile p = toy_profile();
  const Scenario a = sample_scenario(5, 50e9, p, 42);
  const Scenario b = sample_scenario(5, 50e9, p, 42);
  CHECK(a == b);

  // same seed, different capacity: identical clients
  const Scenario c = sample_scenario(5, 10e9, p, 42);
  CHECK(c.clients == a.clients);

  // a smaller draw is a prefix of a bigger one
  const Scenario big = sample_scenario(12, 50e9, p, 42);
  for (int n = 0; n < 5; ++n) {
    CHECK(big.clients[n] == a.clients[n]);
  }
  CHECK(prefix_scenario(big, 5).clients == a.clients);

  const Scenario other_seed = sample_scenario(5, 50e9, p, 43);
  CHECK(other_seed.clients != a.clients);
}

TEST_CASE("sample_scenario handles edge arguments") {
  const LayerProfile p = toy_profile();
  const Scenario single = sample_scenario(1, 10e9, p, 0);
  CHECK(single.client_count() == 1);
  CHECK_NOTHROW(validate_scenario(single));

  CHECK_THROWS_AS(sample_scenario(0, 10e9, p, 0), ValidationError);
  CHECK_THROWS_AS(sample_scenario(3, 0.0, p, 0), ValidationError);
}

TEST_CASE("scenario save/load round-trips bit-exactly") {
  const auto path = std::filesystem::temp_directory_path() / "splitplan_scenario_rt.json";
  const Scenario s = sample_scenario(7, 31.5e9, toy_profile(), 1234);
  save_scenario(s, path);
  const Scenario loaded = load_scenario(path);
  CHECK(loaded == s);  // field-wise equality, doubles compared exactly
  std::filesystem::remove(path);
}

TEST_CASE("scenario loader validates content") {
  const auto path = std::filesystem::temp_directory_path() / "splitplan_scenario_bad.json";

  SECTION("zero clients") {
    std::ofstream(path) << R"({"server": {"capacity_hz": 1e9, "k_s": 0.03125},
      "clients": [],
      "profile": {"layers": 2, "fp_flops": [1, 1], "bp_flops": [2, 2],
                  "activation_bits": [8, 8]}})";
    CHECK_THROWS_AS(load_scenario(path), InvariantViolation);
  }
  SECTION("negative uplink") {
    std::ofstream(path) << R"({"server": {"capacity_hz": 1e9, "k_s": 0.03125},
      "clients": [{"compute_hz": 1e9, "batch_size": 64, "uplink_bps": -5,
                   "downlink_bps": 1e7, "k_c": 0.0625}],
      "profile": {"layers": 2, "fp_flops": [1, 1], "bp_flops": [2, 2],
                  "activation_bits": [8, 8]}})";
    CHECK_THROWS_AS(load_scenario(path), InvariantViolation);
    CHECK_THROWS_WITH(load_scenario(path),
                      Catch::Matchers::ContainsSubstring("uplink_bps"));
  }
  SECTION("missing server field") {
    std::ofstream(path) << R"({"server": {"capacity_hz": 1e9},
      "clients": [{"compute_hz": 1e9, "batch_size": 64, "uplink_bps": 1e7,
                   "downlink_bps": 1e7, "k_c": 0.0625}],
      "profile": {"layers": 2, "fp_flops": [1, 1], "bp_flops": [2, 2],
                  "activation_bits": [8, 8]}})";
    CHECK_THROWS_WITH(load_scenario(path), Catch::Matchers::ContainsSubstring("k_s"));
  }
  SECTION("no profile at all") {
    std::ofstream(path) << R"({"server": {"capacity_hz": 1e9, "k_s": 0.03125},
      "clients": [{"compute_hz": 1e9, "batch_size": 64, "uplink_bps": 1e7,
                   "downlink_bps": 1e7, "k_c": 0.0625}]})";
    CHECK_THROWS_AS(load_scenario(path), ParseError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("scenario can reference a profile by path") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto profile_path = dir / "splitplan_ref_profile.json";
  const auto scenario_path = dir / "splitplan_ref_scenario.json";
  save_profile(toy_profile(), profile_path);
  std::ofstream(scenario_path) << R"({"server": {"capacity_hz": 1e9, "k_s": 0.03125},
    "clients": [{"compute_hz": 1e9, "batch_size": 64, "uplink_bps": 1e7,
                 "downlink_bps": 1e7, "k_c": 0.0625}],
    "profile_path": "splitplan_ref_profile.json"})";
  const Scenario s = load_scenario(scenario_path);
  CHECK(s.profile == toy_profile());
  std::filesystem::remove(profile_path);
  std::filesystem::remove(scenario_path);
}
