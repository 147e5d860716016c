#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "splitplan/errors.hpp"
#include "splitplan/profile.hpp"

namespace splitplan {

struct ClientConfig {
  double compute_hz = 0.0;          // local processor frequency, cycles/s
  std::int64_t batch_size = 0;      // mini-batch samples per round
  double uplink_bps = 0.0;          // client -> server rate, bits/s
  double downlink_bps = 0.0;        // server -> client rate, bits/s
  double compute_intensity = 0.0;   // cycles per FLOP on the client

  bool operator==(const ClientConfig&) const = default;
};

struct ServerConfig {
  double capacity_hz = 0.0;         // total server budget, cycles/s
  double compute_intensity = 0.0;   // cycles per FLOP on the server

  bool operator==(const ServerConfig&) const = default;
};

// One planning instance: a server, N clients training the same model, and
// that model's layer profile. Immutable after construction.
struct Scenario {
  ServerConfig server;
  std::vector<ClientConfig> clients;
  LayerProfile profile;

  bool operator==(const Scenario&) const = default;

  int client_count() const { return static_cast<int>(clients.size()); }
};

inline void validate_scenario(const Scenario& s) {
  if (!(s.server.capacity_hz > 0.0)) {
    throw InvariantViolation("scenario: server.capacity_hz must be positive");
  }
  if (!(s.server.compute_intensity > 0.0)) {
    throw InvariantViolation("scenario: server.k_s must be positive");
  }
  if (s.clients.empty()) {
    throw InvariantViolation("scenario: at least one client required");
  }
  for (std::size_t n = 0; n < s.clients.size(); ++n) {
    const ClientConfig& c = s.clients[n];
    const std::string at = "scenario: clients[" + std::to_string(n) + "].";
    if (!(c.compute_hz > 0.0)) throw InvariantViolation(at + "compute_hz must be positive");
    if (c.batch_size < 1) throw InvariantViolation(at + "batch_size must be >= 1");
    if (!(c.uplink_bps > 0.0)) throw InvariantViolation(at + "uplink_bps must be positive");
    if (!(c.downlink_bps > 0.0)) throw InvariantViolation(at + "downlink_bps must be positive");
    if (!(c.compute_intensity > 0.0)) throw InvariantViolation(at + "k_c must be positive");
  }
  validate_profile(s.profile);
}

// Seeded uniform sampling with a fixed bits-to-double mapping. mt19937_64's
// output sequence is pinned by the standard and the (x >> 11) * 2^-53 map
// avoids std::uniform_real_distribution, whose stream is implementation
// defined, so a seed reproduces the same scenario on any platform.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : rng_(seed) {}

  // in [0, 1)
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  // in [lo, hi); the upper endpoint itself is never attained
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 rng_;
};

// Default parameter ranges for randomized scenarios. Units are SI decimal:
// GHz = 1e9 cycles/s, Mbps = 1e6 bits/s.
namespace scenario_defaults {
inline constexpr double client_hz_lo = 0.5e9;
inline constexpr double client_hz_hi = 1.5e9;
inline constexpr double uplink_bps_lo = 5e6;
inline constexpr double uplink_bps_hi = 30e6;
inline constexpr double downlink_mult_lo = 2.0;
inline constexpr double downlink_mult_hi = 10.0;
inline constexpr std::int64_t batch_size = 64;
inline constexpr double k_server = 1.0 / 32.0;  // cycles/FLOP
inline constexpr double k_client = 1.0 / 16.0;  // cycles/FLOP
}  // namespace scenario_defaults

// Draws a random scenario: f_n ~ U[0.5, 1.5] GHz, uplink ~ U[5, 30] Mbps,
// downlink = U[2, 10] x uplink (multiplier independent per client), batch
// size and computing intensities fixed at the defaults above.
//
// Clients are drawn in index order with a fixed number of draws each, so for
// one seed the first n clients are identical for every n_clients >= n
// (prefix-stable pools), and the client set does not depend on
// server_capacity_hz.
inline Scenario sample_scenario(int n_clients, double server_capacity_hz,
                                const LayerProfile& profile, std::uint64_t seed) {
  namespace d = scenario_defaults;
  if (n_clients < 1) {
    throw ValidationError("sample_scenario: n_clients must be >= 1");
  }
  if (!(server_capacity_hz > 0.0)) {
    throw ValidationError("sample_scenario: server capacity must be positive");
  }
  validate_profile(profile);

  UniformSampler u(seed);
  Scenario s;
  s.server = {server_capacity_hz, d::k_server};
  s.profile = profile;
  s.clients.reserve(static_cast<std::size_t>(n_clients));
  for (int n = 0; n < n_clients; ++n) {
    ClientConfig c;
    c.compute_hz = u.in(d::client_hz_lo, d::client_hz_hi);
    c.uplink_bps = u.in(d::uplink_bps_lo, d::uplink_bps_hi);
    c.downlink_bps = u.in(d::downlink_mult_lo, d::downlink_mult_hi) * c.uplink_bps;
    c.batch_size = d::batch_size;
    c.compute_intensity = d::k_client;
    s.clients.push_back(c);
  }
  return s;
}

// First n clients of `s`, same server and profile. Used by the client-count
// sweep so successive points share a nested client pool.
inline Scenario prefix_scenario(const Scenario& s, int n_clients) {
  if (n_clients < 1 || n_clients > s.client_count()) {
    throw ValidationError("prefix_scenario: n_clients out of range");
  }
  Scenario out;
  out.server = s.server;
  out.profile = s.profile;
  out.clients.assign(s.clients.begin(), s.clients.begin() + n_clients);
  return out;
}

}  // namespace splitplan
