#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "splitplan/io.hpp"
#include "splitplan/parallel.hpp"
#include "splitplan/planner.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

// One grid point of a sweep: x is the swept quantity (server capacity in Hz,
// or client count), the three latencies compare the optimizing planner
// against the two even-allocation baselines.
struct SweepRow {
  double x = 0.0;
  double lscra_s = 0.0;
  double bench_a_s = 0.0;
  double bench_b_s = 0.0;
};

namespace detail {

struct PointLatencies {
  double lscra = 0.0, bench_a = 0.0, bench_b = 0.0;
};

inline PointLatencies evaluate_point(const Scenario& s) {
  const PlanResult plan = solve_lscra(s);
  return {plan.round_latency, benchmark_even_optimal(s, plan).round_latency,
          benchmark_even_suboptimal(s, plan).round_latency};
}

}  // namespace detail

// Round latency versus server capacity for a fixed client population: one
// seeded pool per trial, capacity varying across the grid (the sampler's
// draws do not depend on capacity, so every grid point sees the same
// clients). With trials > 1 each row reports the mean over trial seeds
// seed, seed+1, ...
inline std::vector<SweepRow> sweep_capacity(int n_clients, double fs_min_hz,
                                            double fs_max_hz, int steps,
                                            std::uint64_t seed, const LayerProfile& profile,
                                            int trials = 1, int threads = 1) {
  if (steps < 1) throw ValidationError("sweep_capacity: steps must be >= 1");
  if (trials < 1) throw ValidationError("sweep_capacity: trials must be >= 1");
  if (!(fs_min_hz > 0.0) || fs_max_hz < fs_min_hz) {
    throw ValidationError("sweep_capacity: need 0 < fs_min <= fs_max");
  }

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double fs = steps == 1 ? fs_min_hz
                                 : fs_min_hz + (fs_max_hz - fs_min_hz) * i / (steps - 1);
    if (grid.empty() || grid.back() != fs) grid.push_back(fs);  // degenerate ranges
  }

  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    SweepRow row;
    row.x = grid[i];
    for (int t = 0; t < trials; ++t) {
      const Scenario s = sample_scenario(n_clients, grid[i], profile, seed + t);
      const detail::PointLatencies p = detail::evaluate_point(s);
      row.lscra_s += p.lscra;
      row.bench_a_s += p.bench_a;
      row.bench_b_s += p.bench_b;
    }
    row.lscra_s /= trials;
    row.bench_a_s /= trials;
    row.bench_b_s /= trials;
    rows[i] = row;
  });
  return rows;
}

// Round latency versus client count at fixed capacity. Each trial samples
// one pool of n_max clients; grid points use its prefixes, so a larger point
// contains exactly the clients of a smaller one plus new arrivals.
inline std::vector<SweepRow> sweep_clients(int n_min, int n_max, int steps, double fs_hz,
                                           std::uint64_t seed, const LayerProfile& profile,
                                           int trials = 1, int threads = 1) {
  if (steps < 1) throw ValidationError("sweep_clients: steps must be >= 1");
  if (trials < 1) throw ValidationError("sweep_clients: trials must be >= 1");
  if (n_min < 1 || n_max < n_min) {
    throw ValidationError("sweep_clients: need 1 <= n_min <= n_max");
  }

  std::vector<int> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const int n = steps == 1
                      ? n_min
                      : n_min + static_cast<int>(std::lround(
                                    static_cast<double>(n_max - n_min) * i / (steps - 1)));
    if (grid.empty() || grid.back() != n) grid.push_back(n);  // rounding collisions
  }

  std::vector<Scenario> pools;
  pools.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    pools.push_back(sample_scenario(n_max, fs_hz, profile, seed + t));
  }

  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    SweepRow row;
    row.x = grid[i];
    for (const Scenario& pool : pools) {
      const detail::PointLatencies p =
          detail::evaluate_point(prefix_scenario(pool, grid[i]));
      row.lscra_s += p.lscra;
      row.bench_a_s += p.bench_a;
      row.bench_b_s += p.bench_b;
    }
    row.lscra_s /= trials;
    row.bench_a_s /= trials;
    row.bench_b_s /= trials;
    rows[i] = row;
  });
  return rows;
}

// CSV rendering with a mandatory header row. x_is_count switches the first
// column between integer (client counts) and full-precision float (Hz).
inline std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& x_header,
                             bool x_is_count) {
  std::string out = x_header + ",lscra_s,bench_a_s,bench_b_s\n";
  for (const SweepRow& r : rows) {
    out += x_is_count ? std::to_string(static_cast<long long>(r.x)) : csv_double(r.x);
    out += ',';
    out += csv_double(r.lscra_s);
    out += ',';
    out += csv_double(r.bench_a_s);
    out += ',';
    out += csv_double(r.bench_b_s);
    out += '\n';
  }
  return out;
}

}  // namespace splitplan
