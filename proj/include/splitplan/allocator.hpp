#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "splitplan/errors.hpp"
#include "splitplan/latency.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

// Server-share assignment for fixed cuts, plus the latencies it induces.
struct Allocation {
  std::vector<double> shares;            // f_{s,n}, cycles/s; >= 0, sum <= capacity
  std::vector<double> client_latencies;  // per-client round latency, seconds
  double round_latency = 0.0;            // max of client_latencies
  int anchor_index = 0;                  // argmax local latency (lowest index on ties)
  int bisection_iterations = 0;          // 0 when no root-finding was needed
};

// Count of allocate_optimal invocations, for instrumentation in tests.
inline std::atomic<std::uint64_t>& allocation_call_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

// Left side of the budget balance equation minus the budget:
//
//   residual(f_sk) = sum_n  eps_n * f_sk / (eps_k + f_sk * (tl_k - tl_n))  -  F_s
//
// where k is the anchor client (maximum local latency tl_k, so every
// denominator is >= eps_k > 0 for f_sk >= 0). Each summand is the share
// client n must receive for its round latency to equal the anchor's, so the
// root of the residual is the anchor share that makes equalized latencies
// spend exactly the budget. Every summand increases strictly with f_sk,
// which is what makes bisection applicable.
inline double balance_residual(double f_sk, std::span<const double> eps,
                               std::span<const double> t_local, std::size_t k,
                               double capacity_hz) {
  double total = 0.0;
  for (std::size_t n = 0; n < eps.size(); ++n) {
    total += eps[n] * f_sk / (eps[k] + f_sk * (t_local[k] - t_local[n]));
  }
  return total - capacity_hz;
}

namespace detail {

struct DecomposedScenario {
  std::vector<double> eps;
  std::vector<double> t_local;
  std::size_t anchor = 0;
};

inline DecomposedScenario decompose_all(const Scenario& s, const CutPair& cuts) {
  const SplitWorkloads w = split_workloads(s.profile, cuts);
  DecomposedScenario d;
  d.eps.reserve(s.clients.size());
  d.t_local.reserve(s.clients.size());
  for (const ClientConfig& c : s.clients) {
    const ClientDecomposition cd = decompose(w, c, s.server.compute_intensity);
    d.eps.push_back(cd.epsilon);
    d.t_local.push_back(cd.local_latency);
  }
  d.anchor = static_cast<std::size_t>(
      std::max_element(d.t_local.begin(), d.t_local.end()) - d.t_local.begin());
  return d;
}

// Full-model latencies at the given shares; also used to cross-check that an
// allocation reproduces its claimed round latency through the step formulas.
inline void fill_latencies(const Scenario& s, const CutPair& cuts, Allocation& a) {
  const SplitWorkloads w = split_workloads(s.profile, cuts);
  a.client_latencies.resize(s.clients.size());
  double worst = 0.0;
  for (std::size_t n = 0; n < s.clients.size(); ++n) {
    const StepLatencies steps =
        client_step_latencies(w, s.clients[n], s.server.compute_intensity, a.shares[n]);
    a.client_latencies[n] = steps.total();
    worst = std::max(worst, a.client_latencies[n]);
  }
  a.round_latency = worst;
}

}  // namespace detail

// Minimizes the round makespan over server shares for fixed cuts.
//
// With a non-empty body every client needs server cycles, the optimum uses
// the whole budget and equalizes all client latencies; the share of the
// anchor client (the one with the largest local latency, which keeps all
// other shares nonnegative) is the unique root of balance_residual in
// (0, capacity], found by bisection, and the remaining shares follow in
// closed form. With an empty body (a == b) no server work exists, shares are
// zero and the makespan is just the largest local latency.
//
// Bisection stops once |residual| <= 1e-9 * capacity, which is the budget
// tolerance the result is specified to meet; the bracket-width floor and the
// 200-iteration cap are safety nets (a double bracket collapses far sooner).
inline Allocation allocate_optimal(const Scenario& s, const CutPair& cuts) {
  allocation_call_count().fetch_add(1, std::memory_order_relaxed);
  if (s.clients.empty()) throw EmptyScenario("allocate_optimal: no clients");
  validate_cuts(cuts, s.profile);

  const double capacity = s.server.capacity_hz;
  const detail::DecomposedScenario d = detail::decompose_all(s, cuts);
  const std::size_t n_clients = s.clients.size();
  const std::size_t k = d.anchor;

  Allocation a;
  a.anchor_index = static_cast<int>(k);
  a.shares.assign(n_clients, 0.0);

  const bool has_body = cuts.first_cut != cuts.second_cut;
  if (!has_body) {
    detail::fill_latencies(s, cuts, a);
    return a;
  }
  if (n_clients == 1) {
    a.shares[0] = capacity;
    detail::fill_latencies(s, cuts, a);
    return a;
  }

  const double resid_tol = 1e-9 * capacity;
  const double width_floor = 1e-15 * capacity;
  double lo = 0.0, hi = capacity;
  double f_sk = capacity;  // residual(capacity) >= 0, so the root is bracketed
  int iter = 0;
  for (;; ++iter) {
    if (iter >= 200) {
      throw InternalError("allocate_optimal: bisection failed to converge in 200 iterations");
    }
    f_sk = 0.5 * (lo + hi);
    const double r = balance_residual(f_sk, d.eps, d.t_local, k, capacity);
    if (std::abs(r) <= resid_tol) break;
    (r > 0.0 ? hi : lo) = f_sk;
    if (hi - lo <= width_floor) {
      f_sk = 0.5 * (lo + hi);
      break;
    }
  }
  a.bisection_iterations = iter + 1;

  for (std::size_t n = 0; n < n_clients; ++n) {
    a.shares[n] = d.eps[n] * f_sk / (d.eps[k] + f_sk * (d.t_local[k] - d.t_local[n]));
  }
  detail::fill_latencies(s, cuts, a);
  return a;
}

// Baseline: every client gets capacity / N regardless of its demand.
inline Allocation allocate_even(const Scenario& s, const CutPair& cuts) {
  if (s.clients.empty()) throw EmptyScenario("allocate_even: no clients");
  validate_cuts(cuts, s.profile);
  const detail::DecomposedScenario d = detail::decompose_all(s, cuts);
  Allocation a;
  a.anchor_index = static_cast<int>(d.anchor);
  a.shares.assign(s.clients.size(),
                  s.server.capacity_hz / static_cast<double>(s.clients.size()));
  detail::fill_latencies(s, cuts, a);
  return a;
}

// Brute-force reference minimizer for small instances: exhaustively scans the
// simplex { shares >= 0, sum = capacity } on a grid of the given resolution,
// then polishes the best grid point with pairwise budget transfers of
// geometrically shrinking step. Only meant to cross-check allocate_optimal
// in tests; combinatorial in the client count, hence the N <= 4 limit.
inline Allocation oracle_grid_allocate(const Scenario& s, const CutPair& cuts,
                                       int resolution) {
  if (s.clients.empty()) throw EmptyScenario("oracle_grid_allocate: no clients");
  if (s.clients.size() > 4) {
    throw TooManyClientsForOracle("oracle_grid_allocate: grid search supports at most "
                                  "4 clients, got " + std::to_string(s.clients.size()));
  }
  if (resolution < 100) {
    throw ValidationError("oracle_grid_allocate: resolution must be >= 100");
  }
  validate_cuts(cuts, s.profile);

  const double capacity = s.server.capacity_hz;
  const detail::DecomposedScenario d = detail::decompose_all(s, cuts);
  const std::size_t n_clients = s.clients.size();

  if (n_clients == 1) {
    Allocation a;
    a.shares = {capacity};
    detail::fill_latencies(s, cuts, a);
    return a;
  }

  const auto makespan = [&](const std::vector<double>& shares) {
    double worst = 0.0;
    for (std::size_t n = 0; n < n_clients; ++n) {
      double t = d.t_local[n];
      if (d.eps[n] > 0.0) {
        t = shares[n] > 0.0 ? t + d.eps[n] / shares[n]
                            : std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, t);
    }
    return worst;
  };

  // Exhaustive pass over compositions of `resolution` cells into N shares.
  const double cell = capacity / static_cast<double>(resolution);
  std::vector<double> best(n_clients, 0.0);
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> trial(n_clients, 0.0);
  std::vector<int> counts(n_clients, 0);
  const auto evaluate_leaf = [&](int remaining) {
    counts[n_clients - 1] = remaining;
    for (std::size_t n = 0; n < n_clients; ++n) trial[n] = cell * counts[n];
    const double v = makespan(trial);
    if (v < best_value) {
      best_value = v;
      best = trial;
    }
  };
  const auto enumerate = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos == n_clients - 1) {
      evaluate_leaf(remaining);
      return;
    }
    for (int i = 0; i <= remaining; ++i) {
      counts[pos] = i;
      self(self, pos + 1, remaining - i);
    }
  };
  enumerate(enumerate, 0, resolution);

  // Local refinement: move budget between pairs while it helps, halving the
  // step until it is negligible relative to the grid cell.
  double step = cell;
  while (step > 1e-13 * capacity) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t p = 0; p < n_clients; ++p) {
        for (std::size_t q = 0; q < n_clients; ++q) {
          if (p == q || best[p] < step) continue;
          trial = best;
          trial[p] -= step;
          trial[q] += step;
          const double v = makespan(trial);
          if (v < best_value) {
            best_value = v;
            best = trial;
            improved = true;
          }
        }
      }
    }
    step *= 0.5;
  }

  Allocation a;
  a.anchor_index = static_cast<int>(d.anchor);
  a.shares = std::move(best);
  detail::fill_latencies(s, cuts, a);
  return a;
}

}  // namespace splitplan
