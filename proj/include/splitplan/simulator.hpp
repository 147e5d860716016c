#pragma once

#include <algorithm>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "splitplan/errors.hpp"
#include "splitplan/latency.hpp"
#include "splitplan/planner.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

enum class Phase { Compute, Uplink, Downlink, Aggregate };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Compute: return "compute";
    case Phase::Uplink: return "uplink";
    case Phase::Downlink: return "downlink";
    case Phase::Aggregate: return "aggregate";
  }
  return "?";
}

struct TraceEvent {
  int step = 0;  // training step 1..5; 0 for the terminal aggregate marker
  Phase phase = Phase::Compute;
  double start_s = 0.0;
  double end_s = 0.0;

  double duration() const { return end_s - start_s; }
};

// Timeline of one training round. Each client's events are contiguous and in
// step order (the model has no compute/communication overlap); server-side
// events of different clients may overlap since the server runs each body
// partition at that client's allocated share.
struct EventTrace {
  std::vector<std::vector<TraceEvent>> per_client;
  double server_update_s = 0.0;  // zero-duration gradient averaging at round end
  double round_makespan = 0.0;
};

namespace detail {

struct PendingPhase {
  double start_s;
  int client;
  int phase_index;
};

struct PhaseSpec {
  int step;
  Phase phase;
  double duration_s;
};

// The nine phases of one client's round, in execution order, with durations
// taken term-by-term from the analytic step latencies.
inline std::vector<PhaseSpec> client_phases(const SplitWorkloads& w, const ClientConfig& c,
                                            double k_s, double f_share) {
  const bool has_body = w.body_fp > 0.0 || w.body_bp > 0.0;
  if (!(f_share > 0.0) && has_body) {
    throw ZeroShareWithNonzeroBody("simulate_round: zero share with non-empty body");
  }
  const double beta = static_cast<double>(c.batch_size);
  const double k_c = c.compute_intensity;
  return {
      {1, Phase::Compute, beta * w.head_fp * k_c / c.compute_hz},
      {1, Phase::Uplink, beta * w.act1_bits / c.uplink_bps},
      {2, Phase::Compute, has_body ? beta * w.body_fp * k_s / f_share : 0.0},
      {2, Phase::Downlink, beta * w.act2_bits / c.downlink_bps},
      {3, Phase::Compute, beta * (w.tail_fp + w.tail_bp) * k_c / c.compute_hz},
      {3, Phase::Uplink, beta * w.act2_bits / c.uplink_bps},
      {4, Phase::Compute, has_body ? beta * w.body_bp * k_s / f_share : 0.0},
      {4, Phase::Downlink, beta * w.act1_bits / c.downlink_bps},
      {5, Phase::Compute, beta * w.head_bp * k_c / c.compute_hz},
  };
}

}  // namespace detail

// Replays one round as a discrete-event simulation: every client walks its
// nine phases, each phase starting the instant the previous one ends, with
// events processed globally in (time, client, step) order. Serves as an
// independent check that the analytic round latency is what the workflow
// actually yields.
inline EventTrace simulate_round(const Scenario& s, const CutPair& cuts,
                                 std::span<const double> shares) {
  validate_scenario(s);
  if (shares.size() != s.clients.size()) {
    throw ValidationError("simulate_round: expected " + std::to_string(s.clients.size()) +
                          " shares, got " + std::to_string(shares.size()));
  }
  const SplitWorkloads w = split_workloads(s.profile, cuts);

  std::vector<std::vector<detail::PhaseSpec>> phases;
  phases.reserve(s.clients.size());
  for (std::size_t n = 0; n < s.clients.size(); ++n) {
    phases.push_back(
        detail::client_phases(w, s.clients[n], s.server.compute_intensity, shares[n]));
  }

  const auto later = [](const detail::PendingPhase& x, const detail::PendingPhase& y) {
    return std::tie(x.start_s, x.client, x.phase_index) >
           std::tie(y.start_s, y.client, y.phase_index);
  };
  std::priority_queue<detail::PendingPhase, std::vector<detail::PendingPhase>,
                      decltype(later)>
      queue(later);
  for (int n = 0; n < static_cast<int>(s.clients.size()); ++n) {
    queue.push({0.0, n, 0});
  }

  EventTrace trace;
  trace.per_client.resize(s.clients.size());
  double makespan = 0.0;
  while (!queue.empty()) {
    const detail::PendingPhase current = queue.top();
    queue.pop();
    const detail::PhaseSpec& spec =
        phases[static_cast<std::size_t>(current.client)][static_cast<std::size_t>(
            current.phase_index)];
    const double end = current.start_s + spec.duration_s;
    trace.per_client[static_cast<std::size_t>(current.client)].push_back(
        {spec.step, spec.phase, current.start_s, end});
    if (current.phase_index + 1 <
        static_cast<int>(phases[static_cast<std::size_t>(current.client)].size())) {
      queue.push({end, current.client, current.phase_index + 1});
    } else {
      makespan = std::max(makespan, end);
    }
  }

  // Gradient averaging of the body partition happens once all clients are
  // done; it is modeled as a zero-cost event closing the round.
  trace.server_update_s = makespan;
  trace.round_makespan = makespan;
  return trace;
}

// Multi-round wrapper. The network model is static, so every round replays
// identically; each round still runs the full event loop.
inline std::vector<double> simulate_training(const Scenario& s, const PlanResult& plan,
                                             int rounds) {
  if (rounds < 1) throw ValidationError("simulate_training: rounds must be >= 1");
  std::vector<double> makespans;
  makespans.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    makespans.push_back(
        simulate_round(s, plan.best_cuts, plan.allocation.shares).round_makespan);
  }
  return makespans;
}

}  // namespace splitplan
