#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "splitplan/allocator.hpp"
#include "splitplan/planner.hpp"
#include "splitplan/profile.hpp"
#include "splitplan/resnet18.hpp"
#include "splitplan/scenario.hpp"
#include "splitplan/simulator.hpp"

using namespace splitplan;
using Catch::Matchers::WithinRel;

namespace {

LayerProfile toy_profile() {
  return build_profile({100, 200, 300, 400}, {200, 400, 600, 800},
                       {8000, 4000, 2000, 1000});
}

Scenario toy_single_client() {
  Scenario s;
  s.server = {500.0, 1.0};
  s.profile = toy_profile();
  s.clients = {{100.0, 1, 8000.0, 8000.0, 1.0}};
  return s;
}

// instants just inside every event: total share in use may never exceed the
// server budget
void check_server_budget(const EventTrace& trace, double capacity,
                         const std::vector<double>& shares) {
  std::vector<double> probes;
  for (const auto& events : trace.per_client) {
    for (const TraceEvent& e : events) {
      probes.push_back(e.start_s);
      probes.push_back(0.5 * (e.start_s + e.end_s));
    }
  }
  for (double t : probes) {
    double in_use = 0.0;
    for (std::size_t n = 0; n < trace.per_client.size(); ++n) {
      for (const TraceEvent& e : trace.per_client[n]) {
        const bool server_side = (e.step == 2 || e.step == 4) && e.phase == Phase::Compute;
        if (server_side && e.start_s <= t && t < e.end_s) in_use += shares[n];
      }
    }
    CHECK(in_use <= capacity * (1.0 + 1e-9));
  }
}

}  // namespace

TEST_CASE("single toy client replays the worked example") {
  const Scenario s = toy_single_client();
  const std::vector<double> shares = {500.0};
  const EventTrace trace = simulate_round(s, {1, 3}, shares);

  CHECK(trace.round_makespan == 20.5);
  CHECK(trace.server_update_s == 20.5);
  REQUIRE(trace.per_client.size() == 1);
  const auto& events = trace.per_client[0];
  REQUIRE(events.size() == 9);

  // step order with phases as the workflow prescribes
  const std::vector<std::pair<int, Phase>> expect = {
      {1, Phase::Compute}, {1, Phase::Uplink},   {2, Phase::Compute},
      {2, Phase::Downlink}, {3, Phase::Compute}, {3, Phase::Uplink},
      {4, Phase::Compute}, {4, Phase::Downlink}, {5, Phase::Compute},
  };
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].step == expect[i].first);
    CHECK(events[i].phase == expect[i].second);
  }
  CHECK(events[0].duration() == 1.0);   // head FP
  CHECK(events[1].duration() == 1.0);   // activations up
  CHECK(events[2].duration() == 1.0);   // body FP at share 500
  CHECK(events[8].duration() == 2.0);   // head BP
}

TEST_CASE("per-client events are contiguous and conserve the analytic latency") {
  const LayerProfile p = resnet18_profile();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    UniformSampler u(seed + 501);
    const int n = 1 + static_cast<int>(u.in(0, 9));
    const Scenario s = sample_scenario(n, std::pow(10.0, u.in(9.0, 11.0)), p, seed);
    const int a = 1 + static_cast<int>(u.in(0, 9));
    const int b = a + static_cast<int>(u.in(0, 10 - a));
    const CutPair cuts{a, b};

    const Allocation alloc = allocate_optimal(s, cuts);
    const EventTrace trace = simulate_round(s, cuts, alloc.shares);

    const double analytic = round_latency(s, cuts, alloc.shares);
    REQUIRE_THAT(trace.round_makespan, WithinRel(analytic, 1e-9));

    const SplitWorkloads w = split_workloads(p, cuts);
    for (std::size_t i = 0; i < s.clients.size(); ++i) {
      const auto& events = trace.per_client[i];
      REQUIRE(events.size() == 9);
      CHECK(events.front().start_s == 0.0);
      double duration_sum = 0.0;
      for (std::size_t e = 0; e < events.size(); ++e) {
        if (e > 0) CHECK(events[e].start_s == events[e - 1].end_s);
        duration_sum += events[e].duration();
      }
      const double t_n = client_round_latency(
          client_step_latencies(w, s.clients[i], s.server.compute_intensity,
                                alloc.shares[i]));
      CHECK_THAT(duration_sum, WithinRel(t_n, 1e-12));
      CHECK_THAT(events.back().end_s, WithinRel(t_n, 1e-12));
    }

    check_server_budget(trace, s.server.capacity_hz, alloc.shares);
  }
}

TEST_CASE("identical clients produce identical traces") {
  Scenario s = toy_single_client();
  s.server.capacity_hz = 1000.0;
  s.clients.push_back(s.clients[0]);
  const std::vector<double> shares = {500.0, 500.0};
  const EventTrace trace = simulate_round(s, {1, 3}, shares);
  REQUIRE(trace.per_client.size() == 2);
  REQUIRE(trace.per_client[0].size() == trace.per_client[1].size());
  for (std::size_t e = 0; e < trace.per_client[0].size(); ++e) {
    CHECK(trace.per_client[0][e].start_s == trace.per_client[1][e].start_s);
    CHECK(trace.per_client[0][e].end_s == trace.per_client[1][e].end_s);
  }
  CHECK(trace.round_makespan == 20.5);
}

TEST_CASE("zero-share empty-body rounds simulate cleanly") {
  Scenario s = toy_single_client();
  const std::vector<double> shares = {0.0};
  const EventTrace trace = simulate_round(s, {2, 2}, shares);
  CHECK(trace.per_client[0][2].duration() == 0.0);  // no body FP
  CHECK_THAT(trace.round_makespan,
             WithinRel(round_latency(s, {2, 2}, shares), 1e-12));

  CHECK_THROWS_AS(simulate_round(s, {1, 3}, shares), ZeroShareWithNonzeroBody);
}

TEST_CASE("multi-round training is stationary") {
  const Scenario s = sample_scenario(4, 20e9, resnet18_profile(), 77);
  const PlanResult plan = solve_lscra(s);
  const std::vector<double> makespans = simulate_training(s, plan, 3);
  REQUIRE(makespans.size() == 3);
  CHECK(makespans[0] == makespans[1]);
  CHECK(makespans[1] == makespans[2]);
  CHECK(makespans[0] == simulate_round(s, plan.best_cuts, plan.allocation.shares)
                            .round_makespan);

  const std::vector<double> one = simulate_training(s, plan, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == makespans[0]);

  const double cumulative = std::accumulate(makespans.begin(), makespans.end(), 0.0);
  CHECK_THAT(cumulative, WithinRel(3.0 * makespans[0], 1e-15));

  CHECK_THROWS_AS(simulate_training(s, plan, 0), ValidationError);
}

TEST_CASE("trace length mismatch is rejected") {
  const Scenario s = toy_single_client();
  CHECK_THROWS_AS(simulate_round(s, {1, 3}, std::vector<double>{1.0, 2.0}),
                  ValidationError);
}
