// splitplan: compute split-layer placement and server share allocation for
// U-shaped parallel split learning, sweep the planner against even-allocation
// baselines, and replay rounds in the event simulator.
//
// Exit codes: 0 success, 2 bad input (files, flags, violated preconditions),
// 3 internal invariant failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitplan/splitplan.hpp"

namespace {

using namespace splitplan;

struct SolveArgs {
  std::string scenario_path;
  std::string profile_path;
  std::string out_path;
};

struct SweepCapacityArgs {
  int n = 100;
  double fs_min = 10e9;
  double fs_max = 50e9;
  int steps = 9;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string profile_path;
  std::string out_path;
};

struct SweepClientsArgs {
  int n_min = 10;
  int n_max = 100;
  int steps = 10;
  double fs = 50e9;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string profile_path;
  std::string out_path;
};

struct SimulateArgs {
  std::string scenario_path;
  std::string plan_path;
  int rounds = 1;
  std::string out_path;
};

Scenario load_scenario_with_override(const std::string& scenario_path,
                                     const std::string& profile_path) {
  Scenario s = load_scenario(scenario_path);
  if (!profile_path.empty()) {
    s.profile = load_profile(profile_path);
    validate_scenario(s);
  }
  return s;
}

LayerProfile profile_or_default(const std::string& profile_path) {
  return profile_path.empty() ? resnet18_profile() : load_profile(profile_path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
}

int run_solve(const SolveArgs& args) {
  const Scenario s = load_scenario_with_override(args.scenario_path, args.profile_path);
  const PlanResult plan = solve_lscra(s, worker_budget());
  save_plan(plan, args.out_path);
  std::printf("solve: N=%d L=%d capacity_hz=%s cuts=(%d,%d) round_latency_s=%s -> %s\n",
              s.client_count(), s.profile.layer_count, csv_double(s.server.capacity_hz).c_str(),
              plan.best_cuts.first_cut, plan.best_cuts.second_cut,
              csv_double(plan.round_latency).c_str(), args.out_path.c_str());
  return 0;
}

int run_sweep_capacity(const SweepCapacityArgs& args) {
  const LayerProfile profile = profile_or_default(args.profile_path);
  const auto rows = sweep_capacity(args.n, args.fs_min, args.fs_max, args.steps, args.seed,
                                   profile, args.trials, worker_budget());
  write_text(args.out_path, sweep_csv(rows, "fs_hz", false));
  std::printf("sweep-capacity: %zu points (N=%d, seed=%llu, trials=%d) -> %s\n", rows.size(),
              args.n, static_cast<unsigned long long>(args.seed), args.trials,
              args.out_path.c_str());
  return 0;
}

int run_sweep_clients(const SweepClientsArgs& args) {
  const LayerProfile profile = profile_or_default(args.profile_path);
  const auto rows = sweep_clients(args.n_min, args.n_max, args.steps, args.fs, args.seed,
                                  profile, args.trials, worker_budget());
  write_text(args.out_path, sweep_csv(rows, "n", true));
  std::printf("sweep-clients: %zu points (fs_hz=%s, seed=%llu, trials=%d) -> %s\n",
              rows.size(), csv_double(args.fs).c_str(),
              static_cast<unsigned long long>(args.seed), args.trials, args.out_path.c_str());
  return 0;
}

void validate_plan_against(const PlanResult& plan, const Scenario& s) {
  validate_cuts(plan.best_cuts, s.profile);
  if (plan.allocation.shares.size() != s.clients.size()) {
    throw InvariantViolation("plan: shares_hz has " +
                             std::to_string(plan.allocation.shares.size()) +
                             " entries for " + std::to_string(s.clients.size()) + " clients");
  }
  double total = 0.0;
  for (double share : plan.allocation.shares) {
    if (share < 0.0) throw InvariantViolation("plan: negative share");
    total += share;
  }
  if (total > s.server.capacity_hz * (1.0 + 1e-9)) {
    throw InvariantViolation("plan: shares exceed server capacity");
  }
}

std::string trace_csv(const EventTrace& trace) {
  std::string out = "client,step,phase,start_s,end_s\n";
  for (std::size_t n = 0; n < trace.per_client.size(); ++n) {
    for (const TraceEvent& e : trace.per_client[n]) {
      out += std::to_string(n);
      out += ',';
      out += std::to_string(e.step);
      out += ',';
      out += phase_name(e.phase);
      out += ',';
      out += csv_double(e.start_s);
      out += ',';
      out += csv_double(e.end_s);
      out += '\n';
    }
  }
  out += "-1,0,aggregate," + csv_double(trace.server_update_s) + "," +
         csv_double(trace.server_update_s) + "\n";
  return out;
}

int run_simulate(const SimulateArgs& args) {
  const Scenario s = load_scenario(args.scenario_path);
  PlanResult plan;
  if (args.plan_path.empty()) {
    plan = solve_lscra(s, worker_budget());
  } else {
    plan = load_plan(args.plan_path);
    validate_plan_against(plan, s);
  }

  const EventTrace trace = simulate_round(s, plan.best_cuts, plan.allocation.shares);
  write_text(args.out_path, trace_csv(trace));

  const double analytic = round_latency(s, plan.best_cuts, plan.allocation.shares);
  const double delta = std::abs(trace.round_makespan - analytic) / analytic;
  std::printf("simulate: cuts=(%d,%d) analytic_s=%s simulated_s=%s rel_delta=%s -> %s\n",
              plan.best_cuts.first_cut, plan.best_cuts.second_cut,
              csv_double(analytic).c_str(), csv_double(trace.round_makespan).c_str(),
              csv_double(delta).c_str(), args.out_path.c_str());
  if (args.rounds > 1) {
    const std::vector<double> makespans = simulate_training(s, plan, args.rounds);
    std::printf("rounds:");
    for (double m : makespans) std::printf(" %s", csv_double(m).c_str());
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-layer placement and server compute allocation for "
               "U-shaped parallel split learning"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Plan cuts and shares for one scenario, write the plan as JSON");
  solve->add_option("--scenario", solve_args.scenario_path, "scenario JSON file")
      ->required();
  solve->add_option("--profile", solve_args.profile_path,
                    "profile JSON overriding the scenario's profile");
  solve->add_option("--out", solve_args.out_path, "output plan JSON")->required();

  SweepCapacityArgs cap_args;
  CLI::App* sweep_cap = app.add_subcommand(
      "sweep-capacity", "Latency vs server capacity for a fixed seeded client pool (CSV)");
  sweep_cap->add_option("--n", cap_args.n, "number of clients");
  sweep_cap->add_option("--fs-min", cap_args.fs_min, "lowest server capacity, Hz");
  sweep_cap->add_option("--fs-max", cap_args.fs_max, "highest server capacity, Hz");
  sweep_cap->add_option("--steps", cap_args.steps, "grid points");
  sweep_cap->add_option("--seed", cap_args.seed, "scenario seed");
  sweep_cap->add_option("--trials", cap_args.trials, "seeds averaged per point");
  sweep_cap->add_option("--profile", cap_args.profile_path,
                        "profile JSON (default: bundled ResNet-18)");
  sweep_cap->add_option("--out", cap_args.out_path, "output CSV")->required();

  SweepClientsArgs cli_args;
  CLI::App* sweep_cli = app.add_subcommand(
      "sweep-clients", "Latency vs client count with nested seeded pools (CSV)");
  sweep_cli->add_option("--n-min", cli_args.n_min, "fewest clients");
  sweep_cli->add_option("--n-max", cli_args.n_max, "most clients");
  sweep_cli->add_option("--steps", cli_args.steps, "grid points");
  sweep_cli->add_option("--fs", cli_args.fs, "server capacity, Hz");
  sweep_cli->add_option("--seed", cli_args.seed, "scenario seed");
  sweep_cli->add_option("--trials", cli_args.trials, "seeds averaged per point");
  sweep_cli->add_option("--profile", cli_args.profile_path,
                        "profile JSON (default: bundled ResNet-18)");
  sweep_cli->add_option("--out", cli_args.out_path, "output CSV")->required();

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Replay rounds in the event simulator, write the trace as CSV");
  simulate->add_option("--scenario", sim_args.scenario_path, "scenario JSON file")
      ->required();
  simulate->add_option("--plan", sim_args.plan_path,
                       "plan JSON (default: solve the scenario first)");
  simulate->add_option("--rounds", sim_args.rounds, "rounds to simulate")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--out", sim_args.out_path, "output trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (sweep_cap->parsed()) return run_sweep_capacity(cap_args);
    if (sweep_cli->parsed()) return run_sweep_clients(cli_args);
    if (simulate->parsed()) return run_simulate(sim_args);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
