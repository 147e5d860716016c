#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "splitplan/allocator.hpp"
#include "splitplan/errors.hpp"
#include "splitplan/latency.hpp"
#include "splitplan/parallel.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

struct SearchEntry {
  CutPair cuts;
  double round_latency = 0.0;
};

// Outcome of a cut-pair search. search_table holds every feasible pair
// exactly once with its optimally-allocated round latency, sorted ascending
// by latency with lexicographic (a, b) as tie-break, so solve_lscra's
// best_cuts is always the first entry. The benchmark planners reuse the same
// table to document how their cut choice ranked; benchmark b's cuts are its
// second entry by construction.
struct PlanResult {
  CutPair best_cuts;
  Allocation allocation;
  double round_latency = 0.0;
  std::vector<SearchEntry> search_table;
};

// All candidate pairs (a, b) with 1 <= a <= b <= L-1 in lexicographic order;
// there are (L-1)L/2 of them.
inline std::vector<CutPair> enumerate_cuts(int layer_count) {
  if (layer_count < 2) {
    throw ValidationError("enumerate_cuts: layer_count must be >= 2");
  }
  std::vector<CutPair> pairs;
  pairs.reserve(static_cast<std::size_t>(layer_count - 1) *
                static_cast<std::size_t>(layer_count) / 2);
  for (int a = 1; a <= layer_count - 1; ++a) {
    for (int b = a; b <= layer_count - 1; ++b) {
      pairs.push_back({a, b});
    }
  }
  return pairs;
}

namespace detail {

inline bool entry_less(const SearchEntry& x, const SearchEntry& y) {
  return std::tie(x.round_latency, x.cuts.first_cut, x.cuts.second_cut) <
         std::tie(y.round_latency, y.cuts.first_cut, y.cuts.second_cut);
}

}  // namespace detail

// Exhaustive split search with exact per-pair share allocation: evaluates
// allocate_optimal for every candidate pair and keeps the latency minimizer.
// Candidates are independent, so they may be evaluated on up to `threads`
// workers; each lands in its own slot and the final sort is a total order
// (latency, then cuts), keeping the result identical at any thread count.
inline PlanResult solve_lscra(const Scenario& s, int threads = 1) {
  validate_scenario(s);
  const std::vector<CutPair> pairs = enumerate_cuts(s.profile.layer_count);

  std::vector<Allocation> allocations(pairs.size());
  parallel_for(pairs.size(), threads,
               [&](std::size_t i) { allocations[i] = allocate_optimal(s, pairs[i]); });

  PlanResult plan;
  plan.search_table.resize(pairs.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    plan.search_table[i] = {pairs[i], allocations[i].round_latency};
    if (detail::entry_less(plan.search_table[i], plan.search_table[best])) best = i;
  }
  plan.best_cuts = pairs[best];
  plan.allocation = std::move(allocations[best]);
  plan.round_latency = plan.allocation.round_latency;
  std::sort(plan.search_table.begin(), plan.search_table.end(), detail::entry_less);
  return plan;
}

namespace detail {

inline PlanResult even_plan_from(const Scenario& s, const PlanResult& solved,
                                 const CutPair& cuts) {
  PlanResult plan;
  plan.best_cuts = cuts;
  plan.allocation = allocate_even(s, cuts);
  plan.round_latency = plan.allocation.round_latency;
  plan.search_table = solved.search_table;
  return plan;
}

}  // namespace detail

// Benchmark a: the optimal cut pair, but the server budget split evenly.
inline PlanResult benchmark_even_optimal(const Scenario& s, const PlanResult& solved) {
  return detail::even_plan_from(s, solved, solved.best_cuts);
}

inline PlanResult benchmark_even_optimal(const Scenario& s, int threads = 1) {
  return benchmark_even_optimal(s, solve_lscra(s, threads));
}

// Benchmark b: the second-best cut pair (by optimally-allocated latency),
// with the budget split evenly.
inline PlanResult benchmark_even_suboptimal(const Scenario& s, const PlanResult& solved) {
  if (solved.search_table.size() < 2) {
    throw NoSecondCandidate("benchmark_even_suboptimal: only one feasible cut pair");
  }
  return detail::even_plan_from(s, solved, solved.search_table[1].cuts);
}

inline PlanResult benchmark_even_suboptimal(const Scenario& s, int threads = 1) {
  return benchmark_even_suboptimal(s, solve_lscra(s, threads));
}

}  // namespace splitplan
