#pragma once

#include <algorithm>
#include <span>
#include <string>

#include "splitplan/errors.hpp"
#include "splitplan/profile.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

// The two split points of a U-shaped three-way partition. first_cut = a puts
// layers 1..a (the head) on the client, second_cut = b puts layers b+1..L
// (the tail) back on the client, and layers a+1..b (the body) on the server.
// Valid range 1 <= a <= b <= L-1: the head always holds layer 1, the tail
// always holds the output layer (labels stay client-side), and a == b means
// an empty body.
struct CutPair {
  int first_cut = 0;
  int second_cut = 0;

  bool operator==(const CutPair&) const = default;
  auto operator<=>(const CutPair&) const = default;
};

inline void validate_cuts(const CutPair& cuts, const LayerProfile& profile) {
  if (cuts.first_cut < 1 || cuts.second_cut < cuts.first_cut ||
      cuts.second_cut > profile.layer_count - 1) {
    throw CutOutOfRange("cuts (" + std::to_string(cuts.first_cut) + "," +
                        std::to_string(cuts.second_cut) +
                        ") outside 1 <= a <= b <= " +
                        std::to_string(profile.layer_count - 1));
  }
}

// Per-sample workloads of the three partitions plus the tensor sizes crossing
// each cut. body_* are zero exactly when a == b.
struct SplitWorkloads {
  double head_fp = 0.0;   // FLOPs
  double head_bp = 0.0;
  double body_fp = 0.0;
  double body_bp = 0.0;
  double tail_fp = 0.0;
  double tail_bp = 0.0;
  double act1_bits = 0.0;  // activation (and gradient) size at the first cut
  double act2_bits = 0.0;  // same at the second cut
};

inline SplitWorkloads split_workloads(const LayerProfile& p, const CutPair& cuts) {
  validate_cuts(cuts, p);
  const std::size_t a = static_cast<std::size_t>(cuts.first_cut) - 1;
  const std::size_t b = static_cast<std::size_t>(cuts.second_cut) - 1;
  SplitWorkloads w;
  w.head_fp = p.fp_cumulative[a];
  w.head_bp = p.bp_cumulative[a];
  w.body_fp = p.fp_cumulative[b] - p.fp_cumulative[a];
  w.body_bp = p.bp_cumulative[b] - p.bp_cumulative[a];
  w.tail_fp = p.total_fp() - p.fp_cumulative[b];
  w.tail_bp = p.total_bp() - p.bp_cumulative[b];
  w.act1_bits = p.activation_bits[a];
  w.act2_bits = p.activation_bits[b];
  return w;
}

// Latencies of the five round steps for one client, in seconds:
//   1. head forward on the client, activations uplink
//   2. body forward on the server (at the client's allocated share),
//      activations downlink
//   3. tail forward+backward on the client, activation gradients uplink
//   4. body backward on the server, activation gradients downlink
//   5. head backward on the client
struct StepLatencies {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0, t5 = 0.0;

  double total() const { return t1 + t2 + t3 + t4 + t5; }
};

// k_s is the server's cycles/FLOP, f_share the server cycles/s allocated to
// this client. A zero share is legal only for an empty body (then the server
// terms vanish); otherwise it would mean an infinite step-2/4 latency and is
// reported as an error instead.
inline StepLatencies client_step_latencies(const SplitWorkloads& w, const ClientConfig& c,
                                           double k_s, double f_share) {
  const bool has_body = w.body_fp > 0.0 || w.body_bp > 0.0;
  if (!(f_share > 0.0) && has_body) {
    throw ZeroShareWithNonzeroBody("server share is zero but the body partition has work");
  }
  const double beta = static_cast<double>(c.batch_size);
  const double k_c = c.compute_intensity;
  StepLatencies t;
  t.t1 = beta * w.head_fp * k_c / c.compute_hz + beta * w.act1_bits / c.uplink_bps;
  t.t2 = (has_body ? beta * w.body_fp * k_s / f_share : 0.0) +
         beta * w.act2_bits / c.downlink_bps;
  t.t3 = beta * (w.tail_fp + w.tail_bp) * k_c / c.compute_hz +
         beta * w.act2_bits / c.uplink_bps;
  t.t4 = (has_body ? beta * w.body_bp * k_s / f_share : 0.0) +
         beta * w.act1_bits / c.downlink_bps;
  t.t5 = beta * w.head_bp * k_c / c.compute_hz;
  return t;
}

inline double client_round_latency(const StepLatencies& steps) { return steps.total(); }

// Affine view of one client's round latency in its server share:
//   T_n(f) = local_latency + epsilon / f.
// epsilon is the client's per-round server cycle demand (body FP+BP);
// local_latency collects everything share-independent, i.e. all client-side
// compute plus all four transfers.
struct ClientDecomposition {
  double epsilon = 0.0;        // cycles
  double local_latency = 0.0;  // seconds
};

inline ClientDecomposition decompose(const SplitWorkloads& w, const ClientConfig& c,
                                     double k_s) {
  const double beta = static_cast<double>(c.batch_size);
  const double k_c = c.compute_intensity;
  ClientDecomposition d;
  d.epsilon = beta * k_s * (w.body_fp + w.body_bp);
  d.local_latency = beta * w.head_fp * k_c / c.compute_hz + beta * w.act1_bits / c.uplink_bps +
                    beta * w.act2_bits / c.downlink_bps +
                    beta * (w.tail_fp + w.tail_bp) * k_c / c.compute_hz +
                    beta * w.act2_bits / c.uplink_bps + beta * w.act1_bits / c.downlink_bps +
                    beta * w.head_bp * k_c / c.compute_hz;
  return d;
}

// Round makespan: clients train in parallel, so the round ends when the
// slowest client finishes its five steps.
inline double round_latency(const Scenario& s, const CutPair& cuts,
                            std::span<const double> shares) {
  if (shares.size() != s.clients.size()) {
    throw ValidationError("round_latency: expected " + std::to_string(s.clients.size()) +
                          " shares, got " + std::to_string(shares.size()));
  }
  const SplitWorkloads w = split_workloads(s.profile, cuts);
  double worst = 0.0;
  for (std::size_t n = 0; n < s.clients.size(); ++n) {
    const StepLatencies steps =
        client_step_latencies(w, s.clients[n], s.server.compute_intensity, shares[n]);
    worst = std::max(worst, steps.total());
  }
  return worst;
}

}  // namespace splitplan
