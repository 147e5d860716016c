#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "splitplan/errors.hpp"

namespace splitplan {

// Per-layer model profile. Workloads are stored in FLOPs, not cycles: the
// computing intensity K (cycles/FLOP) of whichever processor runs a piece of
// the model is applied at latency-evaluation time, so one profile serves
// heterogeneous hardware.
//
// The marginal arrays are the canonical data (they are what profile files
// store); the cumulative arrays are derived once at construction. Cut layer j
// means "split after layer j", so fp_cumulative[j-1] is the forward work of
// everything at or before the cut. Activation sizes are per sample; batch
// size multiplies in at latency-evaluation time.
struct LayerProfile {
  int layer_count = 0;                   // L >= 2
  std::vector<double> per_layer_fp;      // forward FLOPs of layer j (1-based j stored 0-based)
  std::vector<double> per_layer_bp;      // backward FLOPs of layer j
  std::vector<double> fp_cumulative;     // forward FLOPs of the first j layers
  std::vector<double> bp_cumulative;     // backward FLOPs of the first j layers
  std::vector<double> activation_bits;   // activation (or activation-gradient) bits at cut j

  bool operator==(const LayerProfile&) const = default;

  double total_fp() const { return fp_cumulative.back(); }
  double total_bp() const { return bp_cumulative.back(); }
};

// Checks every profile invariant, throwing InvariantViolation naming the
// first one that fails. Loaders call this; freshly built profiles satisfy it
// by construction.
inline void validate_profile(const LayerProfile& p) {
  const auto n = static_cast<std::size_t>(p.layer_count);
  if (p.layer_count < 2) {
    throw InvariantViolation("profile: layer_count >= 2 (got " +
                             std::to_string(p.layer_count) + ")");
  }
  if (p.per_layer_fp.size() != n || p.per_layer_bp.size() != n ||
      p.fp_cumulative.size() != n || p.bp_cumulative.size() != n ||
      p.activation_bits.size() != n) {
    throw InvariantViolation("profile: all sequences must have layer_count entries");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(p.per_layer_fp[j] > 0.0)) {
      throw InvariantViolation("profile: fp_cumulative non-decreasing (layer " +
                               std::to_string(j + 1) + " adds non-positive forward work)");
    }
    if (!(p.per_layer_bp[j] > 0.0)) {
      throw InvariantViolation("profile: bp_cumulative non-decreasing (layer " +
                               std::to_string(j + 1) + " adds non-positive backward work)");
    }
    if (!(p.activation_bits[j] > 0.0)) {
      throw InvariantViolation("profile: activation_bits positive (layer " +
                               std::to_string(j + 1) + ")");
    }
  }
}

// Builds a profile from per-layer (marginal) forward/backward FLOPs and
// cut-point activation sizes. The cumulative sequences are the prefix sums.
inline LayerProfile build_profile(const std::vector<double>& per_layer_fp,
                                  const std::vector<double>& per_layer_bp,
                                  const std::vector<double>& activation_bits) {
  if (per_layer_fp.size() != per_layer_bp.size() ||
      per_layer_fp.size() != activation_bits.size()) {
    throw LengthMismatch("build_profile: sequences have lengths " +
                         std::to_string(per_layer_fp.size()) + "/" +
                         std::to_string(per_layer_bp.size()) + "/" +
                         std::to_string(activation_bits.size()));
  }
  if (per_layer_fp.size() < 2) {
    throw LengthMismatch("build_profile: a model needs at least 2 layers, got " +
                         std::to_string(per_layer_fp.size()));
  }
  for (std::size_t j = 0; j < per_layer_fp.size(); ++j) {
    if (!(per_layer_fp[j] > 0.0) || !(per_layer_bp[j] > 0.0) ||
        !(activation_bits[j] > 0.0)) {
      throw NonPositiveEntry("build_profile: non-positive entry at layer " +
                             std::to_string(j + 1));
    }
  }

  LayerProfile p;
  p.layer_count = static_cast<int>(per_layer_fp.size());
  p.per_layer_fp = per_layer_fp;
  p.per_layer_bp = per_layer_bp;
  p.activation_bits = activation_bits;
  p.fp_cumulative.resize(per_layer_fp.size());
  p.bp_cumulative.resize(per_layer_bp.size());
  double fp = 0.0, bp = 0.0;
  for (std::size_t j = 0; j < per_layer_fp.size(); ++j) {
    fp += per_layer_fp[j];
    bp += per_layer_bp[j];
    p.fp_cumulative[j] = fp;
    p.bp_cumulative[j] = bp;
  }
  return p;
}

}  // namespace splitplan
