#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "splitplan/errors.hpp"
#include "splitplan/planner.hpp"
#include "splitplan/profile.hpp"
#include "splitplan/scenario.hpp"

namespace splitplan {

namespace io_detail {

using nlohmann::json;

inline json parse_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(std::string(what) + ": cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + " " + path.string() + ": " + e.what());
  }
}

inline const json& require(const json& j, const char* key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(context + "." + key + " is missing");
  }
  return *it;
}

inline double require_number(const json& j, const char* key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) {
    throw ParseError(context + "." + key + " must be a number");
  }
  return v.get<double>();
}

inline std::int64_t require_integer(const json& j, const char* key,
                                    const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number_integer()) {
    throw ParseError(context + "." + key + " must be an integer");
  }
  return v.get<std::int64_t>();
}

inline std::vector<double> require_number_array(const json& j, const char* key,
                                                const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_array()) {
    throw ParseError(context + "." + key + " must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      throw ParseError(context + "." + key + " must contain only numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const json& j,
                       const char* what) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError(std::string(what) + ": cannot open " + path.string() +
                     " for writing");
  }
  out << j.dump(2) << '\n';
}

inline json profile_to_json(const LayerProfile& p) {
  return json{{"layers", p.layer_count},
              {"fp_flops", p.per_layer_fp},
              {"bp_flops", p.per_layer_bp},
              {"activation_bits", p.activation_bits}};
}

inline LayerProfile profile_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) throw ParseError(context + " must be an object");
  const auto layers = require_integer(j, "layers", context);
  const auto fp = require_number_array(j, "fp_flops", context);
  const auto bp = require_number_array(j, "bp_flops", context);
  const auto act = require_number_array(j, "activation_bits", context);
  if (layers < 2) {
    throw InvariantViolation(context + ".layers must be >= 2");
  }
  if (fp.size() != static_cast<std::size_t>(layers) || bp.size() != fp.size() ||
      act.size() != fp.size()) {
    throw InvariantViolation(context + ": array lengths must equal layers");
  }
  for (std::size_t i = 0; i < fp.size(); ++i) {
    // Marginal workloads are the file representation; a non-positive entry is
    // a decreasing cumulative sequence.
    if (!(fp[i] > 0.0)) {
      throw InvariantViolation(context + ": fp_cumulative non-decreasing (fp_flops[" +
                               std::to_string(i) + "] <= 0)");
    }
    if (!(bp[i] > 0.0)) {
      throw InvariantViolation(context + ": bp_cumulative non-decreasing (bp_flops[" +
                               std::to_string(i) + "] <= 0)");
    }
    if (!(act[i] > 0.0)) {
      throw InvariantViolation(context + ": activation_bits positive (activation_bits[" +
                               std::to_string(i) + "] <= 0)");
    }
  }
  return build_profile(fp, bp, act);
}

}  // namespace io_detail

inline void save_profile(const LayerProfile& p, const std::filesystem::path& path) {
  io_detail::write_file(path, io_detail::profile_to_json(p), "profile");
}

inline LayerProfile load_profile(const std::filesystem::path& path) {
  const auto j = io_detail::parse_file(path, "profile");
  return io_detail::profile_from_json(j, "profile");
}

inline void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  using io_detail::json;
  json clients = json::array();
  for (const ClientConfig& c : s.clients) {
    clients.push_back({{"compute_hz", c.compute_hz},
                       {"batch_size", c.batch_size},
                       {"uplink_bps", c.uplink_bps},
                       {"downlink_bps", c.downlink_bps},
                       {"k_c", c.compute_intensity}});
  }
  const json j{{"server",
                {{"capacity_hz", s.server.capacity_hz},
                 {"k_s", s.server.compute_intensity}}},
               {"clients", clients},
               {"profile", io_detail::profile_to_json(s.profile)}};
  io_detail::write_file(path, j, "scenario");
}

// Accepts either an inline "profile" object or a "profile_path" (resolved
// relative to the scenario file's directory).
inline Scenario load_scenario(const std::filesystem::path& path) {
  using io_detail::json;
  const json j = io_detail::parse_file(path, "scenario");
  if (!j.is_object()) throw ParseError("scenario must be an object");

  Scenario s;
  const json& server = io_detail::require(j, "server", "scenario");
  s.server.capacity_hz = io_detail::require_number(server, "capacity_hz", "scenario.server");
  s.server.compute_intensity = io_detail::require_number(server, "k_s", "scenario.server");

  const json& clients = io_detail::require(j, "clients", "scenario");
  if (!clients.is_array()) throw ParseError("scenario.clients must be an array");
  for (std::size_t n = 0; n < clients.size(); ++n) {
    const std::string context = "scenario.clients[" + std::to_string(n) + "]";
    const json& c = clients[n];
    if (!c.is_object()) throw ParseError(context + " must be an object");
    ClientConfig cc;
    cc.compute_hz = io_detail::require_number(c, "compute_hz", context);
    cc.batch_size = io_detail::require_integer(c, "batch_size", context);
    cc.uplink_bps = io_detail::require_number(c, "uplink_bps", context);
    cc.downlink_bps = io_detail::require_number(c, "downlink_bps", context);
    cc.compute_intensity = io_detail::require_number(c, "k_c", context);
    s.clients.push_back(cc);
  }

  if (j.contains("profile")) {
    s.profile = io_detail::profile_from_json(j["profile"], "scenario.profile");
  } else if (j.contains("profile_path")) {
    const json& pp = j["profile_path"];
    if (!pp.is_string()) throw ParseError("scenario.profile_path must be a string");
    s.profile = load_profile(path.parent_path() / pp.get<std::string>());
  } else {
    throw ParseError("scenario.profile (or profile_path) is missing");
  }

  validate_scenario(s);
  return s;
}

inline void save_plan(const PlanResult& plan, const std::filesystem::path& path) {
  using io_detail::json;
  json table = json::array();
  for (const SearchEntry& e : plan.search_table) {
    table.push_back({{"first_cut", e.cuts.first_cut},
                     {"second_cut", e.cuts.second_cut},
                     {"round_latency_s", e.round_latency}});
  }
  const json j{{"best_cuts",
                {{"first_cut", plan.best_cuts.first_cut},
                 {"second_cut", plan.best_cuts.second_cut}}},
               {"round_latency_s", plan.round_latency},
               {"shares_hz", plan.allocation.shares},
               {"client_latencies_s", plan.allocation.client_latencies},
               {"anchor_index", plan.allocation.anchor_index},
               {"search_table", table}};
  io_detail::write_file(path, j, "plan");
}

inline PlanResult load_plan(const std::filesystem::path& path) {
  using io_detail::json;
  const json j = io_detail::parse_file(path, "plan");
  if (!j.is_object()) throw ParseError("plan must be an object");

  PlanResult plan;
  const json& cuts = io_detail::require(j, "best_cuts", "plan");
  plan.best_cuts.first_cut =
      static_cast<int>(io_detail::require_integer(cuts, "first_cut", "plan.best_cuts"));
  plan.best_cuts.second_cut =
      static_cast<int>(io_detail::require_integer(cuts, "second_cut", "plan.best_cuts"));
  plan.round_latency = io_detail::require_number(j, "round_latency_s", "plan");
  plan.allocation.shares = io_detail::require_number_array(j, "shares_hz", "plan");
  plan.allocation.client_latencies =
      io_detail::require_number_array(j, "client_latencies_s", "plan");
  plan.allocation.round_latency = plan.round_latency;
  plan.allocation.anchor_index =
      static_cast<int>(io_detail::require_integer(j, "anchor_index", "plan"));
  if (j.contains("search_table")) {
    const json& table = j["search_table"];
    if (!table.is_array()) throw ParseError("plan.search_table must be an array");
    for (std::size_t i = 0; i < table.size(); ++i) {
      const std::string context = "plan.search_table[" + std::to_string(i) + "]";
      SearchEntry e;
      e.cuts.first_cut =
          static_cast<int>(io_detail::require_integer(table[i], "first_cut", context));
      e.cuts.second_cut =
          static_cast<int>(io_detail::require_integer(table[i], "second_cut", context));
      e.round_latency = io_detail::require_number(table[i], "round_latency_s", context);
      plan.search_table.push_back(e);
    }
  }
  return plan;
}

// Full-precision decimal text for CSV cells: round-trips a double exactly and
// is byte-stable across runs.
inline std::string csv_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace splitplan
