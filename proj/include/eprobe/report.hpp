#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "eprobe/closed_form.hpp"
#include "eprobe/mc_protocol.hpp"

namespace eprobe {

/// One record of the E -> (eta, Q, I, P_correct) tradeoff table.
struct SweepRow {
  double e;
  double eta;
  double q;
  double renyi_bits;
  double helstrom_p;
};

inline SweepRow sweep_row(ErrorRate e) {
  return {e.value(), eta(e), overlap_q_closed(e), renyi_info(e),
          helstrom_correct_prob(e)};
}

/// `steps` rows uniformly spaced over [e_min, e_max]. Requires
/// 0 <= e_min < e_max <= 1/3 and steps >= 2.
inline std::vector<SweepRow> sweep(double e_min, double e_max, int steps) {
  if (!(e_min >= 0.0 && e_max <= ErrorRate::kMax)) {
    throw std::domain_error("sweep bounds must lie in [0, 1/3]");
  }
  if (steps < 2) throw std::domain_error("sweep needs at least 2 steps");
  if (!(e_min < e_max)) throw std::domain_error("sweep needs e_min < e_max");

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    rows.push_back(sweep_row(ErrorRate(e_min + t * (e_max - e_min))));
  }
  return rows;
}

/// 17 significant digits: round-trip exact for IEEE doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

inline constexpr const char* kSweepCsvHeader = "E,eta,Q,renyi_bits,helstrom_p";

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += format_double(r.e) + ',' + format_double(r.eta) + ',' +
           format_double(r.q) + ',' + format_double(r.renyi_bits) + ',' +
           format_double(r.helstrom_p) + '\n';
  }
  return out;
}

inline std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    arr.push_back({{"E", r.e},
                   {"eta", r.eta},
                   {"Q", r.q},
                   {"renyi_bits", r.renyi_bits},
                   {"helstrom_p", r.helstrom_p}});
  }
  return arr.dump(2) + '\n';
}

/// A finished session next to its closed-form targets: the configured E is
/// the disturbance target, helstrom_p the accuracy target, renyi_bits the
/// information target.
struct SessionReport {
  SessionConfig config;
  SessionStats stats;
  double helstrom_p;
  double renyi_bits;
};

inline SessionReport make_session_report(const SessionConfig& config) {
  return {config, run_session(config),
          helstrom_correct_prob(config.error_rate),
          renyi_info(config.error_rate)};
}

inline constexpr const char* kSessionCsvHeader =
    "E,trials,seed,sifted_count,bob_errors,eve_correct,disturbance_estimate,"
    "eve_accuracy_estimate,renyi_estimate_bits,helstrom_p,renyi_bits";

inline std::string to_csv(const SessionReport& r) {
  std::string out = kSessionCsvHeader;
  out += '\n';
  out += format_double(r.config.error_rate.value()) + ',' +
         std::to_string(r.config.trials) + ',' + std::to_string(r.config.seed) +
         ',' + std::to_string(r.stats.sifted_count) + ',' +
         std::to_string(r.stats.bob_errors) + ',' +
         std::to_string(r.stats.eve_correct) + ',' +
         format_optional(r.stats.disturbance_estimate) + ',' +
         format_optional(r.stats.eve_accuracy_estimate) + ',' +
         format_optional(r.stats.renyi_estimate_bits) + ',' +
         format_double(r.helstrom_p) + ',' + format_double(r.renyi_bits) + '\n';
  return out;
}

inline std::string to_json(const SessionReport& r) {
  auto opt = [](const std::optional<double>& x) {
    return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j{
      {"E", r.config.error_rate.value()},
      {"trials", r.config.trials},
      {"seed", r.config.seed},
      {"sifted_count", r.stats.sifted_count},
      {"bob_errors", r.stats.bob_errors},
      {"eve_correct", r.stats.eve_correct},
      {"disturbance_estimate", opt(r.stats.disturbance_estimate)},
      {"eve_accuracy_estimate", opt(r.stats.eve_accuracy_estimate)},
      {"renyi_estimate_bits", opt(r.stats.renyi_estimate_bits)},
      {"helstrom_p", r.helstrom_p},
      {"renyi_bits", r.renyi_bits}};
  return j.dump(2) + '\n';
}

}  // namespace eprobe
