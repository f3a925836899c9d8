#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "permabound/cli/commands.hpp"

namespace permabound::cli {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(big) - ln(small), with anything above a -inf lower side counting as +inf.
inline double log_slack(double big, double small) {
  if (small == -kInf || big == kInf) return kInf;
  return big - small;
}

inline bool within(double slack, double tol) { return slack >= -tol; }

// Absolute tolerance for a log-domain comparison at magnitude `scale`.
inline double log_tol(double base, double scale) { return base * (1.0 + std::abs(scale)); }

inline Json start_report(const std::string& command, const RunConfig& cfg) {
  Json r;
  r["command"] = command;
  r["version"] = kVersion;
  r["config"] = config_json(cfg);
  return r;
}

}  // namespace permabound::cli
