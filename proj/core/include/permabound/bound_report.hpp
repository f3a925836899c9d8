#pragma once

#include <optional>
#include <string>

#include "permabound/betheopt.hpp"
#include "permabound/bounds.hpp"
#include "permabound/log_value.hpp"
#include "permabound/matrix.hpp"

namespace permabound {

inline constexpr int kExactPermanentMaxN = 22;

struct BoundReport {
  std::string matrix_id;
  int n = 0;
  std::optional<LogValue> log_per_exact;
  double log_F = 0.0;
  std::optional<double> log_max_cw;
  double log_lms = 0.0;
  double log_sd = 0.0;
  double log_vdw = 0.0;
  std::optional<double> log_bregman;
  std::optional<double> log_holder_upper;
  double log_cpr_bound = 0.0;
  double log_gurvits_bound = 0.0;
};

struct BoundReportOptions {
  bool exact = true;       // exact permanent when n <= kExactPermanentMaxN
  bool max_cw = true;
  double cw_tol = kDefaultCwTol;
  int cw_max_iter = kDefaultCwMaxIter;
  HolderVariant holder = HolderVariant::kSumSquared;
  int threads = 1;
};

/// Full ledger for a doubly stochastic P (within 1e-9; throws DomainError
/// otherwise). log_bregman is filled when every positive entry of P equals the
/// same c, as c^n times Bregman's bound for the 0/1 pattern.
BoundReport make_bound_report(const Matrix& p, std::string matrix_id, const BoundReportOptions& opts = {});

}  // namespace permabound
