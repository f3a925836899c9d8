#include "permabound/bound_report.hpp"

#include <cmath>

#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"

namespace permabound {

namespace {

// The common value of the positive entries, or 0 if they differ.
double common_positive_value(const Matrix& p) {
  double c = 0.0;
  for (double v : p.data()) {
    if (v <= 0.0) continue;
    if (c == 0.0) {
      c = v;
    } else if (v != c) {
      return 0.0;
    }
  }
  return c;
}

}  // namespace

BoundReport make_bound_report(const Matrix& p, std::string matrix_id, const BoundReportOptions& opts) {
  if (!is_doubly_stochastic(p, kDefaultStochasticTol)) {
    throw Error(ErrorCode::kDomainError, "bound report needs a doubly stochastic matrix (scale it first)");
  }
  const int n = p.n();
  BoundReport r;
  r.matrix_id = std::move(matrix_id);
  r.n = n;
  if (opts.exact && n <= kExactPermanentMaxN) r.log_per_exact = permanent_ryser(p, opts.threads);
  r.log_F = log_F(p);
  if (opts.max_cw) r.log_max_cw = maximize_cw(p, opts.cw_tol, opts.cw_max_iter).value;
  r.log_lms = log_lms(p);
  r.log_sd = log_sd(p);
  r.log_vdw = log_vdw(n);

  if (const double c = common_positive_value(p); c > 0.0) {
    Matrix pattern(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pattern(i, j) = p(i, j) > 0.0 ? 1.0 : 0.0;
    r.log_bregman = n * std::log(c) + log_bregman_upper(pattern);
  }
  r.log_holder_upper = log_holder_upper(p, opts.holder);
  r.log_cpr_bound = log_cpr_product(p);
  r.log_gurvits_bound = log_gurvits_bound(p);
  return r;
}

}  // namespace permabound
