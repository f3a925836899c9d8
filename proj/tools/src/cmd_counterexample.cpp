#include <cmath>
#include <string>

#include "common.hpp"
#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"

namespace permabound::cli {

namespace {

constexpr double kPaperArgmax = 0.721;

}  // namespace

CommandResult cmd_counterexample(const CounterexampleOptions& opts, const RunConfig& cfg) {
  if (opts.n_min < 2 || opts.n_max < opts.n_min) throw Error(ErrorCode::kDomainError, "need 2 <= n-min <= n-max");
  const int first = opts.n_min + (opts.n_min % 2);
  if (first > opts.n_max) throw Error(ErrorCode::kDomainError, "the range contains no even n");

  CommandResult out;
  out.report = start_report("counterexample", cfg);
  out.report["n_min"] = opts.n_min;
  out.report["n_max"] = opts.n_max;

  Table& t = out.table;
  t.name = "rows";
  t.columns = {"n", "size", "log_per", "log_lms", "log_sd", "lms_minus_per", "sd_minus_per"};
  Json lms_cross = nullptr, sd_cross = nullptr;
  for (int n = first; n <= opts.n_max; n += 2) {
    const double lp = log_perm_kn(n).log();
    const double lms = log_lms_kn(n);
    const double sd = log_sd_kn(n);
    t.rows.push_back({n, 3 * n / 2, json_number(lp), json_number(lms), json_number(sd), json_number(lms - lp),
                      json_number(sd - lp)});
    if (lms_cross.is_null() && lms > lp) lms_cross = n;
    if (sd_cross.is_null() && sd > lp) sd_cross = n;
  }
  out.report["lms_crossover_n"] = lms_cross;
  out.report["sd_crossover_n"] = sd_cross;

  // Closed forms against the generic code on materialized K_n.
  Json checks = Json::array();
  auto check = [&](const std::string& what, int n, double closed, double generic, double tol) {
    const double err = std::abs(closed - generic);
    const bool ok = err <= tol;
    if (!ok) ++out.violations;
    checks.push_back(Json{{"quantity", what},
                          {"n", n},
                          {"closed_form", json_number(closed)},
                          {"generic", json_number(generic)},
                          {"abs_error", json_number(err)},
                          {"holds", ok}});
  };
  for (int n = first; n <= std::min(opts.n_max, opts.materialize_max); n += 2) {
    const Matrix k = k_counterexample(n);
    check("log_per", n, log_perm_kn(n).log(), permanent_ryser(k, cfg.threads).log(), 1e-10);
    check("log_lms", n, log_lms_kn(n), log_lms(k), 1e-10);
    check("log_sd", n, log_sd_kn(n), log_sd(k), 1e-10);
  }
  if (opts.n_min <= 90 && 90 <= opts.n_max) {
    const double stated = std::lgamma(91.0) - 90.0 * std::log(90.0) - 45.0 * std::log(2.0);
    check("log_per_stated_formula", 90, stated, log_perm_kn(90).log(), 1e-9);
    const Matrix k90 = k_counterexample(90);
    check("log_lms", 90, log_lms_kn(90), log_lms(k90), 1e-9);
    check("log_sd", 90, log_sd_kn(90), log_sd(k90), 1e-9);
  }
  out.report["closed_form_checks"] = std::move(checks);

  double best_t = 0.0, best = -kInf;
  for (int k = 1; k <= 999; ++k) {
    const double tt = k / 1000.0;
    const double d = s_curve(1, tt) - m_curve(1, tt);
    if (d > best) {
      best = d;
      best_t = tt;
    }
  }
  out.report["s1_minus_m1"] = Json{{"grid_argmax", json_number(best_t)},
                                   {"grid_max", json_number(best)},
                                   {"stated_argmax", json_number(kPaperArgmax)},
                                   {"abs_difference", json_number(std::abs(best_t - kPaperArgmax))}};
  return out;
}

}  // namespace permabound::cli
