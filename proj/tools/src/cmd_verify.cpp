#include <algorithm>
#include <array>
#include <string>

#include "common.hpp"
#include "permabound/betheopt.hpp"
#include "permabound/cli/corpus.hpp"
#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/parallel.hpp"

namespace permabound::cli {

namespace {

// Each entry checks one proven inequality; per_ge_cw and cw_ge_F make up the chain.
constexpr std::array<const char*, 8> kInequalities = {"per_ge_cw", "cw_ge_F", "schrijver", "lms_ge_F",
                                                      "sd_ge_F",   "vdw",     "gurvits",   "holder"};

bool selected(const std::string& filter, const std::string& name) {
  if (filter == "all") return true;
  if (filter == "chain") return name == "per_ge_cw" || name == "cw_ge_F";
  if (filter == "lms_sd") return name == "lms_ge_F" || name == "sd_ge_F";
  return filter == name;
}

struct Outcome {
  int n = 0;
  std::array<double, kInequalities.size()> slack{};
  std::array<double, kInequalities.size()> tol{};
};

}  // namespace

CommandResult cmd_verify(const VerifyOptions& opts, const RunConfig& cfg) {
  if (opts.n_min < 1 || opts.n_max < opts.n_min) throw Error(ErrorCode::kDomainError, "need 1 <= n-min <= n-max");
  if (opts.n_max > kBruteMaxN) {
    throw Error(ErrorCode::kTooLarge, "verify uses exact oracles and needs n-max <= " + std::to_string(kBruteMaxN));
  }
  if (opts.count < 1) throw Error(ErrorCode::kDomainError, "need count >= 1");
  bool known = opts.inequality == "all" || opts.inequality == "chain" || opts.inequality == "lms_sd";
  for (const char* name : kInequalities) known = known || opts.inequality == name;
  if (!known) throw Error(ErrorCode::kDomainError, "unknown inequality '" + opts.inequality + "'");

  std::vector<bool> active(kInequalities.size());
  for (std::size_t k = 0; k < kInequalities.size(); ++k) active[k] = selected(opts.inequality, kInequalities[k]);
  const bool need_cw = active[0] || active[1];

  std::vector<Outcome> outcomes(static_cast<std::size_t>(opts.count));
  parallel_for(outcomes.size(), cfg.threads, [&](std::size_t idx) {
    const Matrix p = corpus_random(cfg.seed, idx, opts.n_min, opts.n_max);
    Outcome& o = outcomes[idx];
    o.n = p.n();
    const double lp = permanent_ryser(p).log();
    const double lf = log_F(p);
    const double cw = need_cw ? maximize_cw(p, cfg.tol, cfg.max_iter).value : 0.0;
    const double tol = log_tol(1e-9, lp);
    double schrijver_rhs = 0.0;
    for (double v : p.data()) schrijver_rhs += v < 1.0 ? std::log1p(-v) : -kInf;
    const std::array<double, kInequalities.size()> slack = {
        log_slack(lp, cw),
        log_slack(cw, lf),
        active[2] ? log_slack(permanent_ryser(schrijver_tilde(p)).log(), schrijver_rhs) : 0.0,
        log_slack(log_lms(p), lf),
        log_slack(log_sd(p), lf),
        log_slack(lp, log_vdw(p.n())),
        log_slack(lp, log_gurvits_bound(p)),
        log_slack(log_holder_upper(p), lp),
    };
    o.slack = slack;
    o.tol = {1e-7, 1e-7, tol, log_tol(1e-12, lf), log_tol(1e-12, lf), tol, tol, tol};
  });

  CommandResult out;
  out.report = start_report("verify", cfg);
  out.report["count"] = opts.count;
  out.report["n_min"] = opts.n_min;
  out.report["n_max"] = opts.n_max;
  out.report["inequality"] = opts.inequality;
  Json summary = Json::array();
  Table& t = out.table;
  t.name = "matrices";
  t.columns = {"index", "n", "inequality", "slack", "tolerance", "holds"};
  for (std::size_t k = 0; k < kInequalities.size(); ++k) {
    if (!active[k]) continue;
    long violations = 0;
    double min_slack = kInf;
    std::size_t argmin = 0;
    for (std::size_t idx = 0; idx < outcomes.size(); ++idx) {
      const double s = outcomes[idx].slack[k];
      if (!within(s, outcomes[idx].tol[k])) ++violations;
      if (s < min_slack) {
        min_slack = s;
        argmin = idx;
      }
    }
    out.violations += violations;
    summary.push_back(Json{{"inequality", kInequalities[k]},
                           {"violations", violations},
                           {"min_slack", json_number(min_slack)},
                           {"argmin_index", argmin}});
  }
  for (std::size_t idx = 0; idx < outcomes.size(); ++idx) {
    for (std::size_t k = 0; k < kInequalities.size(); ++k) {
      if (!active[k]) continue;
      const Outcome& o = outcomes[idx];
      t.rows.push_back({idx, o.n, kInequalities[k], json_number(o.slack[k]), json_number(o.tol[k]),
                        within(o.slack[k], o.tol[k])});
    }
  }
  out.report["summary"] = std::move(summary);
  return out;
}

}  // namespace permabound::cli
