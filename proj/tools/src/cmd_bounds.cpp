#include <string>

#include "common.hpp"
#include "permabound/bound_report.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/matrix_io.hpp"

namespace permabound::cli {

CommandResult cmd_bounds(const BoundsOptions& opts, const RunConfig& cfg) {
  Matrix p = read_matrix_file(opts.matrix_file);
  CommandResult out;
  out.report = start_report("bounds", cfg);
  out.report["matrix_file"] = opts.matrix_file;

  // per(original) = per(scaled) / prod(row factors) / prod(col factors).
  Json scaling = nullptr;
  if (opts.sinkhorn) {
    SinkhornResult s = sinkhorn_scale(p, 1e-13, 1'000'000);
    scaling = Json{{"iterations", s.iterations}, {"log_factor_product", json_number(s.scale.log_product())}};
    p = std::move(s.scaled);
  }
  out.report["sinkhorn"] = scaling;

  BoundReportOptions ro;
  ro.max_cw = !opts.skip_cw;
  ro.cw_tol = cfg.tol;
  ro.cw_max_iter = cfg.max_iter;
  ro.holder = opts.holder;
  ro.threads = cfg.threads;
  const BoundReport r = make_bound_report(p, opts.matrix_file, ro);
  out.report["report"] = to_json(r);

  Table& t = out.table;
  t.name = "checks";
  t.columns = {"check", "proven", "slack", "tolerance", "holds"};
  auto add = [&](const std::string& name, bool proven, double slack, double tol) {
    const bool ok = within(slack, tol);
    t.rows.push_back({name, proven, json_number(slack), json_number(tol), ok});
    if (proven && !ok) ++out.violations;
  };

  const double log_f = r.log_F;
  add("lms_ge_F", true, log_slack(r.log_lms, log_f), log_tol(1e-12, log_f));
  add("sd_ge_F", true, log_slack(r.log_sd, log_f), log_tol(1e-12, log_f));
  if (r.log_max_cw) add("max_cw_ge_F", true, log_slack(*r.log_max_cw, log_f), 1e-7);
  if (r.log_per_exact) {
    const double lp = r.log_per_exact->log();
    const double tol = log_tol(1e-9, lp);
    if (r.log_max_cw) add("per_ge_max_cw", true, log_slack(lp, *r.log_max_cw), 1e-7);
    add("per_ge_F", true, log_slack(lp, log_f), tol);
    add("per_ge_vdw", true, log_slack(lp, r.log_vdw), tol);
    add("per_ge_gurvits", true, log_slack(lp, r.log_gurvits_bound), tol);
    if (r.log_bregman) add("bregman_ge_per", true, log_slack(*r.log_bregman, lp), tol);
    if (r.log_holder_upper) {
      add(opts.holder == HolderVariant::kSumSquared ? "holder_ge_per" : "holder_sum_of_squares_ge_per",
          opts.holder == HolderVariant::kSumSquared, log_slack(*r.log_holder_upper, lp), tol);
    }
    const Matrix tilde = schrijver_tilde(p);
    double rhs = 0.0;
    for (double v : p.data()) rhs += v < 1.0 ? std::log1p(-v) : -kInf;
    add("schrijver", true, log_slack(permanent_ryser(tilde, cfg.threads).log(), rhs), tol);
  }
  return out;
}

}  // namespace permabound::cli
