#include <cmath>
#include <string>

#include "common.hpp"
#include "permabound/cli/corpus.hpp"
#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"

namespace permabound::cli {

namespace {

constexpr int kOracleMaxN = 12;  // closed forms are also checked against Ryser up to here

}  // namespace

CommandResult cmd_ratio_scan(const RatioScanOptions& opts, const RunConfig& cfg) {
  const std::string& fam = opts.family;
  if (fam != "example1" && fam != "example2" && fam != "uniform" && fam != "regular") {
    throw Error(ErrorCode::kDomainError,
                "unknown family '" + fam + "' (expected example1, example2, uniform or regular)");
  }
  if (opts.n_min < 1 || opts.n_max < opts.n_min) throw Error(ErrorCode::kDomainError, "need 1 <= n-min <= n-max");
  if (fam == "regular" && opts.n_max > kExactPermanentSampleMaxN) {
    throw Error(ErrorCode::kTooLarge, "regular family needs n <= " + std::to_string(kExactPermanentSampleMaxN));
  }
  if (fam == "regular" && opts.r < 1) throw Error(ErrorCode::kDomainError, "need r >= 1");

  double reference = 0.0;
  std::string reference_label = "zero";
  if (fam == "example1") {
    reference = 0.5 * (1.0 - std::log(2.0));
    reference_label = "half_ln_e_over_2";
  } else if (fam == "example2") {
    reference = 0.5 * std::log(2.0);
    reference_label = "half_ln_2";
  } else if (fam == "regular") {
    reference = std::lgamma(opts.r + 1.0) / opts.r - std::log(static_cast<double>(opts.r)) - log_G(opts.r);
    reference_label = "ln_B_r_over_G_r";
  }

  CommandResult out;
  out.report = start_report("ratio-scan", cfg);
  out.report["family"] = fam;
  if (fam == "regular") out.report["r"] = opts.r;
  out.report["reference"] = json_number(reference);
  out.report["reference_label"] = reference_label;

  Table& t = out.table;
  t.name = "rows";
  t.columns = {"n", "log_per", "log_F", "log_ratio_per_n", "reference", "oracle_error", "holds"};
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    if ((fam == "example1" && n < 2) || (fam == "example2" && n % 2 != 0) || (fam == "regular" && n < opts.r)) {
      continue;
    }
    Matrix p;
    double lp = 0.0;
    if (fam == "example1") {
      p = family_example1(n);
      const double a = 1.0 / (2.0 * (n - 1));
      lp = permanent_aJbI(n, a, 0.5 - a).log();
    } else if (fam == "example2") {
      p = family_example2(n / 2);
      lp = -(n / 2) * std::log(2.0);
    } else if (fam == "uniform") {
      p = Matrix::constant(n, 1.0 / n);
      lp = log_vdw(n);
    } else {
      p = corpus_regular(cfg.seed, static_cast<std::uint64_t>(n), n, n, opts.r);
      lp = permanent_ryser(p, cfg.threads).log();
    }
    const double lf = log_F(p);
    const double ratio = (lp - lf) / n;
    Json oracle = nullptr;
    bool ok = within(log_slack(lp, lf), log_tol(1e-9, lp));
    if (fam != "regular" && n <= kOracleMaxN) {
      const double err = std::abs(permanent_ryser(p, cfg.threads).log() - lp);
      oracle = json_number(err);
      ok = ok && err <= log_tol(1e-10, lp);
    }
    if (fam == "example2") ok = ok && std::abs(ratio - reference) <= 1e-10;
    if (fam == "regular") ok = ok && ratio <= reference + log_tol(1e-9, lp) / n;
    if (!ok) ++out.violations;
    t.rows.push_back({n, json_number(lp), json_number(lf), json_number(ratio), json_number(reference), oracle, ok});
  }
  return out;
}

}  // namespace permabound::cli
