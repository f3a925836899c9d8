#include <cmath>
#include <string>

#include "common.hpp"
#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/parallel.hpp"

namespace permabound::cli {

CommandResult cmd_almc(const AlmcOptions& opts, const RunConfig& cfg) {
  const int r = opts.r, n = opts.n;
  if (r < 1 || n < 1) throw Error(ErrorCode::kDomainError, "need r >= 1 and n >= 1");
  if (n > kSubpermDpMaxN) throw Error(ErrorCode::kTooLarge, "per_m needs n <= " + std::to_string(kSubpermDpMaxN));
  if (opts.m && (*opts.m < 1 || *opts.m > n)) throw Error(ErrorCode::kDomainError, "need 1 <= m <= n");
  if (!(opts.t > 0.0 && opts.t <= 1.0)) throw Error(ErrorCode::kDomainError, "need 0 < t <= 1");

  std::vector<Matrix> corpus;
  if (opts.mode == "enumerate") {
    corpus = enumerate_ri(r, n, opts.cap);
  } else if (opts.mode == "sample") {
    if (opts.samples < 1) throw Error(ErrorCode::kDomainError, "need samples >= 1");
    corpus.resize(static_cast<std::size_t>(opts.samples));
    parallel_for(corpus.size(), cfg.threads, [&](std::size_t k) {
      Rng rng = Rng::substream(cfg.seed, k);
      corpus[k] = sample_model(opts.model, r, n, rng);
    });
  } else {
    throw Error(ErrorCode::kDomainError, "unknown mode '" + opts.mode + "' (expected enumerate or sample)");
  }

  std::vector<std::vector<double>> per_m(corpus.size());
  parallel_for(corpus.size(), cfg.threads, [&](std::size_t k) { per_m[k] = subperm_vector(corpus[k]).values; });

  CommandResult out;
  out.report = start_report("almc", cfg);
  out.report["r"] = r;
  out.report["n"] = n;
  out.report["mode"] = opts.mode;
  if (opts.mode == "sample") out.report["model"] = std::string(to_string(opts.model));
  out.report["matrices"] = corpus.size();

  Table& t = out.table;
  t.name = "per_m";
  t.columns = {"m", "log_sf", "min_log_per_m", "slack", "violations", "argmin_index"};
  const int m_lo = opts.m ? *opts.m : 1;
  const int m_hi = opts.m ? *opts.m : n;
  for (int m = m_lo; m <= m_hi; ++m) {
    const double sf = log_sf(r, n, m);
    const double tol = log_tol(1e-9, sf);
    double min_log = kInf;
    std::size_t argmin = 0;
    long violations = 0;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
      const double v = per_m[k][m] > 0.0 ? std::log(per_m[k][m]) : -kInf;
      if (!within(log_slack(v, sf), tol)) ++violations;
      if (v < min_log) {
        min_log = v;
        argmin = k;
      }
    }
    out.violations += violations;
    t.rows.push_back({m, json_number(sf), json_number(min_log), json_number(log_slack(min_log, sf)), violations,
                      argmin});
  }

  Json conv = Json::array();
  bool monotone = true;
  double prev = kInf;
  for (int cn : opts.convergence_n) {
    if (cn < 1) throw Error(ErrorCode::kDomainError, "convergence sizes must be positive");
    const int m = static_cast<int>(std::llround(opts.t * cn));
    const double te = static_cast<double>(m) / cn;
    const double lhs = log_sf(r, cn, m) / cn;
    const double g = g_curve(r, te);
    const double diff = std::abs(lhs - g);
    if (!(diff < prev)) monotone = false;
    prev = diff;
    conv.push_back(Json{{"n", cn},
                        {"m", m},
                        {"t", json_number(te)},
                        {"log_sf_over_n", json_number(lhs)},
                        {"g", json_number(g)},
                        {"abs_difference", json_number(diff)}});
  }
  out.report["convergence"] = Json{{"t", json_number(opts.t)}, {"rows", std::move(conv)}, {"monotone", monotone}};
  return out;
}

}  // namespace permabound::cli
