#include <algorithm>
#include <cmath>
#include <string>

#include "common.hpp"
#include "permabound/betheopt.hpp"
#include "permabound/capacity.hpp"
#include "permabound/cli/corpus.hpp"
#include "permabound/error.hpp"
#include "permabound/exactperm.hpp"
#include "permabound/parallel.hpp"

namespace permabound::cli {

namespace {

struct Probe {
  int n = 0;
  double log_per = 0.0;
  double slack = 0.0;
};

}  // namespace

CommandResult cmd_probe(const ProbeOptions& opts, const RunConfig& cfg) {
  const std::string& conj = opts.conjecture;
  if (conj != "strong" && conj != "mild" && conj != "optimizational" && conj != "cap_product" && conj != "sidak" &&
      conj != "lms") {
    throw Error(ErrorCode::kDomainError, "unknown conjecture '" + conj + "'");
  }
  const std::string& corpus = opts.corpus;
  if (corpus != "random" && corpus != "regular" && corpus != "dominant" && corpus != "kn") {
    throw Error(ErrorCode::kDomainError, "unknown corpus '" + corpus + "' (expected random, regular, dominant or kn)");
  }
  if (opts.n_min < 1 || opts.n_max < opts.n_min) throw Error(ErrorCode::kDomainError, "need 1 <= n-min <= n-max");
  if (corpus != "kn" && opts.n_max > kExactPermanentSampleMaxN) {
    throw Error(ErrorCode::kTooLarge, "probes need n <= " + std::to_string(kExactPermanentSampleMaxN));
  }
  if (corpus == "regular" && opts.n_min < opts.r) throw Error(ErrorCode::kDomainError, "regular corpus needs n >= r");
  if (opts.bins < 1) throw Error(ErrorCode::kDomainError, "need bins >= 1");

  // The K_n corpus is one matrix per even n in range; the others draw `count`.
  std::vector<int> kn_sizes;
  if (corpus == "kn") {
    for (int n = std::max(2, opts.n_min + opts.n_min % 2); n <= opts.n_max; n += 2) kn_sizes.push_back(n);
    if (kn_sizes.empty()) throw Error(ErrorCode::kDomainError, "the range contains no even n");
  } else if (opts.count < 1) {
    throw Error(ErrorCode::kDomainError, "need count >= 1");
  }
  const std::size_t total = corpus == "kn" ? kn_sizes.size() : static_cast<std::size_t>(opts.count);

  std::vector<Probe> probes(total);
  parallel_for(total, cfg.threads, [&](std::size_t idx) {
    Matrix p;
    double lp = 0.0;
    if (corpus == "kn") {
      p = k_counterexample(kn_sizes[idx]);
      lp = log_perm_kn(kn_sizes[idx]).log();
    } else {
      if (corpus == "random") p = corpus_random(cfg.seed, idx, opts.n_min, opts.n_max);
      if (corpus == "dominant") p = corpus_dominant(cfg.seed, idx, opts.n_min, opts.n_max);
      if (corpus == "regular") p = corpus_regular(cfg.seed, idx, opts.n_min, opts.n_max, opts.r);
      lp = permanent_ryser(p).log();
    }
    const int n = p.n();
    const double half_ln2 = 0.5 * std::log(2.0) * n;
    double slack = 0.0;
    if (conj == "strong") slack = half_ln2 + log_F(p) - lp;
    if (conj == "mild") slack = half_ln2 + opts.c * log_F(p) - lp;
    if (conj == "optimizational") slack = half_ln2 + maximize_cw(p, cfg.tol, cfg.max_iter).value - lp;
    if (conj == "cap_product") {
      double caps = 0.0;
      for (int j = 0; j < n; ++j) caps += capacity_qj(p, j).value;
      slack = lp - caps;
    }
    if (conj == "sidak") slack = lp - log_sd(p);
    if (conj == "lms") slack = lp - log_lms(p);
    probes[idx] = {n, lp, slack};
  });

  CommandResult out;
  out.report = start_report("probe", cfg);
  out.report["conjecture"] = conj;
  out.report["corpus"] = corpus;
  if (conj == "mild") out.report["c"] = json_number(opts.c);
  if (corpus == "regular") out.report["r"] = opts.r;

  Table& t = out.table;
  t.name = "matrices";
  t.columns = {"index", "n", "log_per", "slack", "holds"};
  double lo = kInf, hi = -kInf;
  long double sum = 0.0L;
  long failures = 0;
  std::size_t argmin = 0;
  Json first_failure = nullptr;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Probe& pr = probes[idx];
    t.rows.push_back({idx, pr.n, json_number(pr.log_per), json_number(pr.slack), pr.slack >= 0.0});
    if (pr.slack < lo) {
      lo = pr.slack;
      argmin = idx;
    }
    hi = std::max(hi, pr.slack);
    sum += pr.slack;
    if (pr.slack < 0.0) {
      if (first_failure.is_null()) first_failure = Json{{"index", idx}, {"n", pr.n}};
      ++failures;
    }
  }
  std::vector<long> counts(static_cast<std::size_t>(opts.bins), 0);
  const double width = (hi - lo) / opts.bins;
  for (const Probe& pr : probes) {
    const int b = width > 0.0 ? std::min(opts.bins - 1, static_cast<int>((pr.slack - lo) / width)) : 0;
    ++counts[static_cast<std::size_t>(b)];
  }
  Json bins = Json::array();
  for (int b = 0; b < opts.bins; ++b) {
    bins.push_back(Json{{"lower", json_number(lo + b * width)},
                        {"upper", json_number(b + 1 == opts.bins ? hi : lo + (b + 1) * width)},
                        {"count", counts[static_cast<std::size_t>(b)]}});
  }
  out.report["summary"] = Json{{"matrices", total},
                               {"min_slack", json_number(lo)},
                               {"max_slack", json_number(hi)},
                               {"mean_slack", json_number(static_cast<double>(sum / total))},
                               {"argmin_index", argmin},
                               {"counterexamples", failures},
                               {"first_counterexample", first_failure},
                               {"histogram", std::move(bins)}};
  return out;
}

}  // namespace permabound::cli
