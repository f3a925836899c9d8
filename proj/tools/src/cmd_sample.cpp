#include <cmath>
#include <fstream>
#include <string>

#include "common.hpp"
#include "permabound/error.hpp"

namespace permabound::cli {

CommandResult cmd_sample(const SampleOptions& opts, const RunConfig& cfg) {
  std::vector<double> values;
  std::vector<double>* keep = opts.per_sample_path.empty() ? nullptr : &values;
  McEstimate e;
  Json reference = nullptr;
  Json extra;
  const int r = opts.r, n = opts.n;
  if (opts.estimator == "perm") {
    e = estimate_expected_perm(opts.model, r, n, opts.samples, cfg.seed, cfg.threads, keep);
    // Limit of (E per)^(1/n) as n grows, the same for both models.
    const double ref = r * std::exp(log_G(r));
    reference = json_number(ref);
    const double root = e.mean > 0.0 ? std::pow(e.mean, 1.0 / n) : 0.0;
    extra["nth_root_mean"] = json_number(root);
    extra["relative_deviation"] = json_number(root / ref - 1.0);
  } else if (opts.estimator == "prob_boolean") {
    e = estimate_prob_boolean(opts.model, r, n, opts.samples, cfg.seed, cfg.threads, keep);
    const double ref = opts.model == Model::kBM ? std::exp(-0.5 * (r - 1) * (r - 1)) : std::exp(-0.5 * r * (r - 1));
    reference = json_number(ref);
    extra["z_score"] = json_number(e.std_error > 0.0 ? (e.mean - ref) / e.std_error : kInf);
  } else if (opts.estimator == "emd") {
    e = estimate_emd(opts.model, r, n, opts.m, opts.samples, cfg.seed, cfg.threads, keep);
    extra["m"] = opts.m;
  } else {
    throw Error(ErrorCode::kDomainError,
                "unknown estimator '" + opts.estimator + "' (expected perm, prob_boolean or emd)");
  }

  if (keep) {
    std::ofstream f(opts.per_sample_path);
    if (!f) throw Error(ErrorCode::kParseError, "cannot write " + opts.per_sample_path);
    f << "index,value\n";
    for (std::size_t k = 0; k < values.size(); ++k) f << k << ',' << format_double(values[k]) << '\n';
  }

  CommandResult out;
  out.report = start_report("sample", cfg);
  out.report["model"] = std::string(to_string(opts.model));
  out.report["r"] = r;
  out.report["n"] = n;
  out.report["estimator"] = opts.estimator;
  out.report["estimate"] = to_json(e);
  out.report["reference"] = reference;
  out.report["diagnostics"] = extra.is_null() ? Json::object() : extra;

  Table& t = out.table;
  t.name = "estimates";
  t.columns = {"model", "r", "n", "estimator", "samples", "mean", "std_error", "reference"};
  t.rows.push_back({std::string(to_string(opts.model)), r, n, opts.estimator, e.samples, json_number(e.mean),
                    json_number(e.std_error), reference});
  return out;
}

}  // namespace permabound::cli
