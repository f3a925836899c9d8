#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "permabound/cli/commands.hpp"
#include "permabound/error.hpp"

using namespace permabound;
using namespace permabound::cli;

int main(int argc, char** argv) {
  CLI::App app{"Permanent bounds, Bethe functional and random regular models"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  RunConfig cfg;
  cfg.threads = default_threads();
  std::string format = "json";
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Optimizer tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--max-iter", cfg.max_iter, "Optimizer iteration cap")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads (default: PERMABOUND_THREADS or all cores)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.output_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "Output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));

  const std::map<std::string, HolderVariant> holders{{"sum-squared", HolderVariant::kSumSquared},
                                                     {"sum-of-squares", HolderVariant::kSumOfSquares}};
  std::string almc_model = "bm", sample_model = "bm";

  BoundsOptions bounds;
  auto* sc_bounds = app.add_subcommand("bounds", "Every bound for one matrix, with proven inequalities checked");
  sc_bounds->add_option("matrix", bounds.matrix_file, "CSV or JSON matrix file")->required()->check(
      CLI::ExistingFile);
  sc_bounds->add_flag("--sinkhorn", bounds.sinkhorn, "Scale to doubly stochastic first");
  sc_bounds->add_flag("--skip-cw", bounds.skip_cw, "Skip the CW maximization");
  sc_bounds->add_option("--holder", bounds.holder, "Hoelder row norm")
      ->transform(CLI::CheckedTransformer(holders, CLI::ignore_case));

  VerifyOptions verify;
  auto* sc_verify = app.add_subcommand("verify", "Check proven inequalities over a random doubly stochastic corpus");
  sc_verify->add_option("--count", verify.count)->capture_default_str();
  sc_verify->add_option("--n-min", verify.n_min)->capture_default_str();
  sc_verify->add_option("--n-max", verify.n_max)->capture_default_str();
  sc_verify->add_option("--inequality", verify.inequality,
                        "all, chain, lms_sd, per_ge_cw, cw_ge_F, schrijver, lms_ge_F, sd_ge_F, vdw, gurvits, holder")
      ->capture_default_str();

  CounterexampleOptions cex;
  auto* sc_cex = app.add_subcommand("counterexample", "LMS and SD against per(K_n)");
  sc_cex->add_option("--n-min", cex.n_min)->capture_default_str();
  sc_cex->add_option("--n-max", cex.n_max)->capture_default_str();
  sc_cex->add_option("--materialize-max", cex.materialize_max, "Largest n checked on an explicit K_n")
      ->capture_default_str();

  AlmcOptions almc;
  int almc_m = 0;
  auto* sc_almc = app.add_subcommand("almc", "per_m against SF(r,n,m) and ln SF / n against g_r");
  sc_almc->add_option("--r", almc.r)->capture_default_str();
  sc_almc->add_option("--n", almc.n)->capture_default_str();
  auto* m_opt = sc_almc->add_option("--m", almc_m, "Single m (default: every m in 1..n)");
  sc_almc->add_option("--mode", almc.mode)->capture_default_str()->check(CLI::IsMember({"enumerate", "sample"}));
  sc_almc->add_option("--samples", almc.samples)->capture_default_str();
  sc_almc->add_option("--model", almc_model)->capture_default_str()->check(CLI::IsMember({"bm", "hw"}));
  sc_almc->add_option("--cap", almc.cap, "Enumeration cap")->capture_default_str();
  sc_almc->add_option("--t", almc.t, "Dimer density for the convergence table")->capture_default_str();
  sc_almc->add_option("--convergence-n", almc.convergence_n)->delimiter(',')->capture_default_str();

  RatioScanOptions ratio;
  auto* sc_ratio = app.add_subcommand("ratio-scan", "(ln per - ln F) / n across a family");
  sc_ratio->add_option("--family", ratio.family)
      ->capture_default_str()
      ->check(CLI::IsMember({"example1", "example2", "uniform", "regular"}));
  sc_ratio->add_option("--n-min", ratio.n_min)->capture_default_str();
  sc_ratio->add_option("--n-max", ratio.n_max)->capture_default_str();
  sc_ratio->add_option("--r", ratio.r)->capture_default_str();

  ProbeOptions probe;
  auto* sc_probe = app.add_subcommand("probe", "Slack of a conjecture over a corpus (never affects the exit code)");
  sc_probe->add_option("--conjecture", probe.conjecture)
      ->capture_default_str()
      ->check(CLI::IsMember({"strong", "mild", "optimizational", "cap_product", "sidak", "lms"}));
  sc_probe->add_option("--corpus", probe.corpus)
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "regular", "dominant", "kn"}));
  sc_probe->add_option("--count", probe.count)->capture_default_str();
  sc_probe->add_option("--n-min", probe.n_min)->capture_default_str();
  sc_probe->add_option("--n-max", probe.n_max)->capture_default_str();
  sc_probe->add_option("--r", probe.r)->capture_default_str();
  sc_probe->add_option("--c", probe.c, "Exponent of F for the mild conjecture")->capture_default_str();
  sc_probe->add_option("--bins", probe.bins)->capture_default_str();

  SampleOptions sample;
  auto* sc_sample = app.add_subcommand("sample", "Monte Carlo estimates under the BM or HW model");
  sc_sample->add_option("--model", sample_model)->capture_default_str()->check(CLI::IsMember({"bm", "hw"}));
  sc_sample->add_option("--r", sample.r)->capture_default_str();
  sc_sample->add_option("--n", sample.n)->capture_default_str();
  sc_sample->add_option("--samples", sample.samples)->capture_default_str();
  sc_sample->add_option("--estimator", sample.estimator)
      ->capture_default_str()
      ->check(CLI::IsMember({"perm", "prob_boolean", "emd"}));
  sc_sample->add_option("--m", sample.m, "Matching size for emd")->capture_default_str();
  sc_sample->add_option("--per-sample", sample.per_sample_path, "Also write every sample value as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  cfg.format = format == "csv" ? Format::kCsv : Format::kJson;
  if (m_opt->count() > 0) almc.m = almc_m;
  almc.model = parse_model(almc_model);
  sample.model = parse_model(sample_model);

  try {
    CommandResult result;
    bool conjecture = false;
    if (*sc_bounds) result = cmd_bounds(bounds, cfg);
    if (*sc_verify) result = cmd_verify(verify, cfg);
    if (*sc_cex) result = cmd_counterexample(cex, cfg);
    if (*sc_almc) result = cmd_almc(almc, cfg);
    if (*sc_ratio) result = cmd_ratio_scan(ratio, cfg);
    if (*sc_probe) {
      result = cmd_probe(probe, cfg);
      conjecture = true;
    }
    if (*sc_sample) result = cmd_sample(sample, cfg);

    const std::string text = render(result, cfg.format);
    if (cfg.output_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) throw Error(ErrorCode::kParseError, "cannot write " + cfg.output_path);
      f << text;
    }
    return (result.violations == 0 || conjecture) ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
