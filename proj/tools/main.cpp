// tgd: fit, test and simulate the transmuted geometric distribution on
// count data.  Exit codes: 0 ok, 1 data/usage error, 2 convergence error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tgd/data.hpp"
#include "tgd/model_compare.hpp"
#include "tgd/report.hpp"

namespace {

struct GlobalOpts {
  std::string output = "text";  // text|json|csv
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string data_path;
  std::string embedded_name;
};

tgd::RngSeed resolve_seed(const GlobalOpts& g) {
  if (g.seed_set) return {g.seed};
  if (const char* env = std::getenv("TGD_SEED"))
    return {std::strtoull(env, nullptr, 10)};
  return {12345};
}

tgd::Dataset resolve_dataset(const GlobalOpts& g) {
  if (!g.embedded_name.empty()) return tgd::embedded(g.embedded_name);
  if (!g.data_path.empty())
    return tgd::Dataset{g.data_path, tgd::load_freq_csv(g.data_path),
                        tgd::Dataset::Source::File};
  throw tgd::DataError("no dataset: pass --data <csv> or --embedded <name>");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmuted geometric distribution toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--output", g.output, "Output format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", g.seed, "RNG seed (fallback: TGD_SEED, then 12345)")
      ->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--data", g.data_path, "Frequency CSV `value,count`");
  app.add_option("--embedded", g.embedded_name,
                 "Embedded dataset: ntg or doctor_visit");

  // ---- fit ----
  auto* fit_cmd = app.add_subcommand("fit", "Fit models and compare by AIC");
  std::vector<std::string> models = {"tgd", "geometric", "negbin"};
  bool with_em = true;
  fit_cmd->add_option("--models", models,
                      "Any of: tgd, geometric, negbin (default all)");
  fit_cmd->add_flag("!--no-em", with_em, "Skip the EM fit of the TGD");

  // ---- test ----
  auto* test_cmd = app.add_subcommand("test", "LRT, score and Wald tests of alpha = 0");

  // ---- describe ----
  auto* describe_cmd = app.add_subcommand("describe", "Descriptive statistics");

  // ---- hazard-table ----
  auto* hazard_cmd = app.add_subcommand("hazard-table",
                                        "Reliability functions on a y grid");
  double hz_q = 0.5, hz_alpha = 0.0;
  std::int64_t hz_max_y = 20;
  hazard_cmd->add_option("--q", hz_q, "q parameter")->required();
  hazard_cmd->add_option("--alpha", hz_alpha, "alpha parameter")->required();
  hazard_cmd->add_option("--max-y", hz_max_y, "largest y (default 20)");

  // ---- sample ----
  auto* sample_cmd = app.add_subcommand("sample", "Draw from TGD(q, alpha)");
  double sm_q = 0.5, sm_alpha = 0.0;
  std::size_t sm_n = 10;
  bool sm_mixture = false;
  sample_cmd->add_option("--q", sm_q, "q parameter")->required();
  sample_cmd->add_option("--alpha", sm_alpha, "alpha parameter")->required();
  sample_cmd->add_option("-n,--n", sm_n, "number of draws");
  sample_cmd->add_flag("--mixture", sm_mixture,
                       "use the latent min/max mechanism instead of inversion");

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo studies");
  sim_cmd->require_subcommand(1);
  std::vector<double> sim_q = {0.25, 0.5, 0.75};
  std::vector<double> sim_alpha = {-0.7, -0.3, 0.3, 0.7};
  std::vector<int> sim_n = {25, 50, 75, 100};
  int sim_reps = 1000;
  double sim_level = 0.05;
  std::vector<std::string> sim_methods = {"mle", "em"};
  bool sim_trends = false;
  int sim_threads = 0;

  auto* bias_cmd = sim_cmd->add_subcommand("bias", "Estimator bias/SE study");
  bias_cmd->add_option("--q", sim_q, "q grid");
  bias_cmd->add_option("--alpha", sim_alpha, "alpha grid");
  bias_cmd->add_option("--n", sim_n, "sample-size grid");
  bias_cmd->add_option("--reps", sim_reps, "replications per cell");
  bias_cmd->add_option("--methods", sim_methods, "mle and/or em");
  bias_cmd->add_flag("--trends", sim_trends, "append monotonicity verdicts");
  bias_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");

  auto* power_cmd = sim_cmd->add_subcommand("power", "Test power study");
  std::vector<double> pw_q = {0.30, 0.45, 0.60, 0.75};
  std::vector<double> pw_alpha = {-0.7, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.7};
  std::vector<int> pw_n = {100, 300, 500, 1000};
  power_cmd->add_option("--q", pw_q, "q grid");
  power_cmd->add_option("--alpha", pw_alpha, "effect-size grid");
  power_cmd->add_option("--n", pw_n, "sample-size grid");
  power_cmd->add_option("--reps", sim_reps, "replications per cell");
  power_cmd->add_option("--level", sim_level, "significance level");
  power_cmd->add_flag("--trends", sim_trends, "append monotonicity verdicts");
  power_cmd->add_option("--threads", sim_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*describe_cmd) {
      const tgd::Dataset ds = resolve_dataset(g);
      const tgd::DescriptiveStats stats = tgd::describe(ds.table);
      if (g.output == "json")
        std::cout << tgd::describe_json(ds.name, stats);
      else if (g.output == "csv")
        std::cout << tgd::describe_csv(ds.name, stats);
      else
        std::cout << tgd::describe_text(ds.name, stats);
    } else if (*fit_cmd) {
      const tgd::Dataset ds = resolve_dataset(g);
      tgd::CompareOptions opts;
      opts.tgd_mle = opts.tgd_em = opts.geometric = opts.negbin = false;
      for (const std::string& m : models) {
        if (m == "tgd") {
          opts.tgd_mle = true;
          opts.tgd_em = with_em;
        } else if (m == "geometric") {
          opts.geometric = true;
        } else if (m == "negbin") {
          opts.negbin = true;
        } else {
          throw tgd::DataError("unknown model `" + m + "`");
        }
      }
      opts.tests = opts.tgd_mle;
      const tgd::ComparisonReport report = tgd::compare(ds.table, opts, ds.name);
      std::cout << (g.output == "json" ? tgd::report_json(report)
                                       : tgd::report_text(report));
      for (const tgd::ModelRow& row : report.models)
        if (row.estimates.empty() && !row.error.empty()) return 2;
    } else if (*test_cmd) {
      const tgd::Dataset ds = resolve_dataset(g);
      const tgd::FitResult alt = tgd::null_anchored_mle(ds.table);
      std::vector<tgd::TestResult> tests = {tgd::lrt(ds.table, alt),
                                            tgd::score_test(ds.table),
                                            tgd::wald_test(ds.table, alt)};
      if (g.output == "json")
        std::cout << tgd::tests_json(ds.name, tests);
      else if (g.output == "csv")
        std::cout << tgd::tests_csv(ds.name, tests);
      else
        std::cout << tgd::tests_text(ds.name, tests);
    } else if (*hazard_cmd) {
      const tgd::TgdParams params{hz_q, hz_alpha};
      params.validate();
      if (g.output == "text")
        std::cout << tgd::hazard_table_text(params, hz_max_y);
      else
        tgd::hazard_table_csv(params, hz_max_y, std::cout);
    } else if (*sample_cmd) {
      const tgd::TgdParams params{sm_q, sm_alpha};
      params.validate();
      const auto draws = sm_mixture
                             ? tgd::sample_mixture(params, sm_n, resolve_seed(g))
                             : tgd::sample(params, sm_n, resolve_seed(g));
      for (std::int64_t d : draws) std::cout << d << "\n";
    } else if (*bias_cmd) {
      tgd::BiasStudyConfig config;
      config.q_grid = sim_q;
      config.alpha_grid = sim_alpha;
      config.n_grid = sim_n;
      config.replications = sim_reps;
      config.seed = resolve_seed(g);
      config.threads = sim_threads;
      config.with_mle = config.with_em = false;
      for (const std::string& m : sim_methods) {
        if (m == "mle") config.with_mle = true;
        else if (m == "em") config.with_em = true;
        else throw tgd::DataError("unknown method `" + m + "` (mle or em)");
      }
      if (!config.with_mle && !config.with_em)
        throw tgd::DataError("simulate bias: no method selected");
      const tgd::BiasStudyResult result = tgd::run_bias_study(config);
      if (g.output == "json")
        std::cout << tgd::bias_study_json(result);
      else
        tgd::bias_study_csv(result, std::cout);
      if (sim_trends)
        std::cout << "\n" << tgd::trend_text(tgd::trend_report(result));
    } else if (*power_cmd) {
      tgd::PowerStudyConfig config;
      config.q_grid = pw_q;
      config.alpha_grid = pw_alpha;
      config.n_grid = pw_n;
      config.replications = sim_reps;
      config.level = sim_level;
      config.seed = resolve_seed(g);
      config.threads = sim_threads;
      const tgd::PowerStudyResult result = tgd::run_power_study(config);
      if (g.output == "json")
        std::cout << tgd::power_study_json(result);
      else
        tgd::power_study_csv(result, std::cout);
      if (sim_trends)
        std::cout << "\n" << tgd::trend_text(tgd::trend_report(result));
    }
  } catch (const tgd::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tgd::EstimationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
