// Command line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or config error.
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kssim/runner.hpp"
#include "kssim/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume simulator for a chemotaxis system with logistic growth"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* sim = app.add_subcommand("simulate", "run one experiment from a config file");
  sim->add_option("config", config_path, "experiment config file")->required();
  sim->add_option("--set", overrides, "override as section.key=value (repeatable)")
      ->expected(1)
      ->allow_extra_args(false);

  auto* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
  sweep->add_option("config", config_path, "experiment config file")->required();
  sweep->add_option("--set", overrides, "override as section.key=value (repeatable)")
      ->expected(1)
      ->allow_extra_args(false);

  double cond_a = 0.0, cond_chi = 0.0;
  int cond_n = 1;
  auto* cond =
      app.add_subcommand("check-conditions", "report the boundedness conditions");
  cond->add_option("--a", cond_a, "growth rate a")->required();
  cond->add_option("--chi", cond_chi, "sensitivity chi")->required();
  cond->add_option("--n", cond_n, "spatial dimension")->required();

  std::string suite = "full";
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", suite, "fast or full (default full)")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed() || sweep->parsed()) {
      kssim::ExperimentConfig cfg = kssim::load_config(config_path);
      for (const auto& o : overrides) kssim::apply_override(cfg, o);
      if (sim->parsed()) {
        const kssim::SimulationOutcome oc = kssim::run_simulate(cfg);
        std::fputs(oc.summary_json.c_str(), stdout);
      } else {
        const kssim::SweepOutcome so = kssim::run_sweep(cfg);
        std::fputs(so.csv_text.c_str(), stdout);
      }
      return 0;
    }
    if (cond->parsed()) {
      std::fputs(kssim::check_conditions_json(cond_a, cond_chi, cond_n).c_str(),
                 stdout);
      return 0;
    }
    // verify
    const auto results = kssim::run_verify(suite);
    size_t passed = 0;
    for (const auto& r : results) {
      std::printf("%s\n", kssim::criterion_line(r).c_str());
      if (r.pass) ++passed;
    }
    std::printf("%zu/%zu criteria passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
