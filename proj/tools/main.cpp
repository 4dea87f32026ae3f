#include <cstdio>
#include <exception>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "extinction_lab/experiments.hpp"
#include "extinction_lab/survival_law.hpp"

namespace el = extinction_lab;

namespace {

void print_summary(const el::RunReport& r) {
  fmt::print("command   {}\n", el::to_string(r.config.command));
  if (!r.regime.empty()) fmt::print("regime    {}\n", r.regime);
  if (r.lambda_f > 0.0) fmt::print("lambda_f  {:.6g}\n", r.lambda_f);
  if (r.critical_fitness) fmt::print("f_c       {:.6g}\n", *r.critical_fitness);
  fmt::print("horizon   {:.6g}\n", r.horizon);
  if (r.mean) {
    fmt::print("mean      MC {:.6g} +- {:.3g}; transform {:.6g}; quoted {:.6g}\n",
               r.mean->monte_carlo.mean, r.mean->monte_carlo.std_error,
               r.mean->transform_mean, r.mean->quoted_mean);
    fmt::print("          {}\n", r.mean->verdict);
  }
  for (const auto& g : r.gates) {
    fmt::print("gate      {:<10} {}  {}\n", g.name, g.passed ? "PASS" : "FAIL", g.detail);
  }
  for (const auto& f : r.files) fmt::print("wrote     {}\n", f.string());
  fmt::print("elapsed   {:.3f} s on {} worker(s)\n", r.elapsed_seconds, r.workers);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tagged-species survival in a fitness-ordered birth-death model"};
  app.require_subcommand(1);

  el::ExperimentConfig config;
  std::string t_grid = "auto";
  std::string f_grid = "auto";
  std::string window;
  double horizon = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", config.lambda, "birth rate");
    sub->add_option("--mu", config.mu, "death rate");
    sub->add_option("--dist", config.dist_spec, "uniform:a,b | exp:rate | table:<csv>");
    sub->add_option("--fitness", config.fitness, "tagged fitness f");
    sub->add_option("--k", config.k, "initial species at or below f");
    sub->add_option("--samples", config.samples, "Monte Carlo samples");
    sub->add_option("--horizon", horizon, "censoring horizon (default: derived)");
    sub->add_option("--t-grid", t_grid, "comma-separated times or 'auto'");
    sub->add_option("--seed", config.seed, "master seed");
    sub->add_option("--alpha", config.alpha, "KS significance level");
    sub->add_option("--out", config.out_dir, "output directory");
    sub->add_option("--threads", config.threads, "worker threads (0: automatic)");
  };

  for (const auto command :
       {el::Command::kSurvivalCurve, el::Command::kValidate, el::Command::kPhaseSweep,
        el::Command::kPopulationLln, el::Command::kAsymptotics}) {
    auto* sub = app.add_subcommand(std::string(el::to_string(command)));
    add_common(sub);
    if (command == el::Command::kPhaseSweep) {
      sub->add_option("--f-grid", f_grid, "comma-separated fitness values or 'auto'");
    }
    if (command == el::Command::kPopulationLln) {
      sub->add_option("--window", window, "a,b with f_c < a < b");
      sub->add_option("--runs", config.runs, "independent runs");
    }
    sub->callback([&config, command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? el::kExitOk : el::kExitConfigError;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      if (sub->count("--horizon") > 0) config.horizon = horizon;
    }
    config.t_grid = el::parse_real_list(t_grid);
    config.f_grid = el::parse_real_list(f_grid);
    if (!window.empty()) {
      const auto ab = el::parse_real_list(window);
      if (!ab || ab->size() != 2) throw el::ConfigError("--window expects a,b");
      config.window = {(*ab)[0], (*ab)[1]};
    }
    const auto report = el::run_experiment(config);
    print_summary(report);
    return report.exit_code();
  } catch (const el::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return el::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return el::kExitConfigError;
  } catch (const el::ConvergenceError& e) {
    fmt::print(stderr, "numerical error: {} (achieved {:.3g})\n", e.what(), e.achieved_error());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
