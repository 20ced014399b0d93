#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "whitney/config.hpp"
#include "whitney/error.hpp"
#include "whitney/experiments.hpp"
#include "whitney/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Moduli of smoothness, best approximation and K-functional experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::string format;
  int jobs = 0;
  bool timing = false;

  const char* names[] = {"whitney", "johnen", "taylor", "lemma21", "modulus", "bestapprox", "kfunc"};
  const char* descriptions[] = {
      "shrink sweep of E_r, Omega_r and W_r with the lower-bound margin",
      "t-sweep of the K-functional bracket against Omega_r",
      "Taylor remainder against the derivative bound sum",
      "derivative-inequality ratios (d = 1)",
      "single evaluation of omega, w, Omega and W",
      "single evaluation of E_r",
      "single evaluation of the K-functional bracket",
  };
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "JSON experiment configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output file (default: config output.path, else stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", jobs, "worker threads over rows")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", timing, "fill runtime_ms (output is no longer reproducible)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  whitney::ExperimentConfig cfg;
  try {
    cfg = whitney::load_config(config_path);
  } catch (const whitney::ConfigError& e) {
    std::cerr << "whitney-lab: " << e.what() << "\n";
    return 2;
  }
  if (!out_path.empty()) cfg.output_path = out_path;
  if (!format.empty()) cfg.format = format;
  if (timing) cfg.timing = true;
  if (jobs > 0) {
    cfg.jobs = jobs;
  } else if (const char* env = std::getenv("WHITNEY_LAB_THREADS")) {
    try {
      cfg.jobs = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "whitney-lab: ignoring invalid WHITNEY_LAB_THREADS='" << env << "'\n";
    }
  }

  try {
    const whitney::RunResult result = whitney::run_experiment(command, cfg);
    whitney::emit(result.rows, cfg.output_path, cfg.format);
    if (result.errors > 0) std::cerr << "whitney-lab: " << result.errors << " failed row(s)\n";
    if (result.hard_failures > 0) {
      std::cerr << "whitney-lab: " << result.hard_failures << " hard assertion failure(s)\n";
      return 1;
    }
  } catch (const whitney::ConfigError& e) {
    std::cerr << "whitney-lab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "whitney-lab: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
