#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circleflow/driver.hpp"
#include "circleflow/errors.hpp"

using namespace circleflow;

int main(int argc, char** argv) {
  CLI::App app{"circleflow: pseudospectral simulation of the circle PDE "
               "family dm/dt = -u m' - lambda u' m, m = Phi u, with "
               "runtime-verified conservation laws"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> dts;
  std::vector<int> ns;

  auto* run = app.add_subcommand("run", "execute one run from a JSON config");
  run->add_option("config", config_path, "path to the run config (JSON)")
      ->required();

  auto* conv = app.add_subcommand(
      "convergence", "self-convergence study over time steps or grid sizes");
  conv->add_option("config", config_path, "path to the run config (JSON)")
      ->required();
  auto* dts_opt =
      conv->add_option("--dts", dts, "time steps (>= 3)")->delimiter(',');
  auto* ns_opt =
      conv->add_option("--ns", ns, "grid sizes (>= 3, nested powers of two)")
          ->delimiter(',');
  dts_opt->excludes(ns_opt);

  auto* cmp = app.add_subcommand(
      "compare-backends",
      "integrate with both backends and report their discrepancy");
  cmp->add_option("config", config_path, "path to the run config (JSON)")
      ->required();

  app.add_subcommand("catalog",
                     "list the equation presets as machine-readable JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("catalog")) return cmd_catalog(std::cout);
    const RunConfig cfg = load_run_config(config_path);
    if (app.got_subcommand("run")) return cmd_run(cfg);
    if (app.got_subcommand("convergence")) return cmd_convergence(cfg, dts, ns);
    if (app.got_subcommand("compare-backends")) return cmd_compare_backends(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
