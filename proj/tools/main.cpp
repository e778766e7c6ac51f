#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uncert/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Variance bound verification for observable pairs and triples"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* verify = app.add_subcommand("verify", "Evaluate the relations named in a config file");
  verify->add_option("--config", config_path, "JSON config file")->required();

  uncert::SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Tabulate bound curves and random-perp clouds over a state family");
  sweep->add_option("--preset", sweep_opt.preset, "State family: fig1 or fig2")->required();
  sweep->add_option("--phi", sweep_opt.phi, "Azimuthal angle in radians (default 0)");
  sweep->add_option("--grid", sweep_opt.grid, "Number of theta grid points (default 200)");
  sweep->add_option("--samples", sweep_opt.samples,
                    "Random perps per theta (default 20 for fig1, 15 for fig2)");
  sweep->add_option("--seed", sweep_opt.seed, "Root seed for the perp clouds (default 0)");
  sweep->add_option("--out", sweep_opt.out_path, "Output file")->required();
  sweep->add_option("--format", sweep_opt.format, "Output format: csv or json (default csv)");

  uncert::AppendixOptions appendix_opt;
  CLI::App* appendix = app.add_subcommand(
      "appendix", "Tabulate the two-angle bound coefficients and audit the resulting family");
  appendix->add_option("--grid", appendix_opt.grid, "Angle grid resolution (default 720)");
  appendix->add_option("--seed", appendix_opt.seed, "Root seed for the audit (default 1905)");
  appendix->add_option("--audit-instances", appendix_opt.audit_instances,
                       "Random observable triples to audit (default 100)");
  appendix->add_option("--out", appendix_opt.out_path, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? uncert::exit_ok : uncert::exit_input_error;
  }

  try {
    if (verify->parsed()) return uncert::run_verify(uncert::load_config(config_path), std::cout);
    if (sweep->parsed()) return uncert::run_sweep(sweep_opt, std::cout);
    return uncert::run_appendix(appendix_opt, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return uncert::exit_input_error;
  }
}
