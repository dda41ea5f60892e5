#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace stgp::cli;
  CLI::App app{"stgp: space-time Galerkin projection of edge-element fields"};
  app.require_subcommand(1);

  std::string config;
  auto* project = app.add_subcommand("project", "Project a source field onto a target mesh and time grid");
  project->add_option("config", config, "Run configuration file")->required();

  std::string kind;
  long long n = 0;
  double mu = 1.0;
  std::string output;
  auto* meshgen = app.add_subcommand("meshgen", "Write a structured mesh");
  meshgen->add_option("kind", kind, "unit-square-tri | unit-cube-tet")->required();
  meshgen->add_option("n", n, "Subdivisions per side")->required();
  meshgen->add_option("mu", mu, "Permeability of every element")->required();
  meshgen->add_option("out", output, "Output stgp-mesh file")->required();

  std::string level;
  bool tamper = false;
  auto* verify = app.add_subcommand("verify", "Run the built-in oracle and invariant checks");
  verify->add_option("level", level, "quick | full")->required();
  verify->add_flag("--tamper-solver", tamper, "Perturb solver output (self-test of the checks)")
      ->group("");

  std::string file;
  auto* info = app.add_subcommand("info", "Summarize an stgp-mesh or stgp-field file");
  info->add_option("file", file, "File to inspect")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (*project) return cmd_project(config, std::cout, std::cerr);
  if (*meshgen) return cmd_meshgen(kind, n, mu, output, std::cerr);
  if (*verify) return cmd_verify(level, std::cout, std::cerr, {tamper});
  return cmd_info(file, std::cout, std::cerr);
}
