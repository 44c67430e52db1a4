#include <CLI11.hpp>
#include <iostream>

#include "susyqm/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Partner potentials, scattering and spectra from a superpotential"};
  std::string config_path;
  std::string output_path;
  app.add_option("config", config_path, "key = value run description")->required();
  app.add_option("-o,--output", output_path, "output file (overrides the config's output key)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return susyqm::run_file(config_path, std::cerr, output_path);
}
