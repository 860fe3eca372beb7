#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  using namespace plasmod::cli;

  CLI::App app{"Quasi-static plasmon resonance calculations"};
  app.set_version_flag("--version", std::string("plasmod ") + kVersion);
  app.require_subcommand(1);

  RunOptions options;
  for (const auto& [name, help] : {std::pair{"sphere-resonance", "energy of a Drude sphere over an omega/tau sweep"},
                                   std::pair{"shell-modes", "lossless resonances of a nanoshell or layered sphere"},
                                   std::pair{"heat-profile", "steady temperature around a heated sphere"},
                                   std::pair{"blowup-scan", "shell or sphere energy as the Drude loss goes to zero"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", options.config_path, "JSON configuration file")->required();
    sub->add_option("--out", options.out_path, "output file (default: stdout)");
    sub->add_option("--format", options.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->callback([&options, sub] { options.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  return run(options, std::cout, std::cerr);
}
