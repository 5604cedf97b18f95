#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "mono2d/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mono2d: planar monotone-field toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("overrides", overrides, "key=value overrides");

  std::string bundle_dir;
  CLI::App* report = app.add_subcommand("report", "summarize a bundle directory");
  report->add_option("bundle", bundle_dir, "bundle directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      mono2d::RunConfig cfg = mono2d::parse_config(config_path, overrides);
      mono2d::OutputBundle bundle = mono2d::run_scenario(cfg);
      std::printf("%s: %s (bundle %s)\n",
                  bundle.exit_code == 0 ? "ok" : "failed",
                  bundle.message.c_str(), bundle.dir.c_str());
      return bundle.exit_code;
    }
    std::fputs(mono2d::report_bundle(bundle_dir).c_str(), stdout);
    return 0;
  } catch (const mono2d::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
