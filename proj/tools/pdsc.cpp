// Command-line front end for the benchmark experiments.
//
//   pdsc <tension|clamped|indent|calibrate> [--config FILE] [--variant V ...]
//        [--out DIR] [--dump-bonds] [--set key=value ...]
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure,
// 4 a variant stopped on bond inversion.

#include <pdsc/experiments.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

constexpr int exit_config = 2;
constexpr int exit_solver = 3;
constexpr int exit_inversion = 4;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peridynamic surface-correction benchmarks"};
  std::string experiment;
  std::string config_file;
  std::vector<std::string> variants;
  std::string out_dir;
  bool dump_bonds = false;
  std::vector<std::string> overrides;

  app.add_option("experiment", experiment, "tension, clamped, indent or calibrate")->required();
  app.add_option("--config", config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--variant", variants, "variants to run (default: all for the experiment)")
      ->delimiter(',');
  app.add_option("--out", out_dir, "output directory for summary.txt and CSV files");
  app.add_flag("--dump-bonds", dump_bonds, "write bonds.csv for peridynamic variants");
  app.add_option("--set", overrides, "override a configuration key (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  pdsc::bench::RunResult result;
  try {
    auto config = pdsc::bench::default_config(pdsc::bench::parse_experiment(experiment));
    if (!config_file.empty())
      pdsc::bench::apply_file(config, config_file);
    for (const auto& o : overrides)
      pdsc::bench::apply_override(config, o);
    if (!variants.empty())
      config.variants = variants;
    if (!out_dir.empty())
      config.out_dir = out_dir;
    if (dump_bonds)
      config.dump_bonds = true;
    config.validate();

    result = pdsc::bench::run(config);
    if (!config.out_dir.empty())
      pdsc::bench::write_run(result, config.out_dir);
  } catch (const pdsc::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const pdsc::RankDeficientError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return exit_solver;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_config;
  }

  for (const auto& [key, value] : result.summary.entries())
    std::cout << key << " = " << value << '\n';
  if (result.inversion_abort) {
    std::cerr << "bond inversion: loading ramp stopped early (see summary)\n";
    return exit_inversion;
  }
  return 0;
}
