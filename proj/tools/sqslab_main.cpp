// Command-line front end: validate a config, run the full pipeline to CSV
// (plus a plot script), or list the Fabry-Perot resonances.
//
// Exit codes: 0 success, 2 config parse/validation error, 3 physics error
// (lasing threshold across the whole grid, branch point in the index),
// 1 anything else (I/O and unexpected failures).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqslab/sqslab.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& output_override,
                bool no_plot) {
  sqslab::RunConfig config = sqslab::load_config(config_path);
  if (!output_override.empty()) config.output_dir = output_override;
  if (no_plot) config.emit_plot = false;

  const sqslab::SpectrumTable table = sqslab::run_pipeline(config);

  std::filesystem::create_directories(config.output_dir);
  const std::filesystem::path out_dir(config.output_dir);
  const std::string csv_path = (out_dir / "spectrum.csv").string();
  sqslab::emit_csv(table, csv_path);
  std::cout << "wrote " << csv_path << "\n";
  if (config.emit_plot) {
    const std::string plot_path = (out_dir / "plot_spectrum.py").string();
    sqslab::emit_plot_script(table, "spectrum.csv", plot_path);
    std::cout << "wrote " << plot_path << "\n";
  }

  std::size_t lasing_rows = 0;
  for (auto flag : table.flags)
    if (flag == sqslab::RowFlag::lasing) ++lasing_rows;
  if (lasing_rows > 0)
    std::cout << "warning: " << lasing_rows << " samples at the lasing threshold\n";

  std::cout << "squeezed intervals: " << table.report.squeezed_intervals.size() << "\n";
  for (const auto& interval : table.report.squeezed_intervals)
    std::printf("  [%.9g, %.9g] eV\n", interval.energy_lo, interval.energy_hi);
  if (table.report.any_squeezed || !table.report.classification.empty())
    std::printf("global minimum: S_min/K = %.9g at %.9g eV\n",
                table.report.global_min_value, table.report.global_min_energy);
  return 0;
}

int resonances_command(const std::string& config_path) {
  const sqslab::RunConfig config = sqslab::load_config(config_path);
  const sqslab::DielectricResponse response = config.make_response();
  const sqslab::SlabTransfer transfer =
      sqslab::SlabTransfer::compute(response, config.geometry(), config.lasing_guard);
  if (transfer.all_lasing())
    throw sqslab::LasingThreshold("lasing threshold reached on the whole grid");
  const std::vector<double> peaks = sqslab::find_resonances(transfer);
  std::printf("# %zu resonances\n", peaks.size());
  for (double energy : peaks) std::printf("%.9f\n", energy);
  return 0;
}

int exit_code_for(const sqslab::Error& error) {
  if (dynamic_cast<const sqslab::ParseError*>(&error) ||
      dynamic_cast<const sqslab::ValidationError*>(&error) ||
      dynamic_cast<const sqslab::MalformedTable*>(&error) ||
      dynamic_cast<const sqslab::OutOfRange*>(&error))
    return 2;
  if (dynamic_cast<const sqslab::LasingThreshold*>(&error) ||
      dynamic_cast<const sqslab::BranchPointHit*>(&error) ||
      dynamic_cast<const sqslab::CrossoverSingularity*>(&error) ||
      dynamic_cast<const sqslab::TransparentMedium*>(&error) ||
      dynamic_cast<const sqslab::NonConvergent*>(&error))
    return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squeezed-light propagation spectra for an absorbing/amplifying slab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  bool no_plot = false;

  auto* run = app.add_subcommand("run", "run the pipeline and write spectrum.csv");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--output", output_override, "output directory override");
  run->add_flag("--no-plot", no_plot, "skip the plot script");

  auto* resonances =
      app.add_subcommand("resonances", "list Fabry-Perot resonance energies (eV)");
  resonances->add_option("--config", config_path, "config file")->required();

  auto* validate = app.add_subcommand("validate", "check a config and exit");
  validate->add_option("--config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) return run_command(config_path, output_override, no_plot);
    if (app.got_subcommand(resonances)) return resonances_command(config_path);
    sqslab::load_config(config_path);
    std::cout << "config OK\n";
    return 0;
  } catch (const sqslab::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
