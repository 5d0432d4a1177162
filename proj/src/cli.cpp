#include "ecoepi/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecoepi/dynamics.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/experiments.hpp"
#include "ecoepi/output.hpp"
#include "ecoepi/report.hpp"
#include "ecoepi/stability.hpp"

#ifndef ECOEPI_BUNDLED_CONFIG_DIR
#define ECOEPI_BUNDLED_CONFIG_DIR "configs"
#endif

namespace ecoepi {

namespace {

namespace fs = std::filesystem;

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open output file for writing");
  out << content;
  if (!out) throw ConfigError(path + ": write failed");
}

// The monitor needs mu, which the classical variant does not carry.
std::optional<BoundednessBound> default_monitor(const ParameterSet& params, const State& x0) {
  if (params.variant == Variant::Classical) return std::nullopt;
  return boundedness_bound(params, x0);
}

void emit_trajectory(const Trajectory& traj, const std::string& csv_path,
                     const std::string& svg_path, const std::string& svg_title) {
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text_file(csv_path, csv.str());
    std::cout << "wrote " << csv_path << " (" << traj.samples.size() << " samples)\n";
  }
  if (!svg_path.empty()) {
    write_text_file(svg_path, render_trajectory_svg(traj, svg_title));
    std::cout << "wrote " << svg_path << "\n";
  }
}

}  // namespace

std::string bundled_config_dir() {
  if (const char* env = std::getenv("ECOEPI_CONFIG_DIR"); env && *env) return env;
  if (fs::exists("configs/fig1.cfg")) return "configs";
  return ECOEPI_BUNDLED_CONFIG_DIR;
}

std::string figure_config_path(int id) {
  return bundled_config_dir() + "/fig" + std::to_string(id) + ".cfg";
}

ScenarioConfig load_figure_scenario(int id) {
  return parse_scenario_file(figure_config_path(id), RequiredSections{true, true});
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"ecoepidemic predator-prey models with herd-boundary disease incidence: "
               "equilibria, stability, bifurcation thresholds and trajectories"};
  app.require_subcommand(1);

  std::string config_path, out_path, outdir = ".", sweep_param = "m";
  bool dump_config = false;
  double sweep_from = 0.0, sweep_to = 0.0;
  std::size_t sweep_steps = 0;
  int figure_id = 0;

  auto* sim = app.add_subcommand("simulate", "integrate a scenario and write the trajectory CSV");
  sim->add_option("--config", config_path, "scenario file")->required();
  sim->add_option("--out", out_path, "trajectory CSV path (default: [output] csv, else stdout)");
  sim->add_flag("--dump-config", dump_config, "print the parsed scenario and exit");

  auto* eqc = app.add_subcommand("equilibria", "report equilibria, feasibility and thresholds");
  eqc->add_option("--config", config_path, "scenario file")->required();
  eqc->add_flag("--dump-config", dump_config, "print the parsed scenario and exit");

  auto* stc = app.add_subcommand(
      "stability", "equilibria report plus eigenvalues, Routh-Hurwitz verdicts and the exchange");
  stc->add_option("--config", config_path, "scenario file")->required();
  stc->add_flag("--dump-config", dump_config, "print the parsed scenario and exit");

  auto* swc = app.add_subcommand("sweep", "scan predator mortality and locate the exchange");
  swc->add_option("--config", config_path, "scenario file")->required();
  swc->add_option("--param", sweep_param, "swept parameter (only m is supported)");
  swc->add_option("--from", sweep_from, "lower end of the scan")->required();
  swc->add_option("--to", sweep_to, "upper end of the scan")->required();
  swc->add_option("--steps", sweep_steps, "number of grid points (>= 2)")->required();
  swc->add_option("--out", out_path, "sweep CSV path (default: [output] csv, else stdout)");
  swc->add_flag("--dump-config", dump_config, "print the parsed scenario and exit");

  auto* fgc = app.add_subcommand("figure", "reproduce one bundled scenario (CSV + SVG + report)");
  fgc->add_option("id", figure_id, "scenario number")->required()->check(CLI::Range(1, 3));
  fgc->add_option("--outdir", outdir, "output directory (default .)");
  fgc->add_option("--config", config_path, "override the bundled scenario file");
  fgc->add_flag("--dump-config", dump_config, "print the parsed scenario and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) {
      const ScenarioConfig cfg = parse_scenario_file(config_path, RequiredSections{true, true});
      if (dump_config) {
        std::cout << dump_scenario(cfg);
        return 0;
      }
      const Trajectory traj =
          integrate(cfg.params, *cfg.initial, *cfg.integrate, default_monitor(cfg.params, *cfg.initial));
      emit_trajectory(traj, out_path.empty() ? cfg.output.csv : out_path, cfg.output.svg,
                      std::string("trajectory (") + variant_name(cfg.params.variant) + ")");
      return 0;
    }

    if (*eqc || *stc) {
      const ScenarioConfig cfg = parse_scenario_file(config_path, RequiredSections{false, false});
      if (dump_config) {
        std::cout << dump_scenario(cfg);
        return 0;
      }
      const std::string text = analysis_report(cfg.params, stc->parsed());
      std::cout << text;
      if (!cfg.output.report.empty()) write_text_file(cfg.output.report, text);
      return 0;
    }

    if (*swc) {
      const ScenarioConfig cfg = parse_scenario_file(config_path, RequiredSections{false, false});
      if (dump_config) {
        std::cout << dump_scenario(cfg);
        return 0;
      }
      if (sweep_param != "m")
        throw ConfigError("only --param m is supported, got '" + sweep_param + "'");
      const SweepResult sweep = sweep_mortality(cfg.params, sweep_from, sweep_to, sweep_steps);
      std::ostringstream csv;
      write_sweep_csv(csv, sweep);
      const std::string target = out_path.empty() ? cfg.output.csv : out_path;
      if (target.empty()) {
        std::cout << csv.str();
      } else {
        write_text_file(target, csv.str());
        std::cout << "wrote " << target << " (" << sweep.points.size() << " grid points)\n";
        if (sweep.detected_transcritical)
          std::cout << "stability exchange detected at m = "
                    << format_double(*sweep.detected_transcritical) << " (grid spacing "
                    << format_double(sweep.grid_spacing) << ")\n";
        else
          std::cout << "no stability exchange inside the scanned interval\n";
      }
      return 0;
    }

    if (*fgc) {
      const ScenarioConfig cfg = config_path.empty()
                                     ? load_figure_scenario(figure_id)
                                     : parse_scenario_file(config_path, RequiredSections{true, true});
      if (dump_config) {
        std::cout << dump_scenario(cfg);
        return 0;
      }
      const FigureReport fig =
          reproduce_figure(figure_id, cfg.params, *cfg.initial, *cfg.integrate);

      fs::create_directories(outdir);
      const std::string base = outdir + "/fig" + std::to_string(figure_id);
      std::ostringstream csv;
      write_trajectory_csv(csv, fig.trajectory);
      write_text_file(base + ".csv", csv.str());
      write_text_file(base + ".svg",
                      render_trajectory_svg(fig.trajectory,
                                            "scenario " + std::to_string(figure_id) + " (toxic)"));
      const std::string text = figure_report_text(fig);
      write_text_file(base + "_report.txt", text);
      std::cout << text;
      std::cout << "\nwrote " << base << ".csv, " << base << ".svg, " << base << "_report.txt\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace ecoepi
