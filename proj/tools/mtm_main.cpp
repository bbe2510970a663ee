#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mtm/analysis.hpp"
#include "mtm/config.hpp"
#include "mtm/csv.hpp"
#include "mtm/errors.hpp"
#include "mtm/machine.hpp"
#include "mtm/random.hpp"
#include "mtm/reduction.hpp"
#include "mtm/svg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolverOrFit = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool strict = false;
};

void ensure_out_dir(const CommonArgs& args) {
  fs::create_directories(args.out_dir);
}

/// Machines for simulate/reduce come from the config's explicit list when
/// present, otherwise from the machines file a prior `design` run wrote.
std::vector<mtm::Machine> resolve_machines(const mtm::CampaignConfig& config,
                                           const CommonArgs& args) {
  if (config.has_explicit_machines) {
    return config.machines;
  }
  const fs::path file = fs::path(args.out_dir) / "machines.json";
  if (!fs::exists(file)) {
    throw mtm::ConfigError("config declares design targets but '" +
                           file.string() +
                           "' does not exist; run `design` first");
  }
  return mtm::load_machines(file.string(), config);
}

void report_row_errors(const std::string& path,
                       const std::vector<mtm::CsvRowError>& errors,
                       bool strict) {
  for (const mtm::CsvRowError& error : errors) {
    std::cerr << path << ": line " << error.line << ": " << error.message
              << " (row skipped)\n";
  }
  if (strict && !errors.empty()) {
    throw std::invalid_argument(path + ": " +
                                std::to_string(errors.size()) +
                                " malformed row(s) with --strict");
  }
}

int run_design(const CommonArgs& args) {
  const mtm::CampaignConfig config =
      mtm::load_campaign_config(args.config_path);
  if (config.has_explicit_machines) {
    throw mtm::ConfigError(args.config_path +
                           ": config lists explicit machines; nothing to "
                           "design");
  }
  const mtm::DesignOutcome outcome = mtm::design_campaign(
      config.actuator_template, config.specimen_template,
      config.design_targets, config.length_bounds);

  ensure_out_dir(args);
  const fs::path out(args.out_dir);
  mtm::save_machines((out / "machines.json").string(),
                     outcome.design.machines, config.specimen_material);
  mtm::write_points((out / "predicted_points.csv").string(),
                    outcome.design.predicted_points);

  if (!outcome.infeasible.empty()) {
    for (const mtm::TargetInfeasibility& miss : outcome.infeasible) {
      std::cerr << "target strain " << mtm::format_double(miss.target)
                << " is infeasible: achievable range ["
                << mtm::format_double(miss.achievable_min) << ", "
                << mtm::format_double(miss.achievable_max)
                << "] within the length bounds\n";
    }
    return kExitUsage;
  }
  std::cout << "designed " << outcome.design.machines.size()
            << " machine(s)\n";
  return 0;
}

int run_simulate(const CommonArgs& args) {
  mtm::CampaignConfig config = mtm::load_campaign_config(args.config_path);
  if (args.seed_given) {
    config.seed = args.seed;
  }
  const std::vector<mtm::Machine> machines = resolve_machines(config, args);

  std::vector<mtm::MeasurementRecord> records;
  records.reserve(machines.size());
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const mtm::EquilibriumState state = mtm::solve_equilibrium(machines[i]);
    records.push_back(mtm::synthesize_measurement(
        machines[i], state, config.noise_sd,
        mtm::derive_seed(config.seed, i)));
  }

  ensure_out_dir(args);
  const fs::path out(args.out_dir);
  mtm::write_measurements((out / "measurements.csv").string(), records);
  std::cout << "simulated " << records.size() << " measurement(s)\n";
  return 0;
}

int run_reduce(const CommonArgs& args) {
  const mtm::CampaignConfig config =
      mtm::load_campaign_config(args.config_path);
  const std::vector<mtm::Machine> machines = resolve_machines(config, args);

  const fs::path out(args.out_dir);
  const std::string measurements_path = (out / "measurements.csv").string();
  const mtm::MeasurementsReadResult read =
      mtm::read_measurements(measurements_path);
  report_row_errors(measurements_path, read.row_errors, args.strict);

  const mtm::ReductionResult result =
      mtm::reduce_campaign(read.records, machines, config.calibration);
  for (const mtm::ReductionFailure& failure : result.failures) {
    std::cerr << "machine '" << failure.machine_id
              << "': " << failure.reason << " (record skipped)\n";
  }
  if (args.strict && !result.failures.empty()) {
    throw std::invalid_argument(std::to_string(result.failures.size()) +
                                " unreducible record(s) with --strict");
  }

  ensure_out_dir(args);
  mtm::write_points((out / "points.csv").string(), result.points);
  std::cout << "reduced " << result.points.size() << " point(s)\n";
  return 0;
}

int run_fit(const CommonArgs& args) {
  const mtm::CampaignConfig config =
      mtm::load_campaign_config(args.config_path);
  const fs::path out(args.out_dir);
  const std::string points_path = (out / "points.csv").string();
  const mtm::PointsReadResult read = mtm::read_points(points_path);
  report_row_errors(points_path, read.row_errors, args.strict);

  const mtm::MaterialModel& material =
      config.materials.at(config.specimen_material);
  const double elastic_modulus = material.youngs_modulus;
  const double threshold =
      config.fit.plastic_threshold
          ? *config.fit.plastic_threshold
          : mtm::default_plastic_threshold(read.points, elastic_modulus,
                                           config.fit.sigma_y_guess);
  const double offset = config.fit.offset_yield.value_or(0.0);

  mtm::FitResult fit =
      mtm::fit_yield(read.points, elastic_modulus, threshold, offset);
  if (config.fit.hardening) {
    const mtm::FitResult hardening =
        mtm::fit_hardening(read.points, elastic_modulus, threshold);
    fit.model_fit = hardening.model_fit;
    fit.plateau_like = hardening.plateau_like;
  }

  mtm::FitFile file;
  file.label = material.label.empty() ? config.specimen_material
                                      : material.label;
  file.thickness = config.specimen_template.beam.thickness;
  file.fit = fit;
  file.points = read.points;

  ensure_out_dir(args);
  mtm::save_fit((out / "fit.json").string(), file);
  std::cout << "fitted yield strength "
            << mtm::format_double(fit.yield_strength) << " Pa from "
            << fit.points_used << " plastic point(s)\n";
  return 0;
}

int run_report(const CommonArgs& args,
               const std::vector<std::string>& fit_paths) {
  std::vector<mtm::FitFile> fits;
  std::map<double, mtm::FitResult> by_thickness;
  for (const std::string& path : fit_paths) {
    mtm::FitFile fit = mtm::load_fit(path);
    if (by_thickness.count(fit.thickness) != 0) {
      throw std::invalid_argument("duplicate film thickness " +
                                  mtm::format_double(fit.thickness) +
                                  " across fit files");
    }
    by_thickness.emplace(fit.thickness, fit.fit);
    fits.push_back(std::move(fit));
  }

  const mtm::ThicknessComparison comparison =
      mtm::compare_thicknesses(by_thickness);

  ensure_out_dir(args);
  const fs::path out(args.out_dir);

  std::string report = "yield strength comparison across film thicknesses\n";
  report += "fits:\n";
  for (const mtm::FitFile& fit : fits) {
    report += "  " + fit.label + ": thickness " +
              mtm::format_double(fit.thickness) + " m, yield " +
              mtm::format_double(fit.fit.yield_strength) + " Pa\n";
  }
  report += "\n";
  report += mtm::format_comparison(comparison);
  {
    std::ofstream file((out / "report.txt").string(), std::ios::trunc);
    if (!file) {
      throw std::invalid_argument("cannot open report.txt for writing");
    }
    file << report;
  }

  std::vector<mtm::PlotSeries> series;
  for (const mtm::FitFile& fit : fits) {
    mtm::PlotSeries plot;
    plot.label = fit.label;
    plot.draw_markers = true;
    for (const mtm::StressStrainPoint& point : fit.points) {
      plot.points.emplace_back(point.strain, point.stress);
    }
    series.push_back(std::move(plot));
  }
  mtm::write_svg_plot((out / "stress_strain.svg").string(),
                      "Film stress-strain response", "log strain",
                      "stress (Pa)", series);

  std::cout << report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-tensile machine campaign toolkit: design machines, "
               "simulate displacement readouts, reduce them to stress-strain "
               "points and fit material parameters."};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> fit_paths;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* config_opt =
        cmd->add_option("--config", args.config_path, "campaign config JSON");
    if (needs_config) {
      config_opt->required();
    }
    cmd->add_option("--out", args.out_dir,
                    "directory for input/output artifacts");
    cmd->add_option("--seed", args.seed, "override the config RNG seed")
        ->each([&](const std::string&) { args.seed_given = true; });
    cmd->add_flag("--strict", args.strict,
                  "turn skippable row-level problems into hard errors");
  };

  CLI::App* design =
      app.add_subcommand("design", "solve actuator lengths for the target "
                                   "strains; writes machines.json and "
                                   "predicted_points.csv");
  add_common(design, true);
  CLI::App* simulate =
      app.add_subcommand("simulate", "forward-model every machine and write "
                                     "measurements.csv");
  add_common(simulate, true);
  CLI::App* reduce =
      app.add_subcommand("reduce", "turn measurements.csv into points.csv "
                                   "via the strain/stress reduction");
  add_common(reduce, true);
  CLI::App* fit =
      app.add_subcommand("fit", "fit yield strength (and optionally "
                                "hardening) from points.csv; writes "
                                "fit.json");
  add_common(fit, true);
  CLI::App* report =
      app.add_subcommand("report", "compare fits across thicknesses; writes "
                                   "report.txt and stress_strain.svg");
  add_common(report, false);
  report->add_option("fits", fit_paths, "fit JSON files to compare")
      ->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (design->parsed()) {
      return run_design(args);
    }
    if (simulate->parsed()) {
      return run_simulate(args);
    }
    if (reduce->parsed()) {
      return run_reduce(args);
    }
    if (fit->parsed()) {
      return run_fit(args);
    }
    if (report->parsed()) {
      return run_report(args, fit_paths);
    }
  } catch (const mtm::ConfigError& error) {
    std::cerr << "config error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const mtm::LookupError& error) {
    std::cerr << "lookup error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  } catch (const mtm::SolverError& error) {
    std::cerr << "solver error: " << error.what() << '\n';
    return kExitSolverOrFit;
  } catch (const mtm::FitError& error) {
    std::cerr << "fit error: " << error.what() << '\n';
    return kExitSolverOrFit;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitSolverOrFit;
  }
  return 0;
}
