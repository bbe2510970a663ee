#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtm/analysis.hpp"
#include "mtm/machine.hpp"
#include "mtm/reduction.hpp"

namespace mtm {

/// Optional fitting knobs carried by the campaign config.
struct FitOptions {
  std::optional<double> sigma_y_guess;      // Pa
  std::optional<double> plastic_threshold;  // strain
  std::optional<double> offset_yield;       // strain offset, e.g. 0.002
  bool hardening = false;
};

/// One campaign: shared calibration, named materials, beam templates and
/// either an explicit machine list or design targets. SI units throughout
/// (m, Pa); no locale, decimal point only.
struct CampaignConfig {
  Calibration calibration;
  std::map<std::string, MaterialModel> materials;
  std::string specimen_material;  // key into materials
  ActuatorSpec actuator_template;
  SpecimenSpec specimen_template;

  bool has_explicit_machines = false;
  std::vector<Machine> machines;          // explicit mode
  std::vector<double> design_targets;     // design mode
  std::pair<double, double> length_bounds{0.0, 0.0};

  double noise_sd = 0.0;  // m
  std::uint64_t seed = 0;
  FitOptions fit;
};

CampaignConfig load_campaign_config(const std::string& path);

/// Machines file: same machine schema as the config's explicit list;
/// materials are referenced by name and resolved against the config.
void save_machines(const std::string& path,
                   const std::vector<Machine>& machines,
                   const std::string& material_name);
std::vector<Machine> load_machines(const std::string& path,
                                   const CampaignConfig& config);

/// A serialized fit: result, film thickness, label and the points it used.
struct FitFile {
  std::string label;
  double thickness = 0.0;  // m
  FitResult fit;
  std::vector<StressStrainPoint> points;
};

void save_fit(const std::string& path, const FitFile& fit);
FitFile load_fit(const std::string& path);

}  // namespace mtm
