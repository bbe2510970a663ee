#include "mtm/config.hpp"

#include <fstream>
#include <set>
#include <utility>

#include "json.hpp"

#include "mtm/errors.hpp"

namespace mtm {

namespace {

using nlohmann::json;

const json& require(const json& node, const char* key,
                    const std::string& context) {
  const auto it = node.find(key);
  if (it == node.end()) {
    throw ConfigError(context + ": missing required key '" + key + "'");
  }
  return *it;
}

double require_number(const json& node, const char* key,
                      const std::string& context) {
  const json& value = require(node, key, context);
  if (!value.is_number()) {
    throw ConfigError(context + ": '" + key + "' must be a number");
  }
  return value.get<double>();
}

double require_positive(const json& node, const char* key,
                        const std::string& context) {
  const double value = require_number(node, key, context);
  if (!(value > 0.0)) {
    throw ConfigError(context + ": '" + key + "' must be positive");
  }
  return value;
}

std::string require_string(const json& node, const char* key,
                           const std::string& context) {
  const json& value = require(node, key, context);
  if (!value.is_string()) {
    throw ConfigError(context + ": '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

MaterialModel material_from_json(const json& node,
                                 const std::string& context) {
  if (!node.is_object()) {
    throw ConfigError(context + ": material record must be an object");
  }
  const double youngs = require_positive(node, "E", context);
  const std::string law = require_string(node, "law", context);
  std::string label = node.value("label", std::string{});
  try {
    if (law == "linear-elastic") {
      return make_linear_elastic(youngs, std::move(label));
    }
    if (law == "perfectly-plastic") {
      return make_perfectly_plastic(
          youngs, require_positive(node, "sigma_y", context),
          std::move(label));
    }
    if (law == "power-law") {
      const double sigma_y = require_positive(node, "sigma_y", context);
      const double n = require_number(node, "n", context);
      const double k = node.value("K", 0.0);
      return make_power_law(youngs, sigma_y, n, k, std::move(label));
    }
  } catch (const InvalidModelError& error) {
    throw ConfigError(context + ": " + error.what());
  }
  throw ConfigError(context + ": unknown law '" + law +
                    "' (expected linear-elastic, perfectly-plastic or "
                    "power-law)");
}

json material_to_json(const MaterialModel& material) {
  json node;
  node["E"] = material.youngs_modulus;
  switch (material.law) {
    case HardeningLaw::LinearElastic:
      node["law"] = "linear-elastic";
      break;
    case HardeningLaw::PerfectlyPlastic:
      node["law"] = "perfectly-plastic";
      node["sigma_y"] = material.yield_strength;
      break;
    case HardeningLaw::PowerLaw:
      node["law"] = "power-law";
      node["sigma_y"] = material.yield_strength;
      node["n"] = material.hardening_exponent;
      node["K"] = material.hardening_coefficient;
      break;
  }
  if (!material.label.empty()) {
    node["label"] = material.label;
  }
  return node;
}

double alpha_dt_from_json(const json& cal, const char* direct_key,
                          const char* beams_key, const std::string& context) {
  if (cal.contains(direct_key)) {
    return require_number(cal, direct_key, context);
  }
  if (cal.contains(beams_key)) {
    const json& beams = cal.at(beams_key);
    if (!beams.is_array() || beams.empty()) {
      throw ConfigError(context + ": '" + std::string(beams_key) +
                        "' must be a non-empty array of [length, dl] pairs");
    }
    std::vector<std::pair<double, double>> observations;
    for (const json& entry : beams) {
      if (!entry.is_array() || entry.size() != 2) {
        throw ConfigError(context + ": '" + std::string(beams_key) +
                          "' entries must be [length, dl] pairs");
      }
      observations.emplace_back(entry[0].get<double>(),
                                entry[1].get<double>());
    }
    try {
      return calibrate_alpha_dt(observations);
    } catch (const CalibrationError& error) {
      throw ConfigError(context + ": " + error.what());
    }
  }
  throw ConfigError(context + ": needs either '" + std::string(direct_key) +
                    "' or '" + std::string(beams_key) + "'");
}

BeamSpec beam_from_json(const json& node, const std::string& context,
                        bool length_required) {
  BeamSpec beam;
  if (length_required || node.contains("length")) {
    beam.deposited_length = require_positive(node, "length", context);
  }
  beam.width = require_positive(node, "width", context);
  beam.thickness = require_positive(node, "thickness", context);
  return beam;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open '" + path + "' for reading");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& error) {
    throw ConfigError("'" + path + "': " + error.what());
  }
}

}  // namespace

CampaignConfig load_campaign_config(const std::string& path) {
  const json root = parse_file(path);
  if (!root.is_object()) {
    throw ConfigError("'" + path + "': top level must be an object");
  }
  CampaignConfig config;

  {
    const json& cal = require(root, "calibration", path);
    config.calibration.alpha_dt_al = alpha_dt_from_json(
        cal, "alpha_dt_al", "free_beams_al", path + ".calibration");
    config.calibration.alpha_dt_ac = alpha_dt_from_json(
        cal, "alpha_dt_ac", "free_beams_ac", path + ".calibration");
    config.calibration.source = cal.value("source", std::string{});
    try {
      validate(config.calibration);
    } catch (const CalibrationError& error) {
      throw ConfigError(path + ".calibration: " + error.what());
    }
  }

  {
    const json& materials = require(root, "materials", path);
    if (!materials.is_object() || materials.empty()) {
      throw ConfigError(path + ": 'materials' must be a non-empty object");
    }
    for (const auto& [name, record] : materials.items()) {
      config.materials.emplace(
          name, material_from_json(record, path + ".materials." + name));
    }
    config.specimen_material = require_string(root, "specimen_material", path);
    if (config.materials.find(config.specimen_material) ==
        config.materials.end()) {
      throw ConfigError(path + ": specimen_material '" +
                        config.specimen_material +
                        "' is not declared in 'materials'");
    }
  }

  {
    const json& actuator = require(root, "actuator", path);
    config.actuator_template.beam =
        beam_from_json(actuator, path + ".actuator", false);
    config.actuator_template.youngs_modulus =
        require_positive(actuator, "E", path + ".actuator");
    config.actuator_template.alpha_dt = config.calibration.alpha_dt_ac;

    const json& specimen = require(root, "specimen", path);
    config.specimen_template.beam =
        beam_from_json(specimen, path + ".specimen", true);
    config.specimen_template.material =
        config.materials.at(config.specimen_material);
    config.specimen_template.alpha_dt = config.calibration.alpha_dt_al;
  }

  const bool has_machines = root.contains("machines");
  const bool has_design = root.contains("design");
  if (has_machines == has_design) {
    throw ConfigError(path + ": exactly one of 'machines' and 'design' must "
                      "be present");
  }

  if (has_machines) {
    config.has_explicit_machines = true;
    const json& machines = root.at("machines");
    if (!machines.is_array() || machines.empty()) {
      throw ConfigError(path + ": 'machines' must be a non-empty array");
    }
    std::set<std::string> seen_ids;
    for (const json& entry : machines) {
      const std::string context = path + ".machines";
      Machine machine;
      machine.id = require_string(entry, "id", context);
      if (!seen_ids.insert(machine.id).second) {
        throw ConfigError(context + ": duplicate machine id '" + machine.id +
                          "'");
      }
      machine.actuator = config.actuator_template;
      machine.actuator.beam.deposited_length =
          entry.contains("actuator_length")
              ? require_positive(entry, "actuator_length", context)
              : config.actuator_template.beam.deposited_length;
      if (!(machine.actuator.beam.deposited_length > 0.0)) {
        throw ConfigError(context + ": machine '" + machine.id +
                          "' needs 'actuator_length' (no template length "
                          "set)");
      }
      machine.specimen = config.specimen_template;
      if (entry.contains("specimen_length")) {
        machine.specimen.beam.deposited_length =
            require_positive(entry, "specimen_length", context);
      }
      config.machines.push_back(std::move(machine));
    }
  } else {
    const json& design = root.at("design");
    const json& targets = require(design, "targets", path + ".design");
    if (!targets.is_array()) {
      throw ConfigError(path + ".design: 'targets' must be an array");
    }
    for (const json& value : targets) {
      if (!value.is_number()) {
        throw ConfigError(path + ".design: targets must be numbers");
      }
      config.design_targets.push_back(value.get<double>());
    }
    const json& bounds = require(design, "length_bounds", path + ".design");
    if (!bounds.is_array() || bounds.size() != 2 || !bounds[0].is_number() ||
        !bounds[1].is_number()) {
      throw ConfigError(path + ".design: 'length_bounds' must be "
                        "[L_min, L_max]");
    }
    config.length_bounds = {bounds[0].get<double>(), bounds[1].get<double>()};
    if (!(config.length_bounds.first > 0.0) ||
        !(config.length_bounds.second > config.length_bounds.first)) {
      throw ConfigError(path + ".design: length_bounds must satisfy "
                        "0 < L_min < L_max");
    }
  }

  if (root.contains("noise_sd")) {
    config.noise_sd = require_number(root, "noise_sd", path);
    if (config.noise_sd < 0.0) {
      throw ConfigError(path + ": 'noise_sd' must be non-negative");
    }
  }
  if (root.contains("seed")) {
    const json& seed = root.at("seed");
    if (!seed.is_number_unsigned()) {
      throw ConfigError(path + ": 'seed' must be a non-negative integer");
    }
    config.seed = seed.get<std::uint64_t>();
  }

  if (root.contains("fit")) {
    const json& fit = root.at("fit");
    const std::string context = path + ".fit";
    if (fit.contains("sigma_y_guess")) {
      config.fit.sigma_y_guess =
          require_positive(fit, "sigma_y_guess", context);
    }
    if (fit.contains("plastic_threshold")) {
      config.fit.plastic_threshold =
          require_number(fit, "plastic_threshold", context);
    }
    if (fit.contains("offset_yield")) {
      const double offset = require_number(fit, "offset_yield", context);
      if (offset < 0.0) {
        throw ConfigError(context + ": 'offset_yield' must be non-negative");
      }
      config.fit.offset_yield = offset;
    }
    if (fit.contains("hardening")) {
      if (!fit.at("hardening").is_boolean()) {
        throw ConfigError(context + ": 'hardening' must be a boolean");
      }
      config.fit.hardening = fit.at("hardening").get<bool>();
    }
  }

  return config;
}

void save_machines(const std::string& path,
                   const std::vector<Machine>& machines,
                   const std::string& material_name) {
  json root;
  root["material"] = material_name;
  json list = json::array();
  for (const Machine& machine : machines) {
    json entry;
    entry["id"] = machine.id;
    entry["actuator"] = {
        {"length", machine.actuator.beam.deposited_length},
        {"width", machine.actuator.beam.width},
        {"thickness", machine.actuator.beam.thickness},
        {"E", machine.actuator.youngs_modulus},
        {"alpha_dt", machine.actuator.alpha_dt},
    };
    entry["specimen"] = {
        {"length", machine.specimen.beam.deposited_length},
        {"width", machine.specimen.beam.width},
        {"thickness", machine.specimen.beam.thickness},
        {"alpha_dt", machine.specimen.alpha_dt},
    };
    list.push_back(std::move(entry));
  }
  root["machines"] = std::move(list);

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  out << root.dump(2) << '\n';
}

std::vector<Machine> load_machines(const std::string& path,
                                   const CampaignConfig& config) {
  const json root = parse_file(path);
  const std::string material_name = require_string(root, "material", path);
  const auto material_it = config.materials.find(material_name);
  if (material_it == config.materials.end()) {
    throw ConfigError(path + ": material '" + material_name +
                      "' is not declared in the campaign config");
  }
  const json& list = require(root, "machines", path);
  if (!list.is_array() || list.empty()) {
    throw ConfigError(path + ": 'machines' must be a non-empty array");
  }

  std::vector<Machine> machines;
  std::set<std::string> seen_ids;
  for (const json& entry : list) {
    Machine machine;
    machine.id = require_string(entry, "id", path);
    if (!seen_ids.insert(machine.id).second) {
      throw ConfigError(path + ": duplicate machine id '" + machine.id + "'");
    }
    const json& actuator = require(entry, "actuator", path);
    machine.actuator.beam = beam_from_json(actuator, path + ".actuator", true);
    machine.actuator.youngs_modulus =
        require_positive(actuator, "E", path + ".actuator");
    machine.actuator.alpha_dt =
        require_number(actuator, "alpha_dt", path + ".actuator");
    const json& specimen = require(entry, "specimen", path);
    machine.specimen.beam = beam_from_json(specimen, path + ".specimen", true);
    machine.specimen.alpha_dt =
        require_number(specimen, "alpha_dt", path + ".specimen");
    machine.specimen.material = material_it->second;
    try {
      validate(machine);
    } catch (const InvalidModelError& error) {
      throw ConfigError(path + ": machine '" + machine.id + "': " +
                        error.what());
    }
    machines.push_back(std::move(machine));
  }
  return machines;
}

void save_fit(const std::string& path, const FitFile& fit) {
  json root;
  root["label"] = fit.label;
  root["thickness_m"] = fit.thickness;
  root["yield_strength_pa"] = fit.fit.yield_strength;
  root["elastic_modulus_pa"] = fit.fit.elastic_modulus_used;
  root["plastic_line"] = {
      {"slope_pa", fit.fit.plastic_slope},
      {"intercept_pa", fit.fit.plastic_intercept},
  };
  root["residual_rms_pa"] = fit.fit.residual_rms;
  root["points_used"] = fit.fit.points_used;
  root["plateau_like"] = fit.fit.plateau_like;
  if (fit.fit.model_fit) {
    root["model_fit"] = material_to_json(*fit.fit.model_fit);
  }
  json points = json::array();
  for (const StressStrainPoint& point : fit.points) {
    points.push_back({
        {"machine_id", point.machine_id},
        {"strain", point.strain},
        {"stress_pa", point.stress},
    });
  }
  root["points"] = std::move(points);

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open '" + path + "' for writing");
  }
  out << root.dump(2) << '\n';
}

FitFile load_fit(const std::string& path) {
  const json root = parse_file(path);
  FitFile fit;
  fit.label = require_string(root, "label", path);
  fit.thickness = require_positive(root, "thickness_m", path);
  fit.fit.yield_strength = require_number(root, "yield_strength_pa", path);
  fit.fit.elastic_modulus_used =
      require_number(root, "elastic_modulus_pa", path);
  const json& line = require(root, "plastic_line", path);
  fit.fit.plastic_slope = require_number(line, "slope_pa", path);
  fit.fit.plastic_intercept = require_number(line, "intercept_pa", path);
  fit.fit.residual_rms = require_number(root, "residual_rms_pa", path);
  fit.fit.points_used =
      static_cast<int>(require_number(root, "points_used", path));
  fit.fit.plateau_like = root.value("plateau_like", false);
  if (root.contains("model_fit")) {
    fit.fit.model_fit =
        material_from_json(root.at("model_fit"), path + ".model_fit");
  }
  if (root.contains("points")) {
    for (const json& entry : root.at("points")) {
      StressStrainPoint point;
      point.machine_id = require_string(entry, "machine_id", path);
      point.strain = require_number(entry, "strain", path);
      point.stress = require_number(entry, "stress_pa", path);
      fit.points.push_back(std::move(point));
    }
  }
  return fit;
}

}  // namespace mtm
