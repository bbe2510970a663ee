#include "mtm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mtm/errors.hpp"

namespace mtm {

namespace {

constexpr int kMaxBisectIterations = 200;
constexpr double kHardeningGridStep = 0.05;
constexpr double kHardeningGridMax = 0.50;
constexpr double kHardeningExponentFloor = 1e-3;

std::string machine_id_for(std::size_t index, std::size_t count) {
  int width = 2;
  for (std::size_t c = count; c > 99; c /= 10) {
    ++width;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "m%0*d", width,
                static_cast<int>(index + 1));
  return buffer;
}

Machine machine_with_length(const ActuatorSpec& actuator_template,
                            const SpecimenSpec& specimen_template,
                            double actuator_length, std::string id) {
  Machine machine;
  machine.id = std::move(id);
  machine.actuator = actuator_template;
  machine.actuator.beam.deposited_length = actuator_length;
  machine.specimen = specimen_template;
  return machine;
}

double strain_at_length(const ActuatorSpec& actuator_template,
                        const SpecimenSpec& specimen_template,
                        double actuator_length) {
  const Machine probe = machine_with_length(actuator_template,
                                            specimen_template,
                                            actuator_length, "probe");
  return solve_equilibrium(probe).specimen_log_strain;
}

struct PlasticSubset {
  std::vector<double> strain;
  std::vector<double> stress;
};

PlasticSubset plastic_points(const std::vector<StressStrainPoint>& points,
                             double plastic_threshold) {
  PlasticSubset subset;
  for (const StressStrainPoint& point : points) {
    if (point.strain > plastic_threshold) {
      subset.strain.push_back(point.strain);
      subset.stress.push_back(point.stress);
    }
  }
  return subset;
}

/// Closed-form least-squares amplitude for sigma = K * eps^n at fixed n.
double amplitude_for_exponent(const PlasticSubset& subset, double n) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < subset.strain.size(); ++i) {
    const double basis = std::pow(subset.strain[i], n);
    num += subset.stress[i] * basis;
    den += basis * basis;
  }
  return num / den;
}

double hardening_objective(const PlasticSubset& subset, double n) {
  const double k = amplitude_for_exponent(subset, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < subset.strain.size(); ++i) {
    const double r = subset.stress[i] - k * std::pow(subset.strain[i], n);
    sum += r * r;
  }
  return sum;
}

}  // namespace

DesignOutcome design_campaign(const ActuatorSpec& actuator_template,
                              const SpecimenSpec& specimen_template,
                              const std::vector<double>& target_strains,
                              std::pair<double, double> length_bounds) {
  validate(specimen_template);
  {
    ActuatorSpec probe = actuator_template;
    probe.beam.deposited_length = length_bounds.first;
    validate(probe);
  }
  if (!(length_bounds.first > 0.0) ||
      !(length_bounds.second > length_bounds.first)) {
    throw std::invalid_argument(
        "length bounds must satisfy 0 < L_min < L_max");
  }
  if (target_strains.empty()) {
    throw std::invalid_argument("no targets");
  }
  if (!std::is_sorted(target_strains.begin(), target_strains.end())) {
    throw std::invalid_argument("target strains must be sorted ascending");
  }
  if (target_strains.front() < 0.0) {
    throw std::invalid_argument("target strains must be non-negative");
  }

  const double l_min = length_bounds.first;
  const double l_max = length_bounds.second;
  const double strain_min =
      strain_at_length(actuator_template, specimen_template, l_min);
  const double strain_max =
      strain_at_length(actuator_template, specimen_template, l_max);

  DesignOutcome outcome;
  outcome.design.target_strains = target_strains;

  std::vector<double> chosen_lengths;
  for (double target : target_strains) {
    if (target == 0.0) {
      // Degenerate boundary request: shortest allowed actuator.
      chosen_lengths.push_back(l_min);
      continue;
    }
    if (target < strain_min || target > strain_max) {
      outcome.infeasible.push_back({target, strain_min, strain_max});
      continue;
    }
    // Converge well past the published tolerance so the designed length
    // itself (not just the strain) is good to relative 1e-4.
    const double strain_tolerance =
        0.05 * kDesignStrainTolerance * target;
    double lo = l_min;
    double hi = l_max;
    double mid = 0.5 * (lo + hi);
    for (int iteration = 0; iteration < kMaxBisectIterations; ++iteration) {
      mid = 0.5 * (lo + hi);
      const double strain =
          strain_at_length(actuator_template, specimen_template, mid);
      if (std::abs(strain - target) <= strain_tolerance) {
        break;
      }
      if (strain < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    chosen_lengths.push_back(mid);
  }

  for (std::size_t i = 0; i < chosen_lengths.size(); ++i) {
    Machine machine = machine_with_length(
        actuator_template, specimen_template, chosen_lengths[i],
        machine_id_for(i, chosen_lengths.size()));
    const EquilibriumState state = solve_equilibrium(machine);
    StressStrainPoint predicted;
    predicted.machine_id = machine.id;
    predicted.strain = state.specimen_log_strain;
    predicted.stress = state.specimen_stress;
    outcome.design.machines.push_back(std::move(machine));
    outcome.design.predicted_points.push_back(predicted);
  }
  return outcome;
}

double default_plastic_threshold(const std::vector<StressStrainPoint>& points,
                                 double elastic_modulus,
                                 std::optional<double> sigma_y_guess) {
  if (sigma_y_guess) {
    return 1.5 * *sigma_y_guess / elastic_modulus;
  }
  if (points.empty()) {
    return 0.0;
  }
  std::vector<double> strains;
  strains.reserve(points.size());
  for (const StressStrainPoint& point : points) {
    strains.push_back(point.strain);
  }
  std::sort(strains.begin(), strains.end());
  const std::size_t index = static_cast<std::size_t>(
      0.6 * static_cast<double>(strains.size() - 1));
  return strains[index];
}

FitResult fit_yield(const std::vector<StressStrainPoint>& points,
                    double elastic_modulus, double plastic_threshold,
                    double offset) {
  if (!(elastic_modulus > 0.0)) {
    throw std::invalid_argument("elastic modulus must be positive");
  }
  const PlasticSubset subset = plastic_points(points, plastic_threshold);
  const std::size_t n = subset.strain.size();
  if (n < 2) {
    throw FitError("fit_yield needs at least 2 points above the plastic "
                   "threshold, got " + std::to_string(n));
  }

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += subset.strain[i];
    mean_y += subset.stress[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = subset.strain[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (subset.stress[i] - mean_y);
  }

  FitResult result;
  result.elastic_modulus_used = elastic_modulus;
  result.points_used = static_cast<int>(n);
  if (sxx < 1e-30) {
    // All plastic points share one strain; the only sensible line through
    // them is horizontal.
    result.plastic_slope = 0.0;
    result.plastic_intercept = mean_y;
  } else {
    result.plastic_slope = sxy / sxx;
    result.plastic_intercept = mean_y - result.plastic_slope * mean_x;
  }

  if (std::abs(elastic_modulus - result.plastic_slope) <=
      1e-12 * elastic_modulus) {
    throw FitError("plastic line is parallel to the elastic line; no "
                   "intersection");
  }
  const double strain_at_yield =
      (result.plastic_intercept + elastic_modulus * offset) /
      (elastic_modulus - result.plastic_slope);
  result.yield_strength = elastic_modulus * (strain_at_yield - offset);

  double residual_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = subset.stress[i] - (result.plastic_slope *
                                             subset.strain[i] +
                                         result.plastic_intercept);
    residual_sq += r * r;
  }
  result.residual_rms = std::sqrt(residual_sq / static_cast<double>(n));
  return result;
}

FitResult fit_hardening(const std::vector<StressStrainPoint>& points,
                        double elastic_modulus, double plastic_threshold) {
  if (!(elastic_modulus > 0.0)) {
    throw std::invalid_argument("elastic modulus must be positive");
  }
  const PlasticSubset subset = plastic_points(points, plastic_threshold);
  const std::size_t n = subset.strain.size();
  if (n < 3) {
    throw FitError("fit_hardening needs at least 3 points above the plastic "
                   "threshold, got " + std::to_string(n));
  }
  const auto [min_it, max_it] =
      std::minmax_element(subset.strain.begin(), subset.strain.end());
  if (!(*min_it > 0.0)) {
    throw FitError("fit_hardening needs strictly positive plastic strains");
  }
  if (*max_it - *min_it < 1e-12 * *max_it) {
    throw FitError("plastic strains form a single cluster; hardening "
                   "exponent is not identifiable");
  }

  // Deterministic multi-start: coarse grid on n, then golden-section
  // refinement inside the winning cell. Ties go to the smallest n.
  double best_n = kHardeningGridStep;
  double best_objective = hardening_objective(subset, best_n);
  for (double n_grid = 2.0 * kHardeningGridStep;
       n_grid <= kHardeningGridMax + 1e-12; n_grid += kHardeningGridStep) {
    const double objective = hardening_objective(subset, n_grid);
    if (objective < best_objective - 1e-12 * best_objective) {
      best_objective = objective;
      best_n = n_grid;
    }
  }

  double lo = std::max(best_n - kHardeningGridStep, kHardeningExponentFloor);
  double hi = std::min(best_n + kHardeningGridStep, 0.999);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - golden * (hi - lo);
  double b = lo + golden * (hi - lo);
  double fa = hardening_objective(subset, a);
  double fb = hardening_objective(subset, b);
  for (int iteration = 0; iteration < 80; ++iteration) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - golden * (hi - lo);
      fa = hardening_objective(subset, a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + golden * (hi - lo);
      fb = hardening_objective(subset, b);
    }
  }
  const double n_fit = 0.5 * (lo + hi);
  const double k_fit = amplitude_for_exponent(subset, n_fit);
  if (!(k_fit > 0.0) || !std::isfinite(k_fit)) {
    throw FitError("hardening amplitude did not converge to a positive "
                   "value");
  }

  // Continuity at yield pins sigma_y: K*(sigma_y/E)^n = sigma_y.
  const double sigma_y =
      std::pow(k_fit * std::pow(elastic_modulus, -n_fit), 1.0 / (1.0 - n_fit));

  FitResult result;
  result.yield_strength = sigma_y;
  result.elastic_modulus_used = elastic_modulus;
  result.points_used = static_cast<int>(n);
  result.plateau_like = n_fit <= kHardeningGridStep + 1e-12;
  result.residual_rms =
      std::sqrt(hardening_objective(subset, n_fit) / static_cast<double>(n));
  result.model_fit = make_power_law(elastic_modulus, sigma_y, n_fit, k_fit);
  return result;
}

ThicknessComparison compare_thicknesses(
    const std::map<double, FitResult>& fits) {
  if (fits.size() < 2) {
    throw std::invalid_argument(
        "thickness comparison needs at least 2 fits, got " +
        std::to_string(fits.size()));
  }
  ThicknessComparison comparison;
  const double thickest_yield = fits.rbegin()->second.yield_strength;
  for (const auto& [thickness, fit] : fits) {
    ThicknessRow row;
    row.thickness = thickness;
    row.yield_strength = fit.yield_strength;
    row.ratio_to_thickest =
        thickest_yield != 0.0 ? fit.yield_strength / thickest_yield : 0.0;
    comparison.rows.push_back(row);
  }
  comparison.monotone_decreasing = true;
  for (std::size_t i = 1; i < comparison.rows.size(); ++i) {
    if (!(comparison.rows[i - 1].yield_strength >
          comparison.rows[i].yield_strength)) {
      comparison.monotone_decreasing = false;
      break;
    }
  }
  return comparison;
}

std::string format_comparison(const ThicknessComparison& comparison) {
  std::string out =
      "thickness_m       yield_strength_pa  ratio_to_thickest\n";
  char line[128];
  for (const ThicknessRow& row : comparison.rows) {
    std::snprintf(line, sizeof(line), "%-17.6g %-18.8g %.4f\n",
                  row.thickness, row.yield_strength, row.ratio_to_thickest);
    out += line;
  }
  out += "monotone_decreasing: ";
  out += comparison.monotone_decreasing ? "yes" : "no";
  out += "\n";
  return out;
}

}  // namespace mtm
