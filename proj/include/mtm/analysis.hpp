#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtm/machine.hpp"
#include "mtm/reduction.hpp"

namespace mtm {

/// A designed campaign: one machine per feasible target strain, plus the
/// forward-model predictions for each.
struct CampaignDesign {
  std::vector<Machine> machines;
  std::vector<StressStrainPoint> predicted_points;
  std::vector<double> target_strains;
};

struct TargetInfeasibility {
  double target = 0.0;
  double achievable_min = 0.0;
  double achievable_max = 0.0;
};

struct DesignOutcome {
  CampaignDesign design;
  std::vector<TargetInfeasibility> infeasible;
};

/// Relative matching tolerance between a designed machine's equilibrium
/// strain and its target.
inline constexpr double kDesignStrainTolerance = 1e-4;

/// For each target strain, finds the actuator deposited length (specimen
/// fixed) whose equilibrium strain matches the target to relative 1e-4, by
/// monotone bisection over the length bounds. A target of exactly zero maps
/// to the minimal length (degenerate feasible point). Unreachable targets
/// are reported with the achievable strain range.
DesignOutcome design_campaign(const ActuatorSpec& actuator_template,
                              const SpecimenSpec& specimen_template,
                              const std::vector<double>& target_strains,
                              std::pair<double, double> length_bounds);

struct FitResult {
  double yield_strength = 0.0;       // Pa
  double elastic_modulus_used = 0.0; // Pa
  double plastic_slope = 0.0;        // Pa per unit strain
  double plastic_intercept = 0.0;    // Pa
  double residual_rms = 0.0;         // Pa
  int points_used = 0;
  bool plateau_like = false;
  std::optional<MaterialModel> model_fit;
};

/// Default cut between elastic knee and plastic regime: 1.5*guess/E when a
/// yield guess exists, otherwise the strain of the 60th-percentile point.
double default_plastic_threshold(const std::vector<StressStrainPoint>& points,
                                 double elastic_modulus,
                                 std::optional<double> sigma_y_guess);

/// Least-squares line through points with strain > plastic_threshold;
/// yield strength read at its intersection with sigma = E*(eps - offset).
/// offset = 0 is the elastic-line intersection; 0.002 gives the usual
/// offset yield.
FitResult fit_yield(const std::vector<StressStrainPoint>& points,
                    double elastic_modulus, double plastic_threshold,
                    double offset = 0.0);

/// Fits (sigma_y, n) of the elastic-power-law model to the plastic points:
/// deterministic grid over n in {0.05, 0.10, ..., 0.50}, closed-form K at
/// each n, golden-section refinement around the best grid node. Smallest n
/// wins objective ties within 1e-12.
FitResult fit_hardening(const std::vector<StressStrainPoint>& points,
                        double elastic_modulus, double plastic_threshold);

struct ThicknessRow {
  double thickness = 0.0;        // m
  double yield_strength = 0.0;   // Pa
  double ratio_to_thickest = 1.0;
};

struct ThicknessComparison {
  std::vector<ThicknessRow> rows;  // sorted by thickness ascending
  bool monotone_decreasing = false;
};

/// Sorted comparison table across film thicknesses. The monotone flag is a
/// reported observation (strict decrease of yield with thickness), not an
/// enforced invariant.
ThicknessComparison compare_thicknesses(
    const std::map<double, FitResult>& fits);

std::string format_comparison(const ThicknessComparison& comparison);

}  // namespace mtm
