#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mtm/analysis.hpp"
#include "mtm/errors.hpp"
#include "mtm/machine.hpp"

using namespace mtm;

namespace {

ActuatorSpec actuator_template() {
  ActuatorSpec actuator;
  actuator.beam = {0.0, 8e-6, 5e-7};  // length chosen per machine
  actuator.youngs_modulus = 220e9;
  actuator.alpha_dt = 2e-3;
  return actuator;
}

SpecimenSpec specimen_template(const MaterialModel& mat) {
  SpecimenSpec specimen;
  specimen.beam = {100e-6, 4e-6, 2.5e-7};
  specimen.material = mat;
  specimen.alpha_dt = 0.0;
  return specimen;
}

std::vector<StressStrainPoint> points_on_line(
    const std::vector<double>& strains, double slope, double intercept) {
  std::vector<StressStrainPoint> points;
  for (double strain : strains) {
    points.push_back({"p", strain, slope * strain + intercept});
  }
  return points;
}

}  // namespace

TEST_CASE("designed elastic machine matches the closed-form length") {
  // For a linear specimen the required actuator length inverts in closed
  // form: L = u / (c_ac - E_al*e*S_al/(E_ac*S_ac)) with u = e*l0 and
  // e = exp(target) - 1. Frozen for target 3e-4.
  const DesignOutcome outcome = design_campaign(
      actuator_template(), specimen_template(make_linear_elastic(70e9)),
      {3e-4}, {10e-6, 5e-3});
  REQUIRE(outcome.infeasible.empty());
  REQUIRE(outcome.design.machines.size() == 1);
  CHECK(outcome.design.machines[0].actuator.beam.deposited_length ==
        doctest::Approx(1.5183443489740014e-05).epsilon(1e-4));
  CHECK(outcome.design.predicted_points[0].strain ==
        doctest::Approx(3e-4).epsilon(1e-4));
}

TEST_CASE("designed campaigns reproduce their targets") {
  const std::vector<double> targets = {5e-4, 1e-3, 3e-3, 6e-3, 9e-3, 1.2e-2};
  const DesignOutcome outcome = design_campaign(
      actuator_template(),
      specimen_template(make_perfectly_plastic(70e9, 400e6)), targets,
      {10e-6, 5e-3});
  REQUIRE(outcome.infeasible.empty());
  REQUIRE(outcome.design.machines.size() == targets.size());

  double previous_length = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Machine& machine = outcome.design.machines[i];
    CHECK(machine.actuator.beam.deposited_length > previous_length);
    previous_length = machine.actuator.beam.deposited_length;
    const double strain = solve_equilibrium(machine).specimen_log_strain;
    CHECK(strain == doctest::Approx(targets[i]).epsilon(1e-4));
  }
  CHECK(outcome.design.machines[0].id == "m01");
  CHECK(outcome.design.machines[5].id == "m06");
}

TEST_CASE("zero target degenerates to the minimal length") {
  const DesignOutcome outcome = design_campaign(
      actuator_template(), specimen_template(make_linear_elastic(70e9)),
      {0.0, 1e-3}, {10e-6, 5e-3});
  REQUIRE(outcome.design.machines.size() == 2);
  CHECK(outcome.design.machines[0].actuator.beam.deposited_length == 10e-6);
}

TEST_CASE("unreachable targets are reported with the achievable range") {
  const DesignOutcome outcome = design_campaign(
      actuator_template(), specimen_template(make_linear_elastic(70e9)),
      {1e-3, 0.5}, {10e-6, 5e-3});
  REQUIRE(outcome.infeasible.size() == 1);
  CHECK(outcome.infeasible[0].target == 0.5);
  CHECK(outcome.infeasible[0].achievable_min > 0.0);
  CHECK(outcome.infeasible[0].achievable_max <
        outcome.infeasible[0].target);
  CHECK(outcome.design.machines.size() == 1);  // the feasible one
}

TEST_CASE("design input validation") {
  const ActuatorSpec actuator = actuator_template();
  const SpecimenSpec specimen = specimen_template(make_linear_elastic(70e9));
  CHECK_THROWS_AS(design_campaign(actuator, specimen, {}, {1e-5, 5e-3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      design_campaign(actuator, specimen, {2e-3, 1e-3}, {1e-5, 5e-3}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      design_campaign(actuator, specimen, {-1e-3, 1e-3}, {1e-5, 5e-3}),
      std::invalid_argument);
  CHECK_THROWS_AS(design_campaign(actuator, specimen, {1e-3}, {5e-3, 1e-5}),
                  std::invalid_argument);
}

TEST_CASE("default plastic threshold") {
  std::vector<StressStrainPoint> points;
  for (int i = 1; i <= 10; ++i) {
    points.push_back({"p", i * 1e-3, 0.0});
  }
  CHECK(default_plastic_threshold(points, 70e9, 4e8) ==
        doctest::Approx(1.5 * 4e8 / 70e9).epsilon(1e-14));
  // 60th-percentile point of 10 sorted strains is index 5.
  CHECK(default_plastic_threshold(points, 70e9, std::nullopt) ==
        doctest::Approx(6e-3).epsilon(1e-14));
}

TEST_CASE("yield fit recovers a perfectly plastic plateau exactly") {
  for (double sigma_y : {400e6, 220e6}) {
    std::vector<StressStrainPoint> points;
    points.push_back({"e1", 1e-3, 70e9 * 1e-3});
    points.push_back({"e2", 2e-3, 70e9 * 2e-3});
    for (double strain : {7e-3, 8e-3, 9e-3, 1e-2, 1.1e-2, 1.2e-2}) {
      points.push_back({"p", strain, sigma_y});
    }
    const FitResult fit = fit_yield(points, 70e9, 6.5e-3);
    CHECK(fit.yield_strength == doctest::Approx(sigma_y).epsilon(1e-9));
    CHECK(fit.points_used == 6);
    CHECK(fit.plastic_slope == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fit.residual_rms == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("yield fit intersects a sloped plastic line correctly") {
  const double slope = 2e9;
  const double intercept = 380e6;
  const double modulus = 70e9;
  const std::vector<StressStrainPoint> points =
      points_on_line({8e-3, 1e-2, 1.2e-2, 1.4e-2}, slope, intercept);

  const FitResult fit = fit_yield(points, modulus, 7e-3);
  const double expected = modulus * intercept / (modulus - slope);
  CHECK(fit.yield_strength == doctest::Approx(expected).epsilon(1e-12));
  CHECK(fit.plastic_slope == doctest::Approx(slope).epsilon(1e-9));

  // 0.2% offset construction shifts the elastic line right.
  const FitResult offset_fit = fit_yield(points, modulus, 7e-3, 2e-3);
  const double strain_at_offset_yield =
      (intercept + modulus * 2e-3) / (modulus - slope);
  CHECK(offset_fit.yield_strength ==
        doctest::Approx(modulus * (strain_at_offset_yield - 2e-3))
            .epsilon(1e-12));
  CHECK(offset_fit.yield_strength > fit.yield_strength);
}

TEST_CASE("two identical plastic points give a horizontal line") {
  const std::vector<StressStrainPoint> points = {{"a", 1e-2, 3e8},
                                                 {"b", 1e-2, 3e8}};
  const FitResult fit = fit_yield(points, 70e9, 5e-3);
  CHECK(fit.plastic_slope == 0.0);
  CHECK(fit.yield_strength == doctest::Approx(3e8).epsilon(1e-12));
}

TEST_CASE("yield fit is invariant under uniform stress rescaling") {
  const std::vector<StressStrainPoint> points =
      points_on_line({8e-3, 9.5e-3, 1.1e-2, 1.3e-2}, 1.5e9, 3.9e8);
  const double scale = 3.7;
  std::vector<StressStrainPoint> scaled = points;
  for (StressStrainPoint& point : scaled) {
    point.stress *= scale;
  }
  const FitResult base = fit_yield(points, 70e9, 7e-3);
  const FitResult rescaled = fit_yield(scaled, 70e9 * scale, 7e-3);
  CHECK(rescaled.yield_strength ==
        doctest::Approx(scale * base.yield_strength).epsilon(1e-12));
}

TEST_CASE("yield fit is invariant under point reordering") {
  std::vector<StressStrainPoint> points =
      points_on_line({8e-3, 9.5e-3, 1.1e-2, 1.3e-2}, 1.5e9, 3.9e8);
  const FitResult base = fit_yield(points, 70e9, 7e-3);
  std::reverse(points.begin(), points.end());
  const FitResult reversed = fit_yield(points, 70e9, 7e-3);
  CHECK(reversed.yield_strength ==
        doctest::Approx(base.yield_strength).epsilon(1e-12));
}

TEST_CASE("yield fit failure modes") {
  CHECK_THROWS_AS(fit_yield({{"a", 1e-2, 3e8}}, 70e9, 5e-3), FitError);
  // Plastic slope equal to E leaves the lines parallel.
  const std::vector<StressStrainPoint> parallel =
      points_on_line({8e-3, 1e-2, 1.2e-2}, 70e9, 1e6);
  CHECK_THROWS_AS(fit_yield(parallel, 70e9, 7e-3), FitError);
}

TEST_CASE("hardening fit round-trips a known power law") {
  const MaterialModel truth = make_power_law(70e9, 220e6, 0.22);
  std::vector<StressStrainPoint> points;
  for (double strain = 4e-3; strain <= 2.05e-2; strain += 2e-3) {
    points.push_back({"p", strain, stress_at_strain(truth, strain)});
  }
  const FitResult fit = fit_hardening(points, 70e9, 3.5e-3);
  REQUIRE(fit.model_fit.has_value());
  CHECK(fit.yield_strength == doctest::Approx(220e6).epsilon(1e-3));
  CHECK(fit.model_fit->hardening_exponent ==
        doctest::Approx(0.22).epsilon(5e-3));
  CHECK(!fit.plateau_like);
  CHECK(fit.residual_rms <= 1e-3 * 220e6);
}

TEST_CASE("hardening fit flags plateau-like data") {
  std::vector<StressStrainPoint> points;
  for (double strain : {8e-3, 1e-2, 1.2e-2, 1.4e-2, 1.6e-2}) {
    points.push_back({"p", strain, 400e6});
  }
  const FitResult fit = fit_hardening(points, 70e9, 7e-3);
  CHECK(fit.plateau_like);
  REQUIRE(fit.model_fit.has_value());
  CHECK(fit.model_fit->hardening_exponent <= 0.05 + 1e-9);
  CHECK(fit.yield_strength == doctest::Approx(400e6).epsilon(0.02));
}

TEST_CASE("hardening fit failure modes") {
  const std::vector<StressStrainPoint> two = {{"a", 1e-2, 3e8},
                                              {"b", 1.2e-2, 3.1e8}};
  CHECK_THROWS_AS(fit_hardening(two, 70e9, 5e-3), FitError);
  const std::vector<StressStrainPoint> cluster = {
      {"a", 1e-2, 3e8}, {"b", 1e-2, 3.1e8}, {"c", 1e-2, 3.2e8}};
  CHECK_THROWS_AS(fit_hardening(cluster, 70e9, 5e-3), FitError);
}

TEST_CASE("thickness comparison reports the strength trend") {
  FitResult thin;
  thin.yield_strength = 400e6;
  FitResult thick;
  thick.yield_strength = 220e6;
  const ThicknessComparison comparison =
      compare_thicknesses({{2.5e-7, thin}, {5e-7, thick}});
  REQUIRE(comparison.rows.size() == 2);
  CHECK(comparison.rows[0].thickness == 2.5e-7);
  CHECK(comparison.rows[0].ratio_to_thickest ==
        doctest::Approx(400.0 / 220.0).epsilon(1e-12));
  CHECK(comparison.rows[1].ratio_to_thickest ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(comparison.monotone_decreasing);

  const std::string table = format_comparison(comparison);
  CHECK(table.find("monotone_decreasing: yes") != std::string::npos);
}

TEST_CASE("thickness comparison edge cases") {
  FitResult fit;
  fit.yield_strength = 400e6;
  CHECK_THROWS_AS(compare_thicknesses({{2.5e-7, fit}}),
                  std::invalid_argument);

  const ThicknessComparison tie =
      compare_thicknesses({{2.5e-7, fit}, {5e-7, fit}});
  CHECK(!tie.monotone_decreasing);
  CHECK(format_comparison(tie).find("monotone_decreasing: no") !=
        std::string::npos);
}
