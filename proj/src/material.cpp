#include "mtm/material.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mtm/errors.hpp"

namespace mtm {

namespace {

constexpr double kBranchMatchTolerance = 1e-9;  // relative to sigma_y

}  // namespace

MaterialModel make_linear_elastic(double youngs_modulus, std::string label) {
  MaterialModel m;
  m.youngs_modulus = youngs_modulus;
  m.law = HardeningLaw::LinearElastic;
  m.label = std::move(label);
  validate(m);
  return m;
}

MaterialModel make_perfectly_plastic(double youngs_modulus,
                                     double yield_strength,
                                     std::string label) {
  MaterialModel m;
  m.youngs_modulus = youngs_modulus;
  m.law = HardeningLaw::PerfectlyPlastic;
  m.yield_strength = yield_strength;
  m.label = std::move(label);
  validate(m);
  return m;
}

MaterialModel make_power_law(double youngs_modulus, double yield_strength,
                             double hardening_exponent,
                             double hardening_coefficient, std::string label) {
  MaterialModel m;
  m.youngs_modulus = youngs_modulus;
  m.law = HardeningLaw::PowerLaw;
  m.yield_strength = yield_strength;
  m.hardening_exponent = hardening_exponent;
  if (hardening_coefficient > 0.0) {
    m.hardening_coefficient = hardening_coefficient;
  } else if (youngs_modulus > 0.0 && yield_strength > 0.0 &&
             hardening_exponent > 0.0 && hardening_exponent < 1.0) {
    m.hardening_coefficient = power_law_coefficient(
        youngs_modulus, yield_strength, hardening_exponent);
  }
  m.label = std::move(label);
  validate(m);
  return m;
}

double power_law_coefficient(double youngs_modulus, double yield_strength,
                             double hardening_exponent) {
  return yield_strength /
         std::pow(yield_strength / youngs_modulus, hardening_exponent);
}

void validate(const MaterialModel& model) {
  if (!(model.youngs_modulus > 0.0)) {
    throw InvalidModelError("youngs_modulus must be positive");
  }
  switch (model.law) {
    case HardeningLaw::LinearElastic:
      return;
    case HardeningLaw::PerfectlyPlastic:
      if (!(model.yield_strength > 0.0)) {
        throw InvalidModelError("yield_strength must be positive");
      }
      return;
    case HardeningLaw::PowerLaw: {
      if (!(model.yield_strength > 0.0)) {
        throw InvalidModelError("yield_strength must be positive");
      }
      if (!(model.hardening_exponent > 0.0 &&
            model.hardening_exponent < 1.0)) {
        throw InvalidModelError("hardening_exponent must lie in (0, 1)");
      }
      if (!(model.hardening_coefficient > 0.0)) {
        throw InvalidModelError("hardening_coefficient must be positive");
      }
      // The hardening branch has to meet the elastic line at yield.
      const double at_yield = model.hardening_coefficient *
                              std::pow(model.yield_strain(),
                                       model.hardening_exponent);
      if (std::abs(at_yield - model.yield_strength) >
          kBranchMatchTolerance * model.yield_strength) {
        throw InvalidModelError(
            "power-law branch misses the yield point: K*(sigma_y/E)^n = " +
            std::to_string(at_yield) + " vs sigma_y = " +
            std::to_string(model.yield_strength));
      }
      return;
    }
  }
  throw InvalidModelError("unknown hardening law");
}

double stress_at_strain(const MaterialModel& model, double strain) {
  validate(model);
  if (strain < 0.0) {
    throw std::domain_error("strain must be non-negative (tension only)");
  }
  switch (model.law) {
    case HardeningLaw::LinearElastic:
      return model.youngs_modulus * strain;
    case HardeningLaw::PerfectlyPlastic:
      return strain <= model.yield_strain() ? model.youngs_modulus * strain
                                            : model.yield_strength;
    case HardeningLaw::PowerLaw:
      return strain <= model.yield_strain()
                 ? model.youngs_modulus * strain
                 : model.hardening_coefficient *
                       std::pow(strain, model.hardening_exponent);
  }
  throw InvalidModelError("unknown hardening law");
}

double tangent_modulus(const MaterialModel& model, double strain) {
  validate(model);
  if (strain < 0.0) {
    throw std::domain_error("strain must be non-negative (tension only)");
  }
  switch (model.law) {
    case HardeningLaw::LinearElastic:
      return model.youngs_modulus;
    case HardeningLaw::PerfectlyPlastic:
      return strain < model.yield_strain() ? model.youngs_modulus : 0.0;
    case HardeningLaw::PowerLaw:
      // At the kink the plastic-branch slope is returned.
      return strain < model.yield_strain()
                 ? model.youngs_modulus
                 : model.hardening_exponent * model.hardening_coefficient *
                       std::pow(strain, model.hardening_exponent - 1.0);
  }
  throw InvalidModelError("unknown hardening law");
}

}  // namespace mtm
