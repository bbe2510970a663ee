#pragma once

#include <string>

namespace mtm {

enum class HardeningLaw { LinearElastic, PerfectlyPlastic, PowerLaw };

/// One-dimensional monotone constitutive law of a tested film, tension only.
///
/// Below the yield strain sigma_y/E the response is E*eps. Above it the
/// declared hardening branch takes over: a flat plateau (perfectly plastic)
/// or K*eps^n (power law). K is derived from continuity at the yield point
/// unless supplied explicitly, in which case it must reproduce the yield
/// stress to within 1e-9*sigma_y.
struct MaterialModel {
  double youngs_modulus = 0.0;         // Pa
  HardeningLaw law = HardeningLaw::LinearElastic;
  double yield_strength = 0.0;         // Pa; unused for linear elastic
  double hardening_exponent = 0.0;     // n in (0,1); power law only
  double hardening_coefficient = 0.0;  // K, Pa; power law only
  std::string label;

  double yield_strain() const { return yield_strength / youngs_modulus; }
};

MaterialModel make_linear_elastic(double youngs_modulus,
                                  std::string label = "");
MaterialModel make_perfectly_plastic(double youngs_modulus,
                                     double yield_strength,
                                     std::string label = "");

/// hardening_coefficient <= 0 means "derive K from continuity at yield".
MaterialModel make_power_law(double youngs_modulus, double yield_strength,
                             double hardening_exponent,
                             double hardening_coefficient = 0.0,
                             std::string label = "");

/// K that makes the power-law branch meet the elastic line at yield:
/// K = sigma_y / (sigma_y/E)^n.
double power_law_coefficient(double youngs_modulus, double yield_strength,
                             double hardening_exponent);

/// Throws InvalidModelError if the model violates its invariants.
void validate(const MaterialModel& model);

/// Uniaxial stress at a non-negative strain. Negative strain is a domain
/// error: the machine can only pull.
double stress_at_strain(const MaterialModel& model, double strain);

/// Derivative of stress_at_strain; at the yield kink the plastic-branch
/// value is returned.
double tangent_modulus(const MaterialModel& model, double strain);

}  // namespace mtm
