#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mtm/material.hpp"

namespace mtm {

/// As-deposited beam geometry. Cross sections are held at deposited values
/// throughout a test.
struct BeamSpec {
  double deposited_length = 0.0;  // m
  double width = 0.0;             // m
  double thickness = 0.0;         // m

  double cross_section() const { return width * thickness; }
};

/// Silicon-nitride actuator beam: strictly elastic, loaded by the built-in
/// thermal mismatch strain alpha_dt.
struct ActuatorSpec {
  BeamSpec beam;
  double youngs_modulus = 0.0;  // Pa
  double alpha_dt = 0.0;        // dimensionless, in (0, 0.05)
};

/// Tested film beam plus its constitutive model and mismatch term.
struct SpecimenSpec {
  BeamSpec beam;
  MaterialModel material;
  double alpha_dt = 0.0;  // dimensionless, in [0, 0.05)

  /// Stress-free length at room temperature, l0 = l_d * (1 - alpha_dt).
  double natural_length() const {
    return beam.deposited_length * (1.0 - alpha_dt);
  }
};

/// One elementary tensile testing stage: an actuator-specimen couple.
struct Machine {
  std::string id;
  ActuatorSpec actuator;
  SpecimenSpec specimen;
};

/// Post-release equilibrium of the couple.
///
/// junction_displacement u is the actuator contraction (positive inward);
/// the specimen is stretched by the same u past its thermally shrunk
/// natural length. specimen_log_strain is ln((l0 + u)/l0), the quantity the
/// displacement reduction recovers.
struct EquilibriumState {
  double junction_displacement = 0.0;  // m
  double specimen_log_strain = 0.0;
  double specimen_stress = 0.0;  // Pa
  double actuator_elastic_strain = 0.0;
  double actuator_stress = 0.0;  // Pa
  double force_residual = 0.0;   // N
};

/// SEM-style displacement readout of one machine. Signed: positive values
/// are contractions of the respective beam.
struct MeasurementRecord {
  std::string machine_id;
  double dl_al = 0.0;  // m
  double dl_ac = 0.0;  // m
  std::optional<std::uint64_t> noise_seed;
};

/// Contraction of a free released beam, l_d * alpha_dt.
double free_contraction(const BeamSpec& beam, double alpha_dt);

void validate(const BeamSpec& beam);
void validate(const ActuatorSpec& actuator);
void validate(const SpecimenSpec& specimen);
void validate(const Machine& machine);

/// Solves the axial force balance sigma_ac*S_ac = sigma_al*S_al for the
/// junction displacement u in [0, alpha_dt_ac * l_d_ac] and fills the full
/// state. Bracketed false-position/bisection hybrid; throws SolverError
/// after 200 iterations without convergence.
EquilibriumState solve_equilibrium(const Machine& machine);

/// Noisy displacement readout of a solved machine:
///   dl_al = l_d_al*alpha_dt_al - u + N(0, sd)
///   dl_ac = u + N(0, sd)
/// Deterministic given the seed; sd == 0 reproduces the exact forward
/// values and leaves noise_seed empty.
MeasurementRecord synthesize_measurement(const Machine& machine,
                                         const EquilibriumState& state,
                                         double noise_sd, std::uint64_t seed);

}  // namespace mtm
