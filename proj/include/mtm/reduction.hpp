#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mtm/machine.hpp"

namespace mtm {

/// Shared free-beam calibration of the thermal mismatch terms for the
/// specimen (alpha_Si * dT) and the actuator nitride.
struct Calibration {
  double alpha_dt_al = 0.0;  // in [0, 0.05)
  double alpha_dt_ac = 0.0;  // in [0, 0.05)
  std::string source;
};

void validate(const Calibration& cal);

/// One reduced sample of the film response.
struct StressStrainPoint {
  std::string machine_id;
  double strain = 0.0;  // logarithmic
  double stress = 0.0;  // Pa
};

/// alpha*dT from one free beam: dl_free / l_deposited.
double calibrate_alpha_dt(double deposited_length, double dl_free);

/// Mean of per-beam ratios over several free beams (length, dl_free pairs).
double calibrate_alpha_dt(
    const std::vector<std::pair<double, double>>& free_beams);

/// Logarithmic strain of the specimen from its measured displacement:
///   eps = ln( (l_d - dl_al) / (l_d * (1 - alpha_dt_al)) )
/// The denominator is the beam's stress-free length at room temperature.
double specimen_strain(const MeasurementRecord& record,
                       const SpecimenSpec& spec, const Calibration& cal);

/// Residual elastic strain of the actuator, positive while it is prevented
/// from contracting fully: eps = alpha_dt_ac - dl_ac / l_d_ac. A fully
/// relaxed actuator (dl_ac equal to its free contraction) reads zero.
double actuator_elastic_strain(const MeasurementRecord& record,
                               const ActuatorSpec& actuator,
                               const Calibration& cal);

/// Hooke's law in uniaxial tension, sigma_ac = E_ac * eps.
double actuator_stress(double eps_ac_el, double youngs_modulus);

/// Force transfer through the junction, sigma_al = sigma_ac * S_ac / S_al.
double specimen_stress(double sigma_ac, double s_ac, double s_al);

struct ReductionFailure {
  std::string machine_id;
  std::string reason;
};

/// Points sorted by strain ascending; failed records are reported, never
/// silently dropped.
struct ReductionResult {
  std::vector<StressStrainPoint> points;
  std::vector<ReductionFailure> failures;
};

/// Applies the four reduction steps to every record. Unknown machine ids
/// raise LookupError (listing every offender); per-record arithmetic
/// failures go into the failure list instead.
ReductionResult reduce_campaign(const std::vector<MeasurementRecord>& records,
                                const std::vector<Machine>& machines,
                                const Calibration& cal);

}  // namespace mtm
