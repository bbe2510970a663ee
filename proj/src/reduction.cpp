#include "mtm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mtm/errors.hpp"

namespace mtm {

void validate(const Calibration& cal) {
  if (!(cal.alpha_dt_al >= 0.0 && cal.alpha_dt_al < 0.05)) {
    throw CalibrationError("alpha_dt_al must lie in [0, 0.05)");
  }
  if (!(cal.alpha_dt_ac > 0.0 && cal.alpha_dt_ac < 0.05)) {
    throw CalibrationError("alpha_dt_ac must lie in (0, 0.05)");
  }
}

double calibrate_alpha_dt(double deposited_length, double dl_free) {
  if (!(deposited_length > 0.0)) {
    throw CalibrationError("free beam length must be positive");
  }
  if (dl_free < 0.0) {
    throw CalibrationError("free beam contraction must be non-negative");
  }
  const double alpha_dt = dl_free / deposited_length;
  if (alpha_dt >= 0.05) {
    throw CalibrationError(
        "free beam contraction implies alpha_dt >= 0.05; not a credible "
        "mismatch strain");
  }
  return alpha_dt;
}

double calibrate_alpha_dt(
    const std::vector<std::pair<double, double>>& free_beams) {
  if (free_beams.empty()) {
    throw CalibrationError("no free beams to calibrate from");
  }
  double sum = 0.0;
  for (const auto& [length, dl_free] : free_beams) {
    sum += calibrate_alpha_dt(length, dl_free);
  }
  return sum / static_cast<double>(free_beams.size());
}

double specimen_strain(const MeasurementRecord& record,
                       const SpecimenSpec& spec, const Calibration& cal) {
  const double l_d = spec.beam.deposited_length;
  const double current = l_d - record.dl_al;
  const double natural = l_d * (1.0 - cal.alpha_dt_al);
  if (!(current > 0.0)) {
    throw ReductionError("measured dl_al implies a non-positive specimen "
                         "length");
  }
  return std::log(current / natural);
}

double actuator_elastic_strain(const MeasurementRecord& record,
                               const ActuatorSpec& actuator,
                               const Calibration& cal) {
  return cal.alpha_dt_ac - record.dl_ac / actuator.beam.deposited_length;
}

double actuator_stress(double eps_ac_el, double youngs_modulus) {
  return youngs_modulus * eps_ac_el;
}

double specimen_stress(double sigma_ac, double s_ac, double s_al) {
  if (!(s_al > 0.0)) {
    throw ReductionError("specimen cross section must be positive");
  }
  return sigma_ac * s_ac / s_al;
}

ReductionResult reduce_campaign(const std::vector<MeasurementRecord>& records,
                                const std::vector<Machine>& machines,
                                const Calibration& cal) {
  validate(cal);
  std::map<std::string, const Machine*> by_id;
  for (const Machine& machine : machines) {
    by_id[machine.id] = &machine;
  }

  std::vector<std::string> unknown;
  for (const MeasurementRecord& record : records) {
    if (by_id.find(record.machine_id) == by_id.end()) {
      if (std::find(unknown.begin(), unknown.end(), record.machine_id) ==
          unknown.end()) {
        unknown.push_back(record.machine_id);
      }
    }
  }
  if (!unknown.empty()) {
    std::ostringstream out;
    out << "measurements reference unknown machine ids:";
    for (const std::string& id : unknown) {
      out << " '" << id << "'";
    }
    throw LookupError(out.str());
  }

  ReductionResult result;
  for (const MeasurementRecord& record : records) {
    const Machine& machine = *by_id.at(record.machine_id);
    try {
      StressStrainPoint point;
      point.machine_id = record.machine_id;
      point.strain = specimen_strain(record, machine.specimen, cal);
      const double eps_ac =
          actuator_elastic_strain(record, machine.actuator, cal);
      const double sigma_ac =
          actuator_stress(eps_ac, machine.actuator.youngs_modulus);
      point.stress = specimen_stress(sigma_ac,
                                     machine.actuator.beam.cross_section(),
                                     machine.specimen.beam.cross_section());
      result.points.push_back(point);
    } catch (const ReductionError& error) {
      result.failures.push_back({record.machine_id, error.what()});
    }
  }

  std::stable_sort(result.points.begin(), result.points.end(),
                   [](const StressStrainPoint& a, const StressStrainPoint& b) {
                     return a.strain < b.strain;
                   });
  return result;
}

}  // namespace mtm
