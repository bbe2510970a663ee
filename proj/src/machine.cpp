#include "mtm/machine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtm/errors.hpp"
#include "mtm/random.hpp"

namespace mtm {

namespace {

constexpr int kMaxSolverIterations = 200;

/// Signed force imbalance at junction displacement u. The actuator pulls
/// with E_ac*(alpha_dt_ac - u/L)*S_ac; the specimen resists with
/// law(u/l0)*S_al where l0 is its stress-free length. Strictly decreasing
/// in u, positive at u = 0 for any real actuator.
struct ForceBalance {
  const Machine& machine;
  double actuator_length;
  double actuator_section;
  double specimen_natural_length;
  double specimen_section;

  explicit ForceBalance(const Machine& m)
      : machine(m),
        actuator_length(m.actuator.beam.deposited_length),
        actuator_section(m.actuator.beam.cross_section()),
        specimen_natural_length(m.specimen.natural_length()),
        specimen_section(m.specimen.beam.cross_section()) {}

  double operator()(double u) const {
    const double eps_ac = machine.actuator.alpha_dt - u / actuator_length;
    const double pull =
        machine.actuator.youngs_modulus * eps_ac * actuator_section;
    const double eps_al = u / specimen_natural_length;
    const double resist =
        stress_at_strain(machine.specimen.material, eps_al) * specimen_section;
    return pull - resist;
  }
};

EquilibriumState state_at(const ForceBalance& f, double u) {
  EquilibriumState state;
  state.junction_displacement = u;
  const double eng = u / f.specimen_natural_length;
  state.specimen_log_strain = std::log1p(eng);
  state.specimen_stress = stress_at_strain(f.machine.specimen.material, eng);
  state.actuator_elastic_strain =
      f.machine.actuator.alpha_dt - u / f.actuator_length;
  state.actuator_stress =
      f.machine.actuator.youngs_modulus * state.actuator_elastic_strain;
  state.force_residual = f(u);
  return state;
}

}  // namespace

double free_contraction(const BeamSpec& beam, double alpha_dt) {
  return beam.deposited_length * alpha_dt;
}

void validate(const BeamSpec& beam) {
  if (!(beam.deposited_length > 0.0)) {
    throw InvalidModelError("beam deposited_length must be positive");
  }
  if (!(beam.width > 0.0) || !(beam.thickness > 0.0)) {
    throw InvalidModelError("beam width and thickness must be positive");
  }
}

void validate(const ActuatorSpec& actuator) {
  validate(actuator.beam);
  if (!(actuator.youngs_modulus > 0.0)) {
    throw InvalidModelError("actuator youngs_modulus must be positive");
  }
  if (!(actuator.alpha_dt > 0.0 && actuator.alpha_dt < 0.05)) {
    throw InvalidModelError("actuator alpha_dt must lie in (0, 0.05)");
  }
}

void validate(const SpecimenSpec& specimen) {
  validate(specimen.beam);
  validate(specimen.material);
  if (!(specimen.alpha_dt >= 0.0 && specimen.alpha_dt < 0.05)) {
    throw InvalidModelError("specimen alpha_dt must lie in [0, 0.05)");
  }
}

void validate(const Machine& machine) {
  if (machine.id.empty()) {
    throw InvalidModelError("machine id must not be empty");
  }
  validate(machine.actuator);
  validate(machine.specimen);
}

EquilibriumState solve_equilibrium(const Machine& machine) {
  validate(machine);
  const ForceBalance f(machine);

  // The actuator cannot contract past its own free contraction, so the
  // junction displacement is bracketed by [0, alpha_dt_ac * L].
  double lo = 0.0;
  double hi = machine.actuator.alpha_dt * f.actuator_length;
  double f_lo = f(lo);
  double f_hi = f(hi);

  if (f_hi >= 0.0) {
    // The specimen is too weak to hold the actuator short of its free
    // length; equilibrium sits at the bracket end.
    return state_at(f, hi);
  }

  const double width_floor =
      4.0 * std::numeric_limits<double>::epsilon() * hi;
  const double residual_tolerance = 1e-12 * machine.actuator.youngs_modulus *
                                    machine.actuator.alpha_dt *
                                    f.actuator_section;
  double u = hi;
  for (int iteration = 0; iteration < kMaxSolverIterations; ++iteration) {
    // False position proposes fast near-linear steps; every other round a
    // bisection step keeps the bracket shrinking on kinked laws.
    if (iteration % 2 == 0 && f_lo != f_hi) {
      u = lo + (hi - lo) * f_lo / (f_lo - f_hi);
    } else {
      u = 0.5 * (lo + hi);
    }
    u = std::clamp(u, lo, hi);
    const double fu = f(u);
    if (std::abs(fu) <= residual_tolerance) {
      return state_at(f, u);
    }
    if (fu > 0.0) {
      lo = u;
      f_lo = fu;
    } else {
      hi = u;
      f_hi = fu;
    }
    if (hi - lo <= width_floor) {
      // Report the bracket midpoint; the residual there is below anything
      // resolvable in double precision.
      return state_at(f, 0.5 * (lo + hi));
    }
  }
  throw SolverError("equilibrium solve for machine '" + machine.id +
                        "' did not converge",
                    lo, hi, f_lo, f_hi);
}

MeasurementRecord synthesize_measurement(const Machine& machine,
                                         const EquilibriumState& state,
                                         double noise_sd, std::uint64_t seed) {
  MeasurementRecord record;
  record.machine_id = machine.id;
  const double dl_free =
      free_contraction(machine.specimen.beam, machine.specimen.alpha_dt);
  record.dl_al = dl_free - state.junction_displacement;
  record.dl_ac = state.junction_displacement;
  if (noise_sd > 0.0) {
    GaussianSampler sampler(seed);
    record.dl_al += sampler.next(noise_sd);
    record.dl_ac += sampler.next(noise_sd);
    record.noise_seed = seed;
  }
  return record;
}

}  // namespace mtm
