#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "mtm/errors.hpp"
#include "mtm/machine.hpp"
#include "mtm/random.hpp"

using namespace mtm;

namespace {

// Reference geometry: 100 um x 4 um x 250 nm specimen (S_al = 1e-12 m^2),
// 8 um x 500 nm actuator section (S_ac = 4e-12 m^2).
Machine reference_machine(double actuator_length, const MaterialModel& mat,
                          double alpha_dt_ac = 2e-3,
                          double alpha_dt_al = 0.0) {
  Machine m;
  m.id = "ref";
  m.actuator.beam = {actuator_length, 8e-6, 5e-7};
  m.actuator.youngs_modulus = 220e9;
  m.actuator.alpha_dt = alpha_dt_ac;
  m.specimen.beam = {100e-6, 4e-6, 2.5e-7};
  m.specimen.material = mat;
  m.specimen.alpha_dt = alpha_dt_al;
  return m;
}

/// Independently derived equilibrium of two linear springs in series:
/// u = E_ac*c*S_ac / (E_ac*S_ac/L + E_al*S_al/l0).
double two_spring_displacement(const Machine& m) {
  const double k_ac = m.actuator.youngs_modulus *
                      m.actuator.beam.cross_section() /
                      m.actuator.beam.deposited_length;
  const double k_al = m.specimen.material.youngs_modulus *
                      m.specimen.beam.cross_section() /
                      m.specimen.natural_length();
  return m.actuator.youngs_modulus * m.actuator.alpha_dt *
         m.actuator.beam.cross_section() / (k_ac + k_al);
}

}  // namespace

TEST_CASE("free contraction is length times mismatch") {
  CHECK(free_contraction({200e-6, 1e-6, 1e-6}, 3.2e-4) ==
        doctest::Approx(6.4e-8).epsilon(1e-14));
  CHECK(free_contraction({100e-6, 1e-6, 1e-6}, 0.0) == 0.0);
  CHECK(free_contraction({1000e-6, 1e-6, 1e-6}, 2e-3) ==
        doctest::Approx(2.0e-6).epsilon(1e-14));
}

TEST_CASE("machine validation rejects broken specs") {
  Machine m = reference_machine(200e-6, make_linear_elastic(70e9));
  CHECK_NOTHROW(validate(m));

  Machine no_id = m;
  no_id.id.clear();
  CHECK_THROWS_AS(validate(no_id), InvalidModelError);

  Machine flat = m;
  flat.specimen.beam.thickness = 0.0;
  CHECK_THROWS_AS(validate(flat), InvalidModelError);

  Machine inert = m;
  inert.actuator.alpha_dt = 0.0;
  CHECK_THROWS_AS(validate(inert), InvalidModelError);

  Machine wild = m;
  wild.actuator.alpha_dt = 0.2;
  CHECK_THROWS_AS(validate(wild), InvalidModelError);
}

TEST_CASE("elastic equilibrium matches the two-spring closed form") {
  const Machine m = reference_machine(200e-6, make_linear_elastic(70e9));
  const EquilibriumState state = solve_equilibrium(m);
  // Frozen by hand from the closed form for exactly this geometry.
  CHECK(state.junction_displacement ==
        doctest::Approx(3.4509803921568627e-07).epsilon(1e-9));
  CHECK(state.junction_displacement ==
        doctest::Approx(two_spring_displacement(m)).epsilon(1e-9));
  CHECK(state.specimen_log_strain ==
        doctest::Approx(std::log1p(state.junction_displacement /
                                   m.specimen.natural_length()))
            .epsilon(1e-12));
}

TEST_CASE("plastic equilibrium sits on the plateau") {
  // Long actuator drives the specimen well past yield, so the actuator
  // strain settles at exactly sigma_y*S_al/(E_ac*S_ac).
  const Machine m = reference_machine(2e-3, make_perfectly_plastic(70e9, 400e6));
  const EquilibriumState state = solve_equilibrium(m);
  const double r = 400e6 * 1e-12 / (220e9 * 4e-12);
  CHECK(r == doctest::Approx(4.545454545454545e-4).epsilon(1e-14));
  CHECK(state.actuator_elastic_strain == doctest::Approx(r).epsilon(1e-9));
  CHECK(state.actuator_stress == doctest::Approx(1e8).epsilon(1e-9));
  CHECK(state.specimen_stress == doctest::Approx(400e6).epsilon(1e-9));
  CHECK(state.junction_displacement ==
        doctest::Approx(2e-3 * (2e-3 - r)).epsilon(1e-9));
}

TEST_CASE("solved displacement stays inside the physical bracket") {
  const std::vector<MaterialModel> materials = {
      make_linear_elastic(70e9),
      make_perfectly_plastic(70e9, 400e6),
      make_power_law(70e9, 220e6, 0.22),
  };
  for (const MaterialModel& mat : materials) {
    for (double length : {20e-6, 100e-6, 500e-6, 2e-3, 5e-3}) {
      const Machine m = reference_machine(length, mat);
      const EquilibriumState state = solve_equilibrium(m);
      const double u_max = m.actuator.alpha_dt *
                           m.actuator.beam.deposited_length;
      CHECK(state.junction_displacement >= 0.0);
      CHECK(state.junction_displacement <= u_max);
    }
  }
}

TEST_CASE("force balance holds on every solved state") {
  const std::vector<MaterialModel> materials = {
      make_linear_elastic(70e9),
      make_perfectly_plastic(70e9, 400e6),
      make_perfectly_plastic(70e9, 220e6),
      make_power_law(70e9, 220e6, 0.22),
  };
  for (const MaterialModel& mat : materials) {
    for (double length : {20e-6, 100e-6, 500e-6, 2e-3, 5e-3}) {
      const Machine m = reference_machine(length, mat);
      const EquilibriumState state = solve_equilibrium(m);
      const double actuator_force =
          state.actuator_stress * m.actuator.beam.cross_section();
      const double specimen_force =
          state.specimen_stress * m.specimen.beam.cross_section();
      CHECK(std::abs(actuator_force - specimen_force) <=
            1e-9 * actuator_force);
    }
  }
}

TEST_CASE("equilibrium strain grows with actuator length") {
  const MaterialModel mat = make_power_law(70e9, 220e6, 0.22);
  double previous = -1.0;
  for (double length : {20e-6, 50e-6, 100e-6, 300e-6, 1e-3, 5e-3}) {
    const Machine m = reference_machine(length, mat);
    const double strain = solve_equilibrium(m).specimen_log_strain;
    CHECK(strain > previous);
    previous = strain;
  }
}

TEST_CASE("noiseless synthesis inverts to the solver displacement") {
  const Machine m = reference_machine(
      500e-6, make_perfectly_plastic(70e9, 400e6), 2e-3, 3.2e-4);
  const EquilibriumState state = solve_equilibrium(m);
  const MeasurementRecord record = synthesize_measurement(m, state, 0.0, 7);
  CHECK(record.machine_id == "ref");
  CHECK(!record.noise_seed.has_value());
  CHECK(record.dl_ac == state.junction_displacement);
  // The two displacements always add up to the specimen free contraction.
  CHECK(record.dl_al + record.dl_ac ==
        doctest::Approx(free_contraction(m.specimen.beam,
                                         m.specimen.alpha_dt))
            .epsilon(1e-12));
}

TEST_CASE("noisy synthesis is deterministic per seed") {
  const Machine m = reference_machine(500e-6, make_linear_elastic(70e9));
  const EquilibriumState state = solve_equilibrium(m);
  const MeasurementRecord a = synthesize_measurement(m, state, 1e-8, 42);
  const MeasurementRecord b = synthesize_measurement(m, state, 1e-8, 42);
  const MeasurementRecord c = synthesize_measurement(m, state, 1e-8, 43);
  CHECK(a.dl_al == b.dl_al);
  CHECK(a.dl_ac == b.dl_ac);
  CHECK(a.noise_seed.value() == 42);
  CHECK(a.dl_al != c.dl_al);
  CHECK(a.dl_al != state.junction_displacement);
}

TEST_CASE("gaussian sampler has the requested moments") {
  GaussianSampler sampler(1234);
  const int n = 10000;
  const double sd = 2.5;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double draw = sampler.next(sd);
    sum += draw;
    sum_sq += draw * draw;
  }
  const double mean = sum / n;
  const double variance = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 * sd / std::sqrt(static_cast<double>(n)));
  CHECK(variance == doctest::Approx(sd * sd).epsilon(0.05));
  CHECK(sampler.next(0.0) == 0.0);
}

TEST_CASE("derived seeds differ across indices and campaigns") {
  const std::uint64_t a = derive_seed(1, 0);
  const std::uint64_t b = derive_seed(1, 1);
  const std::uint64_t c = derive_seed(2, 0);
  CHECK(a != b);
  CHECK(a != c);
  CHECK(derive_seed(1, 0) == a);
}
