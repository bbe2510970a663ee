#pragma once

#include <stdexcept>
#include <string>

namespace mtm {

/// Constitutive model fails its own invariants (non-positive modulus,
/// exponent out of range, hardening branch that misses the yield point).
struct InvalidModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Equilibrium solver ran out of iterations; carries the last bracket.
struct SolverError : std::runtime_error {
  SolverError(const std::string& what, double lo, double hi, double f_lo,
              double f_hi)
      : std::runtime_error(what),
        bracket_lo(lo),
        bracket_hi(hi),
        f_at_lo(f_lo),
        f_at_hi(f_hi) {}
  double bracket_lo;
  double bracket_hi;
  double f_at_lo;
  double f_at_hi;
};

/// Free-beam calibration input is unusable (negative or oversized dl_free).
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A measurement cannot be turned into a stress-strain point.
struct ReductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A record references a machine id that is not part of the campaign.
struct LookupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameter extraction failed: too few points, degenerate geometry of the
/// point cloud, or a non-identifiable hardening fit.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Campaign configuration file is malformed or self-inconsistent.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mtm
