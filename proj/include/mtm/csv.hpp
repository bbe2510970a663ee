#pragma once

#include <string>
#include <vector>

#include "mtm/machine.hpp"
#include "mtm/reduction.hpp"

namespace mtm {

/// A row that could not be parsed; 1-based line number in the file.
struct CsvRowError {
  int line = 0;
  std::string message;
};

struct MeasurementsReadResult {
  std::vector<MeasurementRecord> records;
  std::vector<CsvRowError> row_errors;
};

struct PointsReadResult {
  std::vector<StressStrainPoint> points;
  std::vector<CsvRowError> row_errors;
};

// Fixed schemas, header row mandatory:
//   measurements: machine_id,dl_al_m,dl_ac_m
//   points:       machine_id,strain,stress_pa
// Doubles are written with 17 significant digits so every file parses back
// to the exact values it was written from.

void write_measurements(const std::string& path,
                        const std::vector<MeasurementRecord>& records);
MeasurementsReadResult read_measurements(const std::string& path);

void write_points(const std::string& path,
                  const std::vector<StressStrainPoint>& points);
PointsReadResult read_points(const std::string& path);

/// Shortest exact decimal formatting used across all emitted files.
std::string format_double(double value);

}  // namespace mtm
