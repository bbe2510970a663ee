#include "mtm/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtm {

namespace {

const char kMeasurementsHeader[] = "machine_id,dl_al_m,dl_ac_m";
const char kPointsHeader[] = "machine_id,strain,stress_pa";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path + "' for reading");
  }
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::invalid_argument("cannot open '" + path + "' for writing");
  }
  return out;
}

/// Reads lines, strips trailing CR, checks the header, then hands each data
/// row (as fields) to the row callback together with its line number.
template <typename RowFn>
void read_rows(const std::string& path, const char* expected_header,
               RowFn&& on_row) {
  std::ifstream in = open_for_read(path);
  std::string line;
  int line_number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!saw_header) {
      if (line != expected_header) {
        throw std::invalid_argument("'" + path + "': expected header '" +
                                    expected_header + "', got '" + line +
                                    "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    on_row(line_number, split_fields(line));
  }
  if (!saw_header) {
    throw std::invalid_argument("'" + path + "': empty file, header missing");
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  // Shortest representation that parses back to the exact value.
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    double parsed = 0.0;
    if (parse_double(buffer, parsed) && parsed == value) {
      return buffer;
    }
  }
  return buffer;
}

void write_measurements(const std::string& path,
                        const std::vector<MeasurementRecord>& records) {
  std::ofstream out = open_for_write(path);
  out << kMeasurementsHeader << '\n';
  for (const MeasurementRecord& record : records) {
    out << record.machine_id << ',' << format_double(record.dl_al) << ','
        << format_double(record.dl_ac) << '\n';
  }
}

MeasurementsReadResult read_measurements(const std::string& path) {
  MeasurementsReadResult result;
  read_rows(path, kMeasurementsHeader,
            [&](int line, const std::vector<std::string>& fields) {
              if (fields.size() != 3) {
                result.row_errors.push_back(
                    {line, "expected 3 fields, got " +
                               std::to_string(fields.size())});
                return;
              }
              MeasurementRecord record;
              record.machine_id = fields[0];
              if (record.machine_id.empty()) {
                result.row_errors.push_back({line, "empty machine_id"});
                return;
              }
              if (!parse_double(fields[1], record.dl_al) ||
                  !parse_double(fields[2], record.dl_ac)) {
                result.row_errors.push_back(
                    {line, "unparseable displacement value"});
                return;
              }
              result.records.push_back(std::move(record));
            });
  return result;
}

void write_points(const std::string& path,
                  const std::vector<StressStrainPoint>& points) {
  std::ofstream out = open_for_write(path);
  out << kPointsHeader << '\n';
  for (const StressStrainPoint& point : points) {
    out << point.machine_id << ',' << format_double(point.strain) << ','
        << format_double(point.stress) << '\n';
  }
}

PointsReadResult read_points(const std::string& path) {
  PointsReadResult result;
  read_rows(path, kPointsHeader,
            [&](int line, const std::vector<std::string>& fields) {
              if (fields.size() != 3) {
                result.row_errors.push_back(
                    {line, "expected 3 fields, got " +
                               std::to_string(fields.size())});
                return;
              }
              StressStrainPoint point;
              point.machine_id = fields[0];
              if (point.machine_id.empty()) {
                result.row_errors.push_back({line, "empty machine_id"});
                return;
              }
              if (!parse_double(fields[1], point.strain) ||
                  !parse_double(fields[2], point.stress)) {
                result.row_errors.push_back(
                    {line, "unparseable numeric value"});
                return;
              }
              result.points.push_back(std::move(point));
            });
  return result;
}

}  // namespace mtm
