#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pursuit/assignment.hpp"
#include "pursuit/kinematics.hpp"
#include "pursuit/scheduling.hpp"

namespace pursuit::io {

struct MatrixSection {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major

  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

// Parsed scenario document. Sections are optional; each command checks for
// the ones it needs and reports the missing section by name.
struct ScenarioFile {
  std::optional<kinematics::PursuitScenario> pursuit;
  std::optional<std::vector<assignment::InterceptorSpec>> fleet;
  std::optional<std::vector<assignment::TargetSpec>> targets;
  std::optional<std::vector<scheduling::Job>> jobs;
  std::optional<MatrixSection> matrix;
  std::optional<std::size_t> stopping_n;
};

/// Parses a scenario JSON document. Malformed documents raise
/// Error::argument with the offending section and field.
ScenarioFile parse_scenario(const std::string& text);

/// Reads and parses a scenario file; Error::argument on unreadable paths.
ScenarioFile load_scenario(const std::string& path);

/// FNV-1a 64-bit digest of the raw input bytes, hex encoded.
std::string input_digest(const std::string& bytes);

/// Labeled CSV: first cell `corner`, first row = column labels, first column
/// = row labels, '.' decimals, ',' separators, full double precision.
void write_matrix_csv(std::ostream& out, const std::string& corner,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels,
                      const std::vector<double>& entries, std::size_t rows, std::size_t cols);

/// Trajectory polyline CSV with header t,rho,phi,x,y.
void write_trajectory_csv(std::ostream& out,
                          const std::vector<kinematics::TrajectorySample>& samples);

/// Full-precision decimal rendering that round-trips the double exactly.
std::string format_full(double v);

}  // namespace pursuit::io
