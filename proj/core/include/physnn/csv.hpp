#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace physnn {

/// A rectangular numeric table with named columns and optional leading
/// comment lines (written as `# ...` before the header).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::string> comments;
  Eigen::MatrixXd rows;
};

/// Shortest text form that parses back to the same double bit for bit.
std::string format_double(double value);

/// Serialize with a comma separator, one header line, and %.17g numbers, so
/// that csv_from_string(to_csv(t)) recovers the table exactly.
std::string to_csv(const CsvTable& table);

/// Parse a document produced by to_csv (or hand-written in the same shape).
/// Throws ConfigError on ragged rows, non-numeric cells, or a missing header.
CsvTable csv_from_string(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace physnn
