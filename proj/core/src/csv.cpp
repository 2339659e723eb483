#include "physnn/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "physnn/errors.hpp"

namespace physnn {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, Eigen::Index row, std::size_t col) {
  errno = 0;
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == begin || end == nullptr || *end != '\0') {
    throw ConfigError("csv: cell at row " + std::to_string(row) + ", column " +
                      std::to_string(col) + " is not a number: \"" + cell + "\"");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  if (table.header.empty()) throw ConfigError("csv: header must be non-empty");
  if (table.rows.size() > 0 &&
      table.rows.cols() != static_cast<Eigen::Index>(table.header.size())) {
    throw ConfigError("csv: row width does not match the header");
  }
  std::string out;
  for (const auto& comment : table.comments) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c > 0) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (Eigen::Index r = 0; r < table.rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.rows.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_double(table.rows(r, c));
    }
    out += '\n';
  }
  return out;
}

CsvTable csv_from_string(const std::string& text) {
  CsvTable table;
  std::istringstream stream(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool have_header = false;
  Eigen::Index row_index = 0;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      if (!have_header) {
        table.comments.push_back(line.substr(start));
      }
      continue;
    }
    if (!have_header) {
      table.header = split(line, ',');
      have_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != table.header.size()) {
      throw ConfigError("csv: row " + std::to_string(row_index) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(table.header.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      row[c] = parse_cell(cells[c], row_index, c);
    }
    rows.push_back(std::move(row));
    ++row_index;
  }
  if (!have_header) throw ConfigError("csv: document has no header line");
  table.rows.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(table.header.size()));
  for (Eigen::Index r = 0; r < table.rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.rows.cols(); ++c) {
      table.rows(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  return table;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace physnn
