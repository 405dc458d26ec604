#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace envy {

/// Shortest representation that round-trips to the same double.
std::string format_double(double x);

/// Writes comma-separated rows with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<double>& values);
  /// Mixed row; cells are written verbatim.
  void row_cells(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Numeric table with a header line. Throws std::runtime_error on ragged rows
/// or non-numeric cells, naming the line.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(std::size_t index) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

}  // namespace envy
