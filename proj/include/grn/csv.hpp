#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace grn {

/// Shortest round-trip-safe text for a double ("%.17g").
std::string format_double(double v);

/// Writes one CSV file: a header line, then rows built cell by cell.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& cell(double v);
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(const std::string& v);
  CsvWriter& cell(const char* v) { return cell(std::string(v)); }
  void end_row();

  std::size_t rows() const { return rows_; }
  const std::string& path() const { return path_; }
  void close();

 private:
  void separator();

  std::string path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t pending_ = 0;
  std::size_t rows_ = 0;
};

}  // namespace grn
