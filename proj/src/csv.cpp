#include "grn/csv.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace grn {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    out_ << (i ? "," : "") << header[i];
  }
  out_ << '\n';
}

void CsvWriter::separator() {
  if (pending_ > 0) {
    out_ << ',';
  }
  ++pending_;
}

CsvWriter& CsvWriter::cell(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(std::uint64_t v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  separator();
  if (v.find_first_of(",\"\n") == std::string::npos) {
    out_ << v;
    return *this;
  }
  out_ << '"';
  for (char c : v) {
    if (c == '"') {
      out_ << '"';
    }
    out_ << c;
  }
  out_ << '"';
  return *this;
}

void CsvWriter::end_row() {
  if (pending_ != columns_) {
    throw std::logic_error(path_ + ": row has " + std::to_string(pending_) +
                           " cells, header has " + std::to_string(columns_));
  }
  out_ << '\n';
  pending_ = 0;
  ++rows_;
}

void CsvWriter::close() {
  out_.close();
  if (!out_) {
    throw std::runtime_error("error while writing " + path_);
  }
}

}  // namespace grn
