#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "declip/common.hpp"

namespace declip {

// Formats a double with enough digits to round-trip exactly, so repeated
// runs with the same seed produce byte-identical files.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void header(const std::vector<std::string>& names);
  void field(const std::string& v);
  void field(double v);
  void field(long v);
  void end_row();
  void close();

 private:
  std::ofstream out_;
  bool row_started_ = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double number(size_t row, size_t col) const;
};

CsvTable read_csv(const std::string& path);

// Dataset files: one row per item, header x_0..x_{n-1} for signals or
// y_0..y_{m-1} for measurements, values column-per-coordinate.
void write_dataset_csv(const std::string& path, const Mat& data, char prefix);
Mat read_dataset_csv(const std::string& path, char expected_prefix);

}  // namespace declip
