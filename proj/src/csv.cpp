#include "declip/csv.hpp"

#include <cstdio>
#include <sstream>

namespace declip {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
  require(out_.good(), "io-error", "cannot open for writing: " + path);
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
}

void CsvWriter::field(const std::string& v) {
  if (row_started_) out_ << ',';
  out_ << v;
  row_started_ = true;
}

void CsvWriter::field(double v) { field(format_double(v)); }

void CsvWriter::field(long v) { field(std::to_string(v)); }

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void CsvWriter::close() {
  out_.close();
  require(!out_.fail(), "io-error", "csv write failed");
}

double CsvTable::number(size_t row, size_t col) const {
  try {
    return std::stod(rows.at(row).at(col));
  } catch (const std::exception&) {
    throw Error("parse-error", "bad numeric cell '" + rows.at(row).at(col) + "'");
  }
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "io-error", "cannot open: " + path);
  CsvTable table;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "io-error", "empty csv: " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    while (row.size() < table.header.size()) row.emplace_back();
    require(row.size() == table.header.size(), "parse-error",
            "row width mismatch in " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_dataset_csv(const std::string& path, const Mat& data, char prefix) {
  CsvWriter csv(path);
  std::vector<std::string> names;
  for (int j = 0; j < data.rows(); ++j) {
    names.push_back(std::string(1, prefix) + "_" + std::to_string(j));
  }
  csv.header(names);
  for (int i = 0; i < data.cols(); ++i) {
    for (int j = 0; j < data.rows(); ++j) csv.field(data(j, i));
    csv.end_row();
  }
  csv.close();
}

Mat read_dataset_csv(const std::string& path, char expected_prefix) {
  const CsvTable table = read_csv(path);
  require(!table.header.empty() &&
              table.header[0] == std::string(1, expected_prefix) + "_0",
          "parse-error", std::string("dataset csv must start with column ") +
                             expected_prefix + "_0: " + path);
  const int dim = static_cast<int>(table.header.size());
  const int count = static_cast<int>(table.rows.size());
  require(count > 0, "parse-error", "dataset csv has no rows: " + path);
  Mat data(dim, count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < dim; ++j) data(j, i) = table.rows[i][j];
  }
  return data;
}

}  // namespace declip
