#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "declip/common.hpp"

namespace declip {

// Flat key-value configuration with [section] headers and '#' comments.
// Every key must be consumed by the reader; leftover keys are hard errors
// so a typo in a hyperparameter name cannot silently revert to a default.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback);
  double get_double(const std::string& section, const std::string& key);
  double get_double(const std::string& section, const std::string& key, double fallback);
  long get_int(const std::string& section, const std::string& key);
  long get_int(const std::string& section, const std::string& key, long fallback);
  std::vector<double> get_double_list(const std::string& section, const std::string& key);
  std::vector<long> get_int_list(const std::string& section, const std::string& key);

  // Throws if any key was never read.
  void assert_all_consumed() const;

 private:
  std::string lookup(const std::string& section, const std::string& key);
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::set<std::string> consumed_;
  std::string origin_;
};

std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace declip
