#include "declip/config.hpp"

#include <fstream>
#include <sstream>

namespace declip {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "io-error", "cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', "config-error",
              origin + ":" + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      require(!section.empty(), "config-error",
              origin + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config-error",
            origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), "config-error",
            origin + ":" + std::to_string(lineno) + ": empty key");
    auto& sec = cfg.sections_[section];
    require(!sec.count(key), "config-error",
            origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    sec[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

std::string Config::lookup(const std::string& section, const std::string& key) {
  auto sec = sections_.find(section);
  require(sec != sections_.end() && sec->second.count(key), "config-error",
          origin_ + ": missing required key [" + section + "] " + key);
  consumed_.insert(section + "\x1f" + key);
  return sec->second.at(key);
}

std::string Config::get_string(const std::string& section, const std::string& key) {
  return lookup(section, key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) {
  return has(section, key) ? lookup(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) {
  const std::string v = lookup(section, key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw Error("config-error", origin_ + ": [" + section + "] " + key +
                                    " is not a number: '" + v + "'");
  }
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int(const std::string& section, const std::string& key) {
  const std::string v = lookup(section, key);
  try {
    size_t pos = 0;
    const long parsed = std::stol(v, &pos);
    require(pos == v.size(), "config-error", "trailing characters");
    return parsed;
  } catch (const std::exception&) {
    throw Error("config-error", origin_ + ": [" + section + "] " + key +
                                    " is not an integer: '" + v + "'");
  }
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& section,
                                            const std::string& key) {
  std::vector<double> values;
  for (const std::string& part : split_list(lookup(section, key))) {
    try {
      values.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw Error("config-error", origin_ + ": [" + section + "] " + key +
                                      " has a bad list element: '" + part + "'");
    }
  }
  require(!values.empty(), "config-error",
          origin_ + ": [" + section + "] " + key + " is an empty list");
  return values;
}

std::vector<long> Config::get_int_list(const std::string& section, const std::string& key) {
  std::vector<long> values;
  for (double v : get_double_list(section, key)) {
    values.push_back(static_cast<long>(v));
  }
  return values;
}

void Config::assert_all_consumed() const {
  for (const auto& [section, keys] : sections_) {
    for (const auto& [key, value] : keys) {
      require(consumed_.count(section + "\x1f" + key) > 0, "config-error",
              origin_ + ": unknown key [" + section + "] " + key);
    }
  }
}

}  // namespace declip
