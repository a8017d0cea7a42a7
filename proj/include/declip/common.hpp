#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace declip {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// All library errors carry a short machine-parsable code followed by a
// human-readable reason, e.g. "invalid-input: non-finite entry at index 3".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& reason)
      : std::runtime_error(code + ": " + reason), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline void require(bool cond, const std::string& code, const std::string& reason) {
  if (!cond) throw Error(code, reason);
}

}  // namespace declip
