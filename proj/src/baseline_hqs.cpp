#include "declip/baseline_hqs.hpp"

#include <cmath>

namespace declip {

DctTransform::DctTransform(int n) {
  require(n >= 1, "invalid-argument", "transform size must be positive");
  matrix_.resize(n, n);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int j = 0; j < n; ++j) {
      matrix_(k, j) = scale * std::cos(pi * (2.0 * j + 1.0) * k / (2.0 * n));
    }
  }
}

Vec DctTransform::forward(const Vec& x) const {
  require(x.size() == matrix_.rows(), "dimension-mismatch", "transform size mismatch");
  return matrix_ * x;
}

Vec DctTransform::inverse(const Vec& coeffs) const {
  require(coeffs.size() == matrix_.rows(), "dimension-mismatch", "transform size mismatch");
  return matrix_.transpose() * coeffs;
}

void HQSConfig::validate() const {
  require(iterations >= 1, "invalid-argument", "need at least one iteration");
  require(gamma > 0, "invalid-argument", "gamma must be positive");
  require(static_cast<int>(threshold_schedule.size()) == iterations, "invalid-argument",
          "threshold schedule length must equal the iteration count");
  for (size_t i = 0; i < threshold_schedule.size(); ++i) {
    require(threshold_schedule[i] >= 0, "invalid-argument",
            "thresholds must be nonnegative");
    if (i > 0) {
      require(threshold_schedule[i] <= threshold_schedule[i - 1], "invalid-argument",
              "threshold schedule must be non-increasing");
    }
  }
}

std::vector<double> geometric_schedule(double initial, double factor, int iterations) {
  require(initial >= 0 && factor > 0 && factor <= 1, "invalid-argument",
          "geometric schedule needs initial >= 0 and factor in (0, 1]");
  std::vector<double> schedule(iterations);
  double tau = initial;
  for (int i = 0; i < iterations; ++i) {
    schedule[i] = tau;
    tau *= factor;
  }
  return schedule;
}

Vec prox_mc(const Vec& x, const Measurement& y, double gamma, double sat_tol,
            bool condition_on_estimate) {
  require(x.size() == y.values.size(), "dimension-mismatch",
          "estimate and measurement lengths differ");
  require(gamma > 0, "invalid-argument", "gamma must be positive");
  Vec out(x.size());
  for (int j = 0; j < x.size(); ++j) {
    const bool averaging = condition_on_estimate
                               ? !is_saturated(clip_value(x[j], y.spec), y.spec, sat_tol)
                               : !is_saturated(y.values[j], y.spec, sat_tol);
    out[j] = averaging ? (x[j] + gamma * y.values[j]) / (1.0 + gamma) : x[j];
  }
  return out;
}

Vec soft_threshold_denoise(const Vec& x, double tau, const DctTransform& transform) {
  require(tau >= 0, "invalid-argument", "threshold must be nonnegative");
  Vec coeffs = transform.forward(x);
  for (int j = 0; j < coeffs.size(); ++j) {
    const double magnitude = std::abs(coeffs[j]) - tau;
    coeffs[j] = magnitude > 0 ? (coeffs[j] > 0 ? magnitude : -magnitude) : 0.0;
  }
  return transform.inverse(coeffs);
}

HQSResult hqs_declip(const Measurement& y, const HQSConfig& config, double sat_tol) {
  config.validate();
  y.validate();
  const DctTransform transform(y.dim());
  HQSResult result;
  Vec x = y.values;
  for (int k = 0; k < config.iterations; ++k) {
    const Vec u = prox_mc(x, y, config.gamma, sat_tol, config.condition_on_estimate);
    x = soft_threshold_denoise(u, config.threshold_schedule[k], transform);
    double residual = 0.0;
    for (int j = 0; j < x.size(); ++j) {
      const double r = rho(x[j], y.values[j], y.spec, sat_tol);
      residual += r * r;
    }
    result.rho_residuals.push_back(residual);
  }
  result.output = blend(y.values, x, y.spec, sat_tol);
  return result;
}

}  // namespace declip
