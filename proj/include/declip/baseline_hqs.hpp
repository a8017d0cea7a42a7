#pragma once

#include <vector>

#include "declip/common.hpp"
#include "declip/forward_ops.hpp"

namespace declip {

// Orthonormal DCT-II transform pair. Dense matrices; signal lengths here
// are a few hundred samples at most.
class DctTransform {
 public:
  explicit DctTransform(int n);
  Vec forward(const Vec& x) const;
  Vec inverse(const Vec& coeffs) const;
  int size() const { return static_cast<int>(matrix_.rows()); }

 private:
  Mat matrix_;  // orthonormal, inverse = transpose
};

struct HQSConfig {
  int iterations = 50;
  double gamma = 1.0;  // fidelity weight of the proximal step
  std::vector<double> threshold_schedule;  // one soft threshold per iteration
  // True reproduces the printed update that conditions the averaging step on
  // |x_j| <= mu2 instead of the saturation status of y_j.
  bool condition_on_estimate = false;

  void validate() const;
};

// Geometric schedule: initial, initial*factor, ... (length = iterations).
std::vector<double> geometric_schedule(double initial, double factor, int iterations);

// Proximal map of the measurement-consistency fidelity: averages the
// estimate with y on unsaturated entries, leaves saturated entries alone.
Vec prox_mc(const Vec& x, const Measurement& y, double gamma, double sat_tol = 0.0,
            bool condition_on_estimate = false);

// Inverse-transform(soft-threshold(transform(x), tau)).
Vec soft_threshold_denoise(const Vec& x, double tau, const DctTransform& transform);

struct HQSResult {
  Vec output;  // final iterate passed through blend(y, .)
  std::vector<double> rho_residuals;  // sum of rho(x_k, y)^2 after each iteration
};

HQSResult hqs_declip(const Measurement& y, const HQSConfig& config, double sat_tol = 0.0);

}  // namespace declip
