#pragma once

#include <optional>
#include <vector>

#include "declip/common.hpp"

namespace declip {

// Threshold pair defining the clipping operator and the saturation
// classification. mu1 < mu2 always; symmetric specs have mu1 = -mu2.
struct ClipSpec {
  double mu1 = -1.0;
  double mu2 = 1.0;

  static ClipSpec symmetric(double mu);
  void validate() const;
  bool is_symmetric() const;
  double width() const { return mu2 - mu1; }
};

struct Signal {
  Vec values;
  std::optional<std::vector<int>> shape;  // e.g. {28, 28} for image fixtures

  int dim() const { return static_cast<int>(values.size()); }
  void validate() const;  // finite entries only
};

struct Measurement {
  Vec values;
  ClipSpec spec;

  int dim() const { return static_cast<int>(values.size()); }
  void validate() const;  // every entry within [mu1, mu2]
};

struct SaturationPartition {
  std::vector<int> saturated;
  std::vector<int> unsaturated;
};

// Element-wise clipping to [mu1, mu2].
double clip_value(double u, const ClipSpec& spec);
Vec clip(const Vec& x, const ClipSpec& spec);
Mat clip(const Mat& x, const ClipSpec& spec);
Measurement clip(const Signal& x, const ClipSpec& spec);

// Entry j is saturated iff y_j >= mu2 - tol or y_j <= mu1 + tol. Synthetic
// data hits the thresholds exactly, so tol = 0 is the default; ingested
// data should pass ingest_tol(spec).
bool is_saturated(double y, const ClipSpec& spec, double tol = 0.0);
SaturationPartition partition_saturation(const Measurement& y, double tol = 0.0);
double ingest_tol(const ClipSpec& spec);  // 1e-4 * (mu2 - mu1)

// Three-branch penalty between a prediction a and a measurement entry b:
// |b - a| on unsaturated entries, one-sided hinge at the thresholds.
double rho(double a, double b, const ClipSpec& spec, double tol = 0.0);
// d/da of rho(a, b)^2; returns 0 at kink points.
double rho_grad_a(double a, double b, const ClipSpec& spec, double tol = 0.0);

// Keeps the measurement on unsaturated entries and the network output on
// saturated ones.
Signal blend(const Measurement& y, const Signal& net_out, double tol = 0.0);
Vec blend(const Vec& y, const Vec& net_out, const ClipSpec& spec, double tol = 0.0);
Mat blend(const Mat& y, const Mat& net_out, const ClipSpec& spec, double tol = 0.0);

// y_j = floor(255 * min(1, x_j) + 0.5) / 255, bit-exact. The result is a
// measurement for the unit HDR spec (0, 1).
Measurement quantize255(const Signal& x);

// omega(u)_j = (1 + sigma) * u_j^beta / (u_j^beta + sigma) for u_j >= 0.
Signal camera_curve(const Signal& u, double beta, double sigma);

}  // namespace declip
