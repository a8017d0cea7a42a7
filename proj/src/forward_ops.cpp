#include "declip/forward_ops.hpp"

#include <cmath>

namespace declip {

ClipSpec ClipSpec::symmetric(double mu) {
  require(mu > 0, "invalid-argument", "symmetric threshold must be positive");
  return ClipSpec{-mu, mu};
}

void ClipSpec::validate() const {
  require(std::isfinite(mu1) && std::isfinite(mu2), "invalid-argument",
          "clip thresholds must be finite");
  require(mu1 < mu2, "invalid-argument", "clip spec requires mu1 < mu2");
}

bool ClipSpec::is_symmetric() const { return mu1 == -mu2 && mu2 > 0; }

void Signal::validate() const {
  for (int j = 0; j < values.size(); ++j) {
    require(std::isfinite(values[j]), "invalid-input",
            "non-finite signal entry at index " + std::to_string(j));
  }
}

void Measurement::validate() const {
  spec.validate();
  for (int j = 0; j < values.size(); ++j) {
    require(std::isfinite(values[j]), "invalid-input",
            "non-finite measurement entry at index " + std::to_string(j));
    require(values[j] >= spec.mu1 && values[j] <= spec.mu2, "invalid-input",
            "measurement entry " + std::to_string(j) + " outside [mu1, mu2]");
  }
}

double clip_value(double u, const ClipSpec& spec) {
  if (u <= spec.mu1) return spec.mu1;
  if (u >= spec.mu2) return spec.mu2;
  return u;
}

Vec clip(const Vec& x, const ClipSpec& spec) {
  return x.cwiseMax(spec.mu1).cwiseMin(spec.mu2);
}

Mat clip(const Mat& x, const ClipSpec& spec) {
  return x.cwiseMax(spec.mu1).cwiseMin(spec.mu2);
}

Measurement clip(const Signal& x, const ClipSpec& spec) {
  spec.validate();
  x.validate();
  return Measurement{clip(x.values, spec), spec};
}

bool is_saturated(double y, const ClipSpec& spec, double tol) {
  return y >= spec.mu2 - tol || y <= spec.mu1 + tol;
}

SaturationPartition partition_saturation(const Measurement& y, double tol) {
  require(tol >= 0, "invalid-argument", "saturation tolerance must be nonnegative");
  SaturationPartition part;
  for (int j = 0; j < y.values.size(); ++j) {
    if (is_saturated(y.values[j], y.spec, tol)) {
      part.saturated.push_back(j);
    } else {
      part.unsaturated.push_back(j);
    }
  }
  return part;
}

double ingest_tol(const ClipSpec& spec) { return 1e-4 * spec.width(); }

double rho(double a, double b, const ClipSpec& spec, double tol) {
  require(b >= spec.mu1 && b <= spec.mu2, "invalid-input",
          "rho: measurement value outside [mu1, mu2]");
  if (b >= spec.mu2 - tol) return std::max(b - a, 0.0);
  if (b <= spec.mu1 + tol) return std::max(a - b, 0.0);
  return std::abs(b - a);
}

double rho_grad_a(double a, double b, const ClipSpec& spec, double tol) {
  require(b >= spec.mu1 && b <= spec.mu2, "invalid-input",
          "rho: measurement value outside [mu1, mu2]");
  if (b >= spec.mu2 - tol) return a < b ? 2.0 * (a - b) : 0.0;
  if (b <= spec.mu1 + tol) return a > b ? 2.0 * (a - b) : 0.0;
  return 2.0 * (a - b);
}

Vec blend(const Vec& y, const Vec& net_out, const ClipSpec& spec, double tol) {
  require(y.size() == net_out.size(), "dimension-mismatch",
          "blend: measurement and network output lengths differ");
  Vec out(y.size());
  for (int j = 0; j < y.size(); ++j) {
    out[j] = is_saturated(y[j], spec, tol) ? net_out[j] : y[j];
  }
  return out;
}

Mat blend(const Mat& y, const Mat& net_out, const ClipSpec& spec, double tol) {
  require(y.rows() == net_out.rows() && y.cols() == net_out.cols(),
          "dimension-mismatch", "blend: batch shapes differ");
  Mat out(y.rows(), y.cols());
  for (int c = 0; c < y.cols(); ++c) {
    for (int r = 0; r < y.rows(); ++r) {
      out(r, c) = is_saturated(y(r, c), spec, tol) ? net_out(r, c) : y(r, c);
    }
  }
  return out;
}

Signal blend(const Measurement& y, const Signal& net_out, double tol) {
  return Signal{blend(y.values, net_out.values, y.spec, tol), net_out.shape};
}

Measurement quantize255(const Signal& x) {
  x.validate();
  Vec out(x.values.size());
  for (int j = 0; j < x.values.size(); ++j) {
    out[j] = std::floor(255.0 * std::min(1.0, x.values[j]) + 0.5) / 255.0;
  }
  Measurement m{out, ClipSpec{0.0, 1.0}};
  m.validate();
  return m;
}

Signal camera_curve(const Signal& u, double beta, double sigma) {
  require(beta > 0 && sigma > 0, "invalid-argument",
          "camera curve requires beta > 0 and sigma > 0");
  u.validate();
  Vec out(u.values.size());
  for (int j = 0; j < u.values.size(); ++j) {
    require(u.values[j] >= 0, "invalid-input",
            "camera curve input must be nonnegative at index " + std::to_string(j));
    const double p = std::pow(u.values[j], beta);
    out[j] = (1.0 + sigma) * p / (p + sigma);
  }
  return Signal{out, u.shape};
}

}  // namespace declip
