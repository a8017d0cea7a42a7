#include "declip/metrics.hpp"

#include <cmath>
#include <vector>

namespace declip {

namespace {

double capped_db(double ratio) { return std::min(20.0 * std::log10(ratio), kMetricCapDb); }

}  // namespace

double sdr(const Vec& x, const Vec& xhat) {
  require(x.size() == xhat.size(), "dimension-mismatch", "sdr: lengths differ");
  const double ref = x.norm();
  require(ref > 0, "invalid-input", "sdr: zero reference signal");
  const double res = (x - xhat).norm();
  if (res <= 1e-15 * ref) return kMetricCapDb;
  return capped_db(ref / res);
}

double psnr(const Vec& x, const Vec& xhat) {
  require(x.size() == xhat.size(), "dimension-mismatch", "psnr: lengths differ");
  const double res = (x - xhat).norm();
  if (res == 0.0) return kMetricCapDb;
  return capped_db(1.0 / res);
}

double psnr_per_pixel(const Vec& x, const Vec& xhat) {
  require(x.size() == xhat.size(), "dimension-mismatch", "psnr: lengths differ");
  const double res = (x - xhat).norm();
  if (res == 0.0) return kMetricCapDb;
  return capped_db(std::sqrt(static_cast<double>(x.size())) / res);
}

double dynamic_range(const Vec& x) {
  require(x.size() > 0, "invalid-input", "dynamic_range: empty signal");
  return x.maxCoeff() - x.minCoeff();
}

SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  s.count = static_cast<int>(values.size());
  if (s.count == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.count;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = s.count > 1 ? std::sqrt(sq / (s.count - 1)) : 0.0;
  return s;
}

}  // namespace declip
