#pragma once

#include "declip/common.hpp"

namespace declip {

// dB values are capped at kMetricCapDb so near-exact reconstructions stay
// finite in CSV aggregation.
inline constexpr double kMetricCapDb = 150.0;

// 20*log10(||x|| / ||x - xhat||), capped.
double sdr(const Vec& x, const Vec& xhat);

// 20*log10(1 / ||x - xhat||), capped. No per-pixel normalization.
double psnr(const Vec& x, const Vec& xhat);

// Conventional per-pixel variant, 20*log10(sqrt(n) / ||x - xhat||), for
// comparison with external results.
double psnr_per_pixel(const Vec& x, const Vec& xhat);

// max_j x_j - min_j x_j.
double dynamic_range(const Vec& x);

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

SummaryStats summarize(const std::vector<double>& values);

}  // namespace declip
