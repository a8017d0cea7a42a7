#include <doctest.h>

#include "declip/forward_ops.hpp"
#include "declip/metrics.hpp"
#include "declip/rng.hpp"

using namespace declip;

TEST_CASE("sdr reference values") {
  Vec x(4);
  x << 1.0, -2.0, 0.5, 3.0;

  CHECK(sdr(x, Vec::Zero(4)) == doctest::Approx(0.0));

  const Vec xhat = x + (x / x.norm()) * (x.norm() / 10.0);
  CHECK(sdr(x, xhat) == doctest::Approx(20.0));

  CHECK(sdr(x, x) == kMetricCapDb);
  CHECK_THROWS_AS(sdr(Vec::Zero(3), Vec::Zero(3)), Error);
}

TEST_CASE("psnr reference values and the log law") {
  Vec x = Vec::Zero(5);
  Vec e = Vec::Zero(5);
  e[0] = 1.0;
  CHECK(psnr(x, x + e) == doctest::Approx(0.0));
  CHECK(psnr(x, x + 0.01 * e) == doctest::Approx(40.0));
  CHECK(psnr(x, x + 0.1 * e) - psnr(x, x + e) == doctest::Approx(20.0));
  CHECK(psnr(x, x) == kMetricCapDb);
}

TEST_CASE("sdr is scale invariant, psnr as printed is not") {
  Rng rng(5);
  Vec x(16), xhat(16);
  for (int i = 0; i < 16; ++i) {
    x[i] = rng.normal();
    xhat[i] = x[i] + 0.1 * rng.normal();
  }
  const double g = 7.5;
  CHECK(sdr(g * x, g * xhat) == doctest::Approx(sdr(x, xhat)));
  CHECK(psnr(g * x, g * xhat) != doctest::Approx(psnr(x, xhat)));
  CHECK(psnr(g * x, g * xhat) == doctest::Approx(psnr(x, xhat) - 20.0 * std::log10(g)));
}

TEST_CASE("identity baseline never beats perfect reconstruction") {
  Rng rng(6);
  const ClipSpec spec{-1.0, 1.0};
  Vec x(32);
  for (int i = 0; i < 32; ++i) x[i] = 2.0 * rng.normal();
  const Vec y = clip(x, spec);
  CHECK(sdr(x, y) <= sdr(x, x));
  CHECK(sdr(x, y) < kMetricCapDb);
}

TEST_CASE("dynamic range") {
  Vec c = Vec::Constant(7, 3.25);
  CHECK(dynamic_range(c) == 0.0);
  Vec x(2);
  x << 0.0, 3.0;
  CHECK(dynamic_range(x) == 3.0);
  CHECK(dynamic_range(2.5 * x) == doctest::Approx(2.5 * dynamic_range(x)));
}

TEST_CASE("summary statistics") {
  const SummaryStats s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.count == 4);
}
