#include <doctest.h>

#include "declip/losses.hpp"
#include "test_util.hpp"

using namespace declip;
using namespace declip::testing;

namespace {

Mat column(std::initializer_list<double> values) {
  Mat m(static_cast<Eigen::Index>(values.size()), 1);
  int i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("loss_nmc on the identity net is zero for in-range data") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams id = identity_net(3);
  const Mat y = column({0.2, -0.9, 1.0});
  const LossResult r = loss_nmc(id, y, spec);
  CHECK(r.value == 0.0);
}

TEST_CASE("loss_nmc: consistent overshoot has zero loss and zero gradient") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams twice = scalar_net(1, 2.0);  // f(y) = 2y
  const Mat y = column({1.0});                 // saturated entry, prediction 2.0
  const LossResult r = loss_nmc(twice, y, spec);
  CHECK(r.value == 0.0);
  CHECK(r.grads.max_abs() == 0.0);
}

TEST_CASE("loss_nmc interior residual") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams net = scalar_net(1, 1.4);  // f(0.5) = 0.7
  const Mat y = column({0.5});
  const LossResult r = loss_nmc(net, y, spec);
  CHECK(r.value == doctest::Approx(0.04));
  CHECK(r.grads.max_abs() > 0.0);
}

TEST_CASE("loss_nmc stuck regime: unsaturated entry, overshooting prediction") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams net = scalar_net(1, 2.0);  // f(0.6) = 1.2 beyond mu2
  const Mat y = column({0.6});
  const LossResult r = loss_nmc(net, y, spec);
  CHECK(r.value == doctest::Approx(0.16));  // (0.6 - 1)^2, nonzero loss
  CHECK(r.grads.max_abs() == 0.0);          // but no gradient through the clip

  const LossResult mc = loss_mc(net, y, spec);
  CHECK(mc.value == doctest::Approx(0.36));  // |0.6 - 1.2|^2
  CHECK(mc.grads.max_abs() > 0.0);           // full gradient pulls back
}

TEST_CASE("entry-wise NMC vs MC gradient contrast") {
  const ClipSpec spec{-1.0, 1.0};
  // Unsaturated measurement, prediction beyond each threshold.
  for (double b : {0.3, -0.55}) {
    for (double a : {1.2, 7.0, -1.01, -4.0}) {
      CHECK(nmc_entry_grad_a(a, b, spec) == 0.0);
      CHECK(nmc_entry_value(a, b, spec) > 0.0);
      CHECK(mc_entry_grad_a(a, b, spec) != 0.0);
    }
  }
  // Saturated measurement, consistent overshoot: both silent.
  CHECK(nmc_entry_grad_a(1.4, 1.0, spec) == 0.0);
  CHECK(nmc_entry_value(1.4, 1.0, spec) == 0.0);
  CHECK(mc_entry_grad_a(1.4, 1.0, spec) == 0.0);
  CHECK(mc_entry_value(1.4, 1.0, spec) == 0.0);
}

TEST_CASE("loss_mc identity and saturated cases") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams id = identity_net(2);
  const Mat y = column({0.4, 1.0});
  CHECK(loss_mc(id, y, spec).value == 0.0);

  const MLPParams shrink = scalar_net(1, 0.7);
  const Mat sat = column({1.0});
  const LossResult r = loss_mc(shrink, sat, spec);
  CHECK(r.value == doctest::Approx(0.09));
  CHECK(r.grads.max_abs() > 0.0);

  CHECK(loss_mc(scalar_net(1, 2.0), sat, spec).value == 0.0);
}

TEST_CASE("loss_ei vanishes for an equivariant composition") {
  const ClipSpec spec{-1.0, 1.0};
  const MLPParams id = identity_net(3);
  // Small g keeps g*y inside the thresholds, where identity is equivariant.
  GroupSampler group{0.1, 0.9};
  const Mat y = column({0.5, -0.3, 0.8});
  Rng rng(1);
  const LossResult r = loss_ei(id, y, spec, group, 4, rng);
  CHECK(r.value <= 1e-24);
}

TEST_CASE("loss_ei single draw equals the direct formula") {
  const ClipSpec spec{-1.0, 1.0};
  MLPConfig config;
  config.widths = {3, 6, 3};
  const MLPParams params = init_params(config, 7);
  const Mat y = column({0.9, -0.2, 0.4});
  const uint64_t seed = 99;

  Rng rng(seed);
  const LossResult r = loss_ei(params, y, spec, GroupSampler{0.5, 1.5}, 1, rng);

  Rng replay(seed);
  const double g = GroupSampler{0.5, 1.5}.sample(replay);
  const Mat fy = forward(params, y);
  const Mat inner = clip(Mat(g * fy), spec);
  const Mat expect = g * fy - forward(params, inner);
  CHECK(r.value == doctest::Approx(expect.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("loss_ei is bit-reproducible under a frozen seed") {
  const ClipSpec spec{-1.0, 1.0};
  MLPConfig config;
  config.widths = {4, 5, 4};
  const MLPParams params = init_params(config, 8);
  Rng rng1(55), rng2(55);
  const Mat y = column({0.1, 0.9, -0.4, 1.0});
  const LossResult a = loss_ei(params, y, spec, GroupSampler{0.5, 1.5}, 3, rng1);
  const LossResult b = loss_ei(params, y, spec, GroupSampler{0.5, 1.5}, 3, rng2);
  CHECK(a.value == b.value);
  for (size_t l = 0; l < a.grads.weights.size(); ++l) {
    CHECK(a.grads.weights[l] == b.grads.weights[l]);
  }
}

TEST_CASE("loss_supervised direct values") {
  const MLPParams id = identity_net(2);
  const Mat y = column({0.3, -0.1});
  CHECK(loss_supervised(id, y, y).value == 0.0);

  const MLPParams half = scalar_net(1, 0.5);
  const Mat y1 = column({1.0});
  const Mat x1 = column({1.0});
  CHECK(loss_supervised(half, y1, x1).value == doctest::Approx(0.25));
  CHECK_THROWS_AS(loss_supervised(half, y1, column({1.0, 2.0})), Error);
}

TEST_CASE("gradients of all four losses match central finite differences") {
  const ClipSpec spec{-1.0, 1.0};
  MLPConfig config;
  config.widths = {10, 16, 10};
  Rng data_rng(17);
  const double h = 1e-5;
  const double tolerance = 1e-4;

  int done = 0;
  for (uint64_t seed = 0; done < 20 && seed < 200; ++seed) {
    const MLPParams params = init_params(config, 1000 + seed);
    Mat x = 1.4 * random_mat(10, 4, data_rng);
    const Mat y = clip(x, spec);
    // Finite differences are only valid away from the piecewise-linear
    // kinks; skip draws that evaluate too close to one.
    if (near_kink(params, y, spec, 50 * h)) continue;

    CAPTURE(seed);

    {
      const LossResult r = loss_supervised(params, y, x);
      const Grads numeric = numeric_param_gradient(
          [&](const MLPParams& p) { return loss_supervised(p, y, x).value; }, params, h);
      CHECK(max_grad_rel_err(r.grads, numeric) <= tolerance);
    }
    {
      const LossResult r = loss_mc(params, y, spec);
      const Grads numeric = numeric_param_gradient(
          [&](const MLPParams& p) { return loss_mc(p, y, spec).value; }, params, h);
      CHECK(max_grad_rel_err(r.grads, numeric) <= tolerance);
    }
    {
      const LossResult r = loss_nmc(params, y, spec);
      const Grads numeric = numeric_param_gradient(
          [&](const MLPParams& p) { return loss_nmc(p, y, spec).value; }, params, h);
      CHECK(max_grad_rel_err(r.grads, numeric) <= tolerance);
    }
    {
      const uint64_t g_seed = 3000 + seed;
      Rng rng(g_seed);
      const LossResult r = loss_ei(params, y, spec, GroupSampler{0.5, 1.5}, 2, rng);
      const Grads numeric = numeric_param_gradient(
          [&](const MLPParams& p) {
            Rng frozen(g_seed);
            return loss_ei(p, y, spec, GroupSampler{0.5, 1.5}, 2, frozen).value;
          },
          params, h);
      CHECK(max_grad_rel_err(r.grads, numeric) <= tolerance);
    }
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("loss_combined composition") {
  const ClipSpec spec{-1.0, 1.0};
  MLPConfig config;
  config.widths = {4, 7, 4};
  const MLPParams params = init_params(config, 12);
  const Mat y = column({0.3, 1.0, -0.6, -1.0});

  LossConfig cfg;
  cfg.lambda = 0.0;
  Rng rng(5);
  CHECK(loss_combined(params, y, spec, cfg, rng).value ==
        loss_mc(params, y, spec).value);

  cfg.lambda = 0.7;
  Rng rng_a(5);
  const LossResult combined = loss_combined(params, y, spec, cfg, rng_a);
  Rng rng_b(5);
  const double mc = loss_mc(params, y, spec).value;
  const double ei =
      loss_ei(params, y, spec, cfg.group, cfg.ei_samples_per_item, rng_b).value;
  CHECK(combined.value == doctest::Approx(mc + 0.7 * ei).epsilon(1e-14));
  CHECK(combined.value >= 0.0);
}

TEST_CASE("all losses are nonnegative and vanish on a consistent oracle") {
  const ClipSpec spec{-1.0, 1.0};
  // Identity on measurements that never saturate: f is a perfect, consistent
  // reconstruction, every loss is exactly zero.
  const MLPParams id = identity_net(3);
  const Mat y = column({0.2, -0.5, 0.7});
  Rng rng(2);
  CHECK(loss_nmc(id, y, spec).value == 0.0);
  CHECK(loss_mc(id, y, spec).value == 0.0);
  CHECK(loss_supervised(id, y, y).value == 0.0);
  CHECK(loss_ei(id, y, spec, GroupSampler{0.1, 1.0}, 2, rng).value <= 1e-24);
}
