#include "declip/losses.hpp"

#include <cmath>

namespace declip {

void GroupSampler::validate() const {
  require(g_min > 0 && g_min < g_max, "invalid-argument",
          "group sampler requires 0 < g_min < g_max");
}

double GroupSampler::sample(Rng& rng) const { return rng.uniform(g_min, g_max); }

void LossConfig::validate() const {
  require(lambda >= 0, "invalid-argument", "lambda must be nonnegative");
  require(ei_samples_per_item >= 1, "invalid-argument",
          "need at least one group draw per item");
  require(sat_tol >= 0, "invalid-argument", "saturation tolerance must be nonnegative");
  group.validate();
}

double nmc_entry_value(double a, double b, const ClipSpec& spec) {
  const double r = b - clip_value(a, spec);
  return r * r;
}

double nmc_entry_grad_a(double a, double b, const ClipSpec& spec) {
  const bool interior = a > spec.mu1 && a < spec.mu2;
  return interior ? 2.0 * (clip_value(a, spec) - b) : 0.0;
}

double mc_entry_value(double a, double b, const ClipSpec& spec, double sat_tol) {
  const double r = rho(a, b, spec, sat_tol);
  return r * r;
}

double mc_entry_grad_a(double a, double b, const ClipSpec& spec, double sat_tol) {
  return rho_grad_a(a, b, spec, sat_tol);
}

LossResult loss_nmc(const MLPParams& params, const Mat& y, const ClipSpec& spec) {
  require(y.cols() > 0, "invalid-argument", "empty batch");
  ForwardTrace trace;
  const Mat out = forward(params, y, &trace);
  LossResult result;
  result.grads = Grads::zeros_like(params);
  Mat grad_out(out.rows(), out.cols());
  for (int c = 0; c < out.cols(); ++c) {
    for (int r = 0; r < out.rows(); ++r) {
      result.value += nmc_entry_value(out(r, c), y(r, c), spec);
      grad_out(r, c) = nmc_entry_grad_a(out(r, c), y(r, c), spec);
    }
  }
  backward(params, trace, grad_out, result.grads);
  return result;
}

LossResult loss_mc(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                   double sat_tol) {
  require(y.cols() > 0, "invalid-argument", "empty batch");
  ForwardTrace trace;
  const Mat out = forward(params, y, &trace);
  LossResult result;
  result.grads = Grads::zeros_like(params);
  Mat grad_out(out.rows(), out.cols());
  for (int c = 0; c < out.cols(); ++c) {
    for (int r = 0; r < out.rows(); ++r) {
      result.value += mc_entry_value(out(r, c), y(r, c), spec, sat_tol);
      grad_out(r, c) = mc_entry_grad_a(out(r, c), y(r, c), spec, sat_tol);
    }
  }
  backward(params, trace, grad_out, result.grads);
  return result;
}

LossResult loss_ei(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                   const GroupSampler& group, int samples_per_item, Rng& rng) {
  require(y.cols() > 0, "invalid-argument", "empty batch");
  require(samples_per_item >= 1, "invalid-argument", "need at least one group draw");
  group.validate();

  ForwardTrace trace_y;
  const Mat out = forward(params, y, &trace_y);

  LossResult result;
  result.grads = Grads::zeros_like(params);
  Mat grad_wrt_out = Mat::Zero(out.rows(), out.cols());
  const double weight = 1.0 / samples_per_item;

  for (int s = 0; s < samples_per_item; ++s) {
    Vec g(y.cols());
    for (int c = 0; c < y.cols(); ++c) g[c] = group.sample(rng);

    Mat scaled = out * g.asDiagonal();
    Mat reclipped = clip(scaled, spec);
    ForwardTrace trace_z;
    const Mat second = forward(params, reclipped, &trace_z);
    const Mat residual = scaled - second;
    result.value += weight * residual.squaredNorm();

    // d/d(second) = -2r through the inner network evaluation, then the
    // clip interior indicator carries the input gradient back to `scaled`.
    Mat grad_z = backward(params, trace_z, (-2.0 * weight) * residual, result.grads);
    Mat grad_scaled = 2.0 * weight * residual;
    for (int c = 0; c < scaled.cols(); ++c) {
      for (int r = 0; r < scaled.rows(); ++r) {
        const bool interior = scaled(r, c) > spec.mu1 && scaled(r, c) < spec.mu2;
        if (interior) grad_scaled(r, c) += grad_z(r, c);
      }
    }
    grad_wrt_out += grad_scaled * g.asDiagonal();
  }
  backward(params, trace_y, grad_wrt_out, result.grads);
  return result;
}

LossResult loss_supervised(const MLPParams& params, const Mat& y, const Mat& x) {
  require(y.cols() > 0, "invalid-argument", "empty batch");
  require(x.rows() == y.rows() && x.cols() == y.cols(), "dimension-mismatch",
          "paired batch shapes differ");
  ForwardTrace trace;
  const Mat out = forward(params, y, &trace);
  LossResult result;
  result.grads = Grads::zeros_like(params);
  const Mat residual = out - x;
  result.value = residual.squaredNorm();
  backward(params, trace, 2.0 * residual, result.grads);
  return result;
}

LossResult loss_combined(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                         const LossConfig& config, Rng& rng) {
  config.validate();
  LossResult result = loss_mc(params, y, spec, config.sat_tol);
  if (config.lambda > 0) {
    LossResult ei = loss_ei(params, y, spec, config.group,
                            config.ei_samples_per_item, rng);
    result.value += config.lambda * ei.value;
    result.grads.accumulate(ei.grads, config.lambda);
  }
  return result;
}

}  // namespace declip
