#pragma once

#include "declip/common.hpp"
#include "declip/forward_ops.hpp"
#include "declip/network.hpp"
#include "declip/rng.hpp"

namespace declip {

// Amplitude group: g ~ Uniform[g_min, g_max].
struct GroupSampler {
  double g_min = 0.5;
  double g_max = 1.5;

  void validate() const;
  double sample(Rng& rng) const;
};

struct LossConfig {
  double lambda = 1.0;         // weight of the equivariance term
  GroupSampler group;
  int ei_samples_per_item = 1; // Monte Carlo draws of g per item per step
  double sat_tol = 0.0;        // saturation tolerance of the training data

  void validate() const;
};

struct LossResult {
  double value = 0.0;
  Grads grads;
};

// Naive measurement consistency: sum over items of ||y - clip(f(y))||^2.
// The clip gradient is the indicator of the interior region, so entries
// predicted beyond a threshold contribute no gradient.
LossResult loss_nmc(const MLPParams& params, const Mat& y, const ClipSpec& spec);

// rho-based measurement consistency: sum of ||rho(f(y), y)||^2.
LossResult loss_mc(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                   double sat_tol = 0.0);

// Scale-equivariance: Monte Carlo estimate of
// sum_i E_g ||g*f(y_i) - f(clip(g*f(y_i)))||^2, averaged over the g draws.
// Gradients flow through both occurrences of f and through the clip
// interior indicator.
LossResult loss_ei(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                   const GroupSampler& group, int samples_per_item, Rng& rng);

// Supervised baseline: sum of ||f(y) - x||^2 over paired items.
LossResult loss_supervised(const MLPParams& params, const Mat& y, const Mat& x);

// loss_mc + lambda * loss_ei.
LossResult loss_combined(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                         const LossConfig& config, Rng& rng);

// Per-entry kernels used by the batch losses; exposed for entry-wise
// inspection of the gradient behaviour near the thresholds.
double nmc_entry_value(double a, double b, const ClipSpec& spec);
double nmc_entry_grad_a(double a, double b, const ClipSpec& spec);
double mc_entry_value(double a, double b, const ClipSpec& spec, double sat_tol = 0.0);
double mc_entry_grad_a(double a, double b, const ClipSpec& spec, double sat_tol = 0.0);

}  // namespace declip
