#pragma once

#include <cstdint>
#include <vector>

#include "declip/common.hpp"
#include "declip/forward_ops.hpp"

namespace declip {

// Fully-connected ReLU network. Bias-free nets are positively homogeneous
// by construction: f(g*y) = g*f(y) for all g > 0, and f(0) = 0.
struct MLPConfig {
  std::vector<int> widths;  // input, hidden..., output
  bool bias_free = true;
  bool skip_blend = false;  // pass output through blend(y, .) on reconstruction

  int layer_count() const { return static_cast<int>(widths.size()) - 1; }
  void validate() const;
};

struct MLPParams {
  std::vector<Mat> weights;  // weights[l] has shape widths[l+1] x widths[l]
  std::vector<Vec> biases;   // empty for bias-free nets

  int layer_count() const { return static_cast<int>(weights.size()); }
  bool bias_free() const { return biases.empty(); }
  std::vector<int> widths() const;
  long parameter_count() const;
  void validate() const;
};

// Pre-activations and hidden activations of one batch, kept for the
// backward pass.
struct ForwardTrace {
  Mat input;
  std::vector<Mat> pre;     // layer_count entries
  std::vector<Mat> hidden;  // layer_count - 1 entries (ReLU outputs)
};

struct Grads {
  std::vector<Mat> weights;
  std::vector<Vec> biases;

  static Grads zeros_like(const MLPParams& params);
  void accumulate(const Grads& other, double scale = 1.0);
  void scale(double factor);
  double max_abs() const;
};

// He-style init: W_ij ~ N(0, 2 / fan_in); biases start at zero.
MLPParams init_params(const MLPConfig& config, uint64_t seed);

// Hidden layers use ReLU, the output layer is linear. Columns are batch
// items. Pass a trace to enable backward().
Mat forward(const MLPParams& params, const Mat& input, ForwardTrace* trace = nullptr);

// Reverse-mode gradients of the scalar loss whose output-gradient is
// grad_out. Accumulates parameter gradients into grads and returns the
// gradient with respect to the input batch. ReLU subgradient at 0 is 0.
Mat backward(const MLPParams& params, const ForwardTrace& trace, const Mat& grad_out,
             Grads& grads);

// forward(+blend): the full reconstruction map for measurement batches.
Mat reconstruct(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                bool apply_blend, double sat_tol = 0.0);

// Checkpoint file: magic "DCLP", u32 format version, u32 layer count,
// u32 widths, then row-major f64 little-endian weights per layer. Version 1
// covers bias-free nets; version 2 appends one f64 bias block per layer.
void save_checkpoint(const MLPParams& params, const std::string& path);
MLPParams load_checkpoint(const std::string& path);

}  // namespace declip
