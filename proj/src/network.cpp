#include "declip/network.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "declip/rng.hpp"

namespace declip {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

void MLPConfig::validate() const {
  require(widths.size() >= 2, "invalid-argument", "network needs at least 2 layers");
  for (int w : widths) {
    require(w >= 1, "invalid-argument", "layer widths must be positive");
  }
}

std::vector<int> MLPParams::widths() const {
  std::vector<int> w;
  w.push_back(static_cast<int>(weights.front().cols()));
  for (const Mat& m : weights) w.push_back(static_cast<int>(m.rows()));
  return w;
}

long MLPParams::parameter_count() const {
  long count = 0;
  for (const Mat& m : weights) count += m.size();
  for (const Vec& b : biases) count += b.size();
  return count;
}

void MLPParams::validate() const {
  require(!weights.empty(), "invalid-argument", "empty parameter set");
  for (size_t l = 1; l < weights.size(); ++l) {
    require(weights[l].cols() == weights[l - 1].rows(), "invalid-argument",
            "weight shapes do not chain at layer " + std::to_string(l));
  }
  if (!biases.empty()) {
    require(biases.size() == weights.size(), "invalid-argument",
            "bias count does not match layer count");
    for (size_t l = 0; l < weights.size(); ++l) {
      require(biases[l].size() == weights[l].rows(), "invalid-argument",
              "bias shape mismatch at layer " + std::to_string(l));
    }
  }
  for (const Mat& m : weights) {
    require(m.allFinite(), "invalid-input", "non-finite weight entry");
  }
}

Grads Grads::zeros_like(const MLPParams& params) {
  Grads g;
  for (const Mat& w : params.weights) g.weights.push_back(Mat::Zero(w.rows(), w.cols()));
  for (const Vec& b : params.biases) g.biases.push_back(Vec::Zero(b.size()));
  return g;
}

void Grads::accumulate(const Grads& other, double scale) {
  for (size_t l = 0; l < weights.size(); ++l) weights[l] += scale * other.weights[l];
  for (size_t l = 0; l < biases.size(); ++l) biases[l] += scale * other.biases[l];
}

void Grads::scale(double factor) {
  for (Mat& w : weights) w *= factor;
  for (Vec& b : biases) b *= factor;
}

double Grads::max_abs() const {
  double m = 0.0;
  for (const Mat& w : weights) m = std::max(m, w.cwiseAbs().maxCoeff());
  for (const Vec& b : biases) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

MLPParams init_params(const MLPConfig& config, uint64_t seed) {
  config.validate();
  Rng rng(seed);
  MLPParams params;
  for (int l = 0; l + 1 < static_cast<int>(config.widths.size()); ++l) {
    const int fan_in = config.widths[l];
    const int fan_out = config.widths[l + 1];
    const double stddev = std::sqrt(2.0 / fan_in);
    Mat w(fan_out, fan_in);
    for (int j = 0; j < fan_in; ++j) {
      for (int i = 0; i < fan_out; ++i) w(i, j) = stddev * rng.normal();
    }
    params.weights.push_back(std::move(w));
    if (!config.bias_free) params.biases.push_back(Vec::Zero(fan_out));
  }
  return params;
}

Mat forward(const MLPParams& params, const Mat& input, ForwardTrace* trace) {
  require(input.rows() == params.weights.front().cols(), "dimension-mismatch",
          "input width does not match first layer");
  const int layers = params.layer_count();
  if (trace) {
    trace->input = input;
    trace->pre.clear();
    trace->hidden.clear();
  }
  Mat a = input;
  for (int l = 0; l < layers; ++l) {
    Mat z = params.weights[l] * a;
    if (!params.biases.empty()) z.colwise() += params.biases[l];
    if (trace) trace->pre.push_back(z);
    if (l + 1 < layers) {
      a = z.cwiseMax(0.0);
      if (trace) trace->hidden.push_back(a);
    } else {
      a = std::move(z);
    }
  }
  return a;
}

Mat backward(const MLPParams& params, const ForwardTrace& trace, const Mat& grad_out,
             Grads& grads) {
  const int layers = params.layer_count();
  require(static_cast<int>(trace.pre.size()) == layers, "stale-trace",
          "trace does not match parameter count");
  require(grad_out.rows() == trace.pre.back().rows() &&
              grad_out.cols() == trace.pre.back().cols(),
          "stale-trace", "output gradient shape does not match trace");

  Mat delta = grad_out;
  for (int l = layers - 1; l >= 0; --l) {
    const Mat& a_prev = (l == 0) ? trace.input : trace.hidden[l - 1];
    grads.weights[l].noalias() += delta * a_prev.transpose();
    if (!grads.biases.empty()) grads.biases[l] += delta.rowwise().sum();
    Mat back = params.weights[l].transpose() * delta;
    if (l > 0) {
      // ReLU subgradient: 1 on strictly positive pre-activations, else 0.
      delta = back.cwiseProduct(
          (trace.pre[l - 1].array() > 0.0).cast<double>().matrix());
    } else {
      delta = std::move(back);
    }
  }
  return delta;  // gradient with respect to the input batch
}

Mat reconstruct(const MLPParams& params, const Mat& y, const ClipSpec& spec,
                bool apply_blend, double sat_tol) {
  Mat out = forward(params, y);
  if (apply_blend) out = blend(y, out, spec, sat_tol);
  return out;
}

namespace {

constexpr char kMagic[4] = {'D', 'C', 'L', 'P'};
constexpr uint32_t kVersionBiasFree = 1;
constexpr uint32_t kVersionBiased = 2;

void write_u32(std::ofstream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint32_t read_u32(std::ifstream& in, const std::string& what) {
  uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  require(in.good(), "checkpoint-truncated", "could not read " + what);
  return v;
}

}  // namespace

void save_checkpoint(const MLPParams& params, const std::string& path) {
  params.validate();
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "io-error", "cannot open checkpoint for writing: " + path);
  out.write(kMagic, 4);
  write_u32(out, params.bias_free() ? kVersionBiasFree : kVersionBiased);
  write_u32(out, static_cast<uint32_t>(params.layer_count()));
  for (int w : params.widths()) write_u32(out, static_cast<uint32_t>(w));
  for (int l = 0; l < params.layer_count(); ++l) {
    // Row-major on disk; Eigen matrices are column-major in memory.
    const Mat& w = params.weights[l];
    for (int i = 0; i < w.rows(); ++i) {
      for (int j = 0; j < w.cols(); ++j) {
        const double v = w(i, j);
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
      }
    }
    if (!params.bias_free()) {
      const Vec& b = params.biases[l];
      out.write(reinterpret_cast<const char*>(b.data()),
                static_cast<std::streamsize>(sizeof(double) * b.size()));
    }
  }
  require(out.good(), "io-error", "checkpoint write failed: " + path);
}

MLPParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "io-error", "cannot open checkpoint: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  require(in.good() && std::memcmp(magic, kMagic, 4) == 0, "checkpoint-bad-magic",
          "not a checkpoint file: " + path);
  const uint32_t version = read_u32(in, "version");
  require(version == kVersionBiasFree || version == kVersionBiased,
          "checkpoint-version",
          "unsupported checkpoint version " + std::to_string(version));
  const uint32_t layers = read_u32(in, "layer count");
  require(layers >= 1 && layers < 1024, "checkpoint-corrupt", "implausible layer count");
  std::vector<int> widths(layers + 1);
  for (uint32_t i = 0; i <= layers; ++i) {
    const uint32_t w = read_u32(in, "width");
    require(w >= 1 && w <= (1u << 24), "checkpoint-corrupt", "implausible layer width");
    widths[i] = static_cast<int>(w);
  }
  MLPParams params;
  for (uint32_t l = 0; l < layers; ++l) {
    Mat w(widths[l + 1], widths[l]);
    for (int i = 0; i < w.rows(); ++i) {
      for (int j = 0; j < w.cols(); ++j) {
        double v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof(v));
        require(in.good(), "checkpoint-truncated", "weight data ends early");
        w(i, j) = v;
      }
    }
    params.weights.push_back(std::move(w));
    if (version == kVersionBiased) {
      Vec b(widths[l + 1]);
      in.read(reinterpret_cast<char*>(b.data()),
              static_cast<std::streamsize>(sizeof(double) * b.size()));
      require(in.good(), "checkpoint-truncated", "bias data ends early");
      params.biases.push_back(std::move(b));
    }
  }
  params.validate();
  return params;
}

}  // namespace declip
