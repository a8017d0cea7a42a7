#pragma once

#include <optional>
#include <string>
#include <vector>

#include "declip/common.hpp"
#include "declip/datasets.hpp"
#include "declip/losses.hpp"
#include "declip/metrics.hpp"
#include "declip/network.hpp"

namespace declip {

enum class LossMode { supervised, supervised_plus_ei, self_mc_ei, mc_only, nmc_ei };

const char* to_string(LossMode mode);
LossMode loss_mode_from_string(const std::string& name);
bool needs_ground_truth(LossMode mode);

struct TrainConfig {
  double learning_rate = 1e-4;
  int epochs = 300;
  int batch_size = 100;
  LossMode loss_mode = LossMode::self_mc_ei;
  LossConfig loss;
  uint64_t seed = 0;
  int eval_every = 0;  // 0 disables in-training evaluation

  void validate() const;
};

// Adam accumulators, one slot per parameter tensor.
struct OptState {
  std::vector<Mat> m_w, v_w;
  std::vector<Vec> m_b, v_b;
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static OptState zeros_like(const MLPParams& params);
};

// Standard bias-corrected adaptive moment update.
void adam_step(MLPParams& params, const Grads& grads, OptState& state, double lr);

// Training data. Ground-truth signals are optional; the self-supervised
// modes never read them.
struct Dataset {
  std::optional<Mat> signals;  // n x N
  Mat measurements;            // n x N
  ClipSpec spec;

  int count() const { return static_cast<int>(measurements.cols()); }
  Dataset subset(const std::vector<int>& idx) const;
};

Dataset make_dataset(const Mat& signals, const ClipSpec& spec);

struct TrainReport {
  std::vector<double> epoch_loss;      // per-item mean training loss
  std::vector<int> eval_epochs;
  std::vector<double> eval_metric;     // mean test SDR at eval_epochs
  std::vector<double> epoch_seconds;   // wall clock, not serialized
};

// CSV columns: epoch, loss, metric (metric empty on non-eval epochs).
void write_report_csv(const TrainReport& report, const std::string& path);

struct FitResult {
  MLPParams params;
  TrainReport report;
};

FitResult fit(const TrainConfig& config, const MLPConfig& model, const Dataset& train,
              const Dataset* eval_set = nullptr);

enum class Metric { sdr, psnr };

struct EvalSummary {
  SummaryStats stats;
  std::vector<double> per_item;
};

// Mean and standard deviation of the metric over test items; reconstruction
// is forward(+blend) against the ground-truth signals.
EvalSummary evaluate(const MLPParams& params, const Dataset& test,
                     Metric metric = Metric::sdr, bool apply_blend = true,
                     double sat_tol = 0.0);

// Identity baseline: score the measurement itself as the reconstruction.
EvalSummary evaluate_identity(const Dataset& test, Metric metric = Metric::sdr);

struct GridSweepConfig {
  std::vector<int> k_values;
  std::vector<double> v_values;
  int ambient_dim = 100;
  double threshold = 1.0;
  int count = 1000;
  double train_fraction = 0.9;
  std::vector<int> hidden_widths = {100, 100, 100, 100};
  TrainConfig train;  // shared hyperparameters; seeds derived per cell
  uint64_t data_seed = 0;
};

struct GridCell {
  int k = 0;
  double v = 0.0;
  std::string method;
  double mean_sdr = 0.0;
  double std_sdr = 0.0;
};

// Trains supervised and self-supervised models per (k, v) cell and records
// mean test SDR, plus the identity baseline row for reference.
std::vector<GridCell> grid_sweep(const GridSweepConfig& config);

void write_grid_csv(const std::vector<GridCell>& cells, const std::string& path);

}  // namespace declip
