#include "declip/trainer.hpp"

#include <chrono>
#include <cmath>

#include "declip/csv.hpp"

namespace declip {

const char* to_string(LossMode mode) {
  switch (mode) {
    case LossMode::supervised: return "supervised";
    case LossMode::supervised_plus_ei: return "supervised_plus_ei";
    case LossMode::self_mc_ei: return "self_mc_ei";
    case LossMode::mc_only: return "mc_only";
    case LossMode::nmc_ei: return "nmc_ei";
  }
  return "?";
}

LossMode loss_mode_from_string(const std::string& name) {
  if (name == "supervised") return LossMode::supervised;
  if (name == "supervised_plus_ei") return LossMode::supervised_plus_ei;
  if (name == "self_mc_ei") return LossMode::self_mc_ei;
  if (name == "mc_only") return LossMode::mc_only;
  if (name == "nmc_ei") return LossMode::nmc_ei;
  throw Error("invalid-argument", "unknown loss mode: " + name);
}

bool needs_ground_truth(LossMode mode) {
  return mode == LossMode::supervised || mode == LossMode::supervised_plus_ei;
}

void TrainConfig::validate() const {
  require(learning_rate > 0, "invalid-argument", "learning rate must be positive");
  require(epochs >= 1, "invalid-argument", "epochs must be >= 1");
  require(batch_size >= 1, "invalid-argument", "batch size must be >= 1");
  require(eval_every >= 0, "invalid-argument", "eval_every must be >= 0");
  loss.validate();
}

OptState OptState::zeros_like(const MLPParams& params) {
  OptState s;
  for (const Mat& w : params.weights) {
    s.m_w.push_back(Mat::Zero(w.rows(), w.cols()));
    s.v_w.push_back(Mat::Zero(w.rows(), w.cols()));
  }
  for (const Vec& b : params.biases) {
    s.m_b.push_back(Vec::Zero(b.size()));
    s.v_b.push_back(Vec::Zero(b.size()));
  }
  return s;
}

void adam_step(MLPParams& params, const Grads& grads, OptState& state, double lr) {
  require(grads.weights.size() == params.weights.size(), "dimension-mismatch",
          "gradient/parameter layer counts differ");
  state.step += 1;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t l = 0; l < params.weights.size(); ++l) {
    auto g = grads.weights[l].array();
    auto m = state.m_w[l].array();
    auto v = state.v_w[l].array();
    state.m_w[l].array() = state.beta1 * m + (1.0 - state.beta1) * g;
    state.v_w[l].array() = state.beta2 * v + (1.0 - state.beta2) * g.square();
    params.weights[l].array() -=
        lr * (state.m_w[l].array() / c1) / ((state.v_w[l].array() / c2).sqrt() + state.eps);
  }
  for (size_t l = 0; l < params.biases.size(); ++l) {
    auto g = grads.biases[l].array();
    state.m_b[l].array() = state.beta1 * state.m_b[l].array() + (1.0 - state.beta1) * g;
    state.v_b[l].array() = state.beta2 * state.v_b[l].array() + (1.0 - state.beta2) * g.square();
    params.biases[l].array() -=
        lr * (state.m_b[l].array() / c1) / ((state.v_b[l].array() / c2).sqrt() + state.eps);
  }
}

Dataset make_dataset(const Mat& signals, const ClipSpec& spec) {
  Dataset d;
  d.signals = signals;
  d.measurements = clip(signals, spec);
  d.spec = spec;
  return d;
}

Dataset Dataset::subset(const std::vector<int>& idx) const {
  Dataset d;
  if (signals) d.signals = select_columns(*signals, idx);
  d.measurements = select_columns(measurements, idx);
  d.spec = spec;
  return d;
}

namespace {

// Loss over one batch for the configured mode. The self-supervised modes
// only ever see the measurement matrix.
LossResult batch_loss(LossMode mode, const MLPParams& params, const Mat& y,
                      const Mat* x, const ClipSpec& spec, const LossConfig& cfg,
                      Rng& rng) {
  switch (mode) {
    case LossMode::supervised:
      return loss_supervised(params, y, *x);
    case LossMode::supervised_plus_ei: {
      LossResult r = loss_supervised(params, y, *x);
      LossResult ei = loss_ei(params, y, spec, cfg.group, cfg.ei_samples_per_item, rng);
      r.value += cfg.lambda * ei.value;
      r.grads.accumulate(ei.grads, cfg.lambda);
      return r;
    }
    case LossMode::self_mc_ei:
      return loss_combined(params, y, spec, cfg, rng);
    case LossMode::mc_only:
      return loss_mc(params, y, spec, cfg.sat_tol);
    case LossMode::nmc_ei: {
      LossResult r = loss_nmc(params, y, spec);
      LossResult ei = loss_ei(params, y, spec, cfg.group, cfg.ei_samples_per_item, rng);
      r.value += cfg.lambda * ei.value;
      r.grads.accumulate(ei.grads, cfg.lambda);
      return r;
    }
  }
  throw Error("invalid-argument", "unhandled loss mode");
}

}  // namespace

FitResult fit(const TrainConfig& config, const MLPConfig& model, const Dataset& train,
              const Dataset* eval_set) {
  config.validate();
  model.validate();
  require(train.count() >= 1, "invalid-argument", "empty training set");
  if (needs_ground_truth(config.loss_mode)) {
    require(train.signals.has_value(), "missing-ground-truth",
            std::string(to_string(config.loss_mode)) +
                " training requires ground-truth signals");
  }

  FitResult result;
  result.params = init_params(model, Rng::mix(config.seed, 1));
  OptState opt = OptState::zeros_like(result.params);
  const Rng shuffle_base(Rng::mix(config.seed, 2));
  const Rng group_base(Rng::mix(config.seed, 3));

  const int n_items = train.count();
  std::vector<int> order(n_items);
  long step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < n_items; ++i) order[i] = i;
    Rng shuffle_rng = shuffle_base.split(static_cast<uint64_t>(epoch));
    shuffle_rng.shuffle(order);

    double epoch_loss = 0.0;
    for (int start = 0; start < n_items; start += config.batch_size) {
      const int end = std::min(n_items, start + config.batch_size);
      std::vector<int> batch_idx(order.begin() + start, order.begin() + end);
      const Mat y = select_columns(train.measurements, batch_idx);
      Mat x;
      if (needs_ground_truth(config.loss_mode)) x = select_columns(*train.signals, batch_idx);

      Rng group_rng = group_base.split(static_cast<uint64_t>(step));
      LossResult loss = batch_loss(config.loss_mode, result.params, y,
                                   x.size() ? &x : nullptr, train.spec, config.loss,
                                   group_rng);
      if (!std::isfinite(loss.value)) {
        throw Error("nan-loss", "non-finite loss at step " + std::to_string(step) +
                                    " (epoch " + std::to_string(epoch) + ", batch " +
                                    std::to_string(start / config.batch_size) + ")");
      }
      epoch_loss += loss.value;
      adam_step(result.params, loss.grads, opt, config.learning_rate);
      ++step;
    }
    result.report.epoch_loss.push_back(epoch_loss / n_items);
    const auto t1 = std::chrono::steady_clock::now();
    result.report.epoch_seconds.push_back(
        std::chrono::duration<double>(t1 - t0).count());

    if (eval_set && config.eval_every > 0 &&
        ((epoch + 1) % config.eval_every == 0 || epoch + 1 == config.epochs)) {
      const EvalSummary summary =
          evaluate(result.params, *eval_set, Metric::sdr, true, config.loss.sat_tol);
      result.report.eval_epochs.push_back(epoch + 1);
      result.report.eval_metric.push_back(summary.stats.mean);
    }
  }
  return result;
}

EvalSummary evaluate(const MLPParams& params, const Dataset& test, Metric metric,
                     bool apply_blend, double sat_tol) {
  require(test.count() >= 1, "invalid-argument", "empty test set");
  require(test.signals.has_value(), "missing-ground-truth",
          "evaluation requires ground-truth signals");
  const Mat recon =
      reconstruct(params, test.measurements, test.spec, apply_blend, sat_tol);
  EvalSummary summary;
  for (int i = 0; i < test.count(); ++i) {
    const Vec x = test.signals->col(i);
    const Vec xhat = recon.col(i);
    summary.per_item.push_back(metric == Metric::sdr ? sdr(x, xhat) : psnr(x, xhat));
  }
  summary.stats = summarize(summary.per_item);
  return summary;
}

EvalSummary evaluate_identity(const Dataset& test, Metric metric) {
  require(test.signals.has_value(), "missing-ground-truth",
          "evaluation requires ground-truth signals");
  EvalSummary summary;
  for (int i = 0; i < test.count(); ++i) {
    const Vec x = test.signals->col(i);
    const Vec y = test.measurements.col(i);
    summary.per_item.push_back(metric == Metric::sdr ? sdr(x, y) : psnr(x, y));
  }
  summary.stats = summarize(summary.per_item);
  return summary;
}

std::vector<GridCell> grid_sweep(const GridSweepConfig& config) {
  require(!config.k_values.empty() && !config.v_values.empty(), "invalid-argument",
          "grid sweep needs nonempty k and v lists");
  std::vector<GridCell> cells;
  uint64_t cell_index = 0;
  for (int k : config.k_values) {
    for (double v : config.v_values) {
      SubspaceSpec spec;
      spec.ambient_dim = config.ambient_dim;
      spec.subspace_dim = k;
      spec.clip_fraction = v;
      spec.threshold = config.threshold;
      spec.count = config.count;
      spec.seed = Rng::mix(config.data_seed, cell_index);

      const SubspaceData data = gen_subspace_dataset(spec);
      const ClipSpec clip_spec = ClipSpec::symmetric(config.threshold);
      const Dataset full = make_dataset(data.signals, clip_spec);
      const SplitIndices split =
          split_indices(spec.count, config.train_fraction, Rng::mix(spec.seed, 77));
      const Dataset train = full.subset(split.train);
      const Dataset test = full.subset(split.test);

      MLPConfig model;
      model.widths.push_back(config.ambient_dim);
      for (int h : config.hidden_widths) model.widths.push_back(h);
      model.widths.push_back(config.ambient_dim);

      const EvalSummary identity = evaluate_identity(test);
      cells.push_back(GridCell{k, v, "identity", identity.stats.mean,
                               identity.stats.stddev});

      for (LossMode mode : {LossMode::supervised, LossMode::self_mc_ei}) {
        TrainConfig train_cfg = config.train;
        train_cfg.loss_mode = mode;
        train_cfg.seed = Rng::mix(config.train.seed, cell_index * 2 +
                                                          (mode == LossMode::supervised ? 0 : 1));
        const FitResult fitres = fit(train_cfg, model, train);
        const EvalSummary summary = evaluate(fitres.params, test);
        cells.push_back(GridCell{k, v, to_string(mode), summary.stats.mean,
                                 summary.stats.stddev});
      }
      ++cell_index;
    }
  }
  return cells;
}

void write_report_csv(const TrainReport& report, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"epoch", "loss", "metric"});
  size_t eval_pos = 0;
  for (size_t e = 0; e < report.epoch_loss.size(); ++e) {
    csv.field(static_cast<long>(e + 1));
    csv.field(report.epoch_loss[e]);
    if (eval_pos < report.eval_epochs.size() &&
        report.eval_epochs[eval_pos] == static_cast<int>(e + 1)) {
      csv.field(report.eval_metric[eval_pos]);
      ++eval_pos;
    } else {
      csv.field(std::string());
    }
    csv.end_row();
  }
}

void write_grid_csv(const std::vector<GridCell>& cells, const std::string& path) {
  CsvWriter csv(path);
  csv.header({"k", "v", "method", "mean_sdr", "std_sdr"});
  for (const GridCell& c : cells) {
    csv.field(static_cast<long>(c.k));
    csv.field(c.v);
    csv.field(c.method);
    csv.field(c.mean_sdr);
    csv.field(c.std_sdr);
    csv.end_row();
  }
}

}  // namespace declip
