#include "declip/datasets.hpp"

#include <algorithm>
#include <cmath>

namespace declip {

ConeData gen_cone(const ConeSpec& spec) {
  require(spec.base.size() > 0 && spec.base.norm() > 0, "invalid-argument",
          "cone base signal must be nonzero");
  require(spec.amplitude_mean > 0, "invalid-argument",
          "cone amplitude mean must be positive");
  require(spec.count >= 1, "invalid-argument", "cone count must be >= 1");

  Rng rng(spec.seed);
  ConeData data;
  data.signals.resize(spec.base.size(), spec.count);
  data.amplitudes.resize(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    const double e = rng.exponential(spec.amplitude_mean);
    data.amplitudes[i] = e;
    data.signals.col(i) = e * spec.base;
  }
  return data;
}

int clipped_entry_count(const SubspaceSpec& spec) {
  // Small guard against v * n landing an ulp above an integer.
  const double raw = spec.clip_fraction * spec.ambient_dim;
  int c = static_cast<int>(std::ceil(raw - 1e-9));
  return std::clamp(c, 1, spec.ambient_dim);
}

SubspaceData gen_subspace_dataset(const SubspaceSpec& spec) {
  require(spec.ambient_dim >= 1, "invalid-argument", "ambient dimension must be >= 1");
  require(spec.subspace_dim >= 1 && spec.subspace_dim <= spec.ambient_dim,
          "invalid-argument", "subspace dimension must be in [1, n]");
  require(spec.clip_fraction > 0 && spec.clip_fraction < 1, "invalid-argument",
          "clip fraction must be in (0, 1)");
  require(spec.threshold > 0, "invalid-argument", "threshold must be positive");
  require(spec.count >= 1, "invalid-argument", "count must be >= 1");

  const int n = spec.ambient_dim;
  const int k = spec.subspace_dim;
  const int c = clipped_entry_count(spec);

  Rng basis_rng = Rng(spec.seed).split(0);
  SubspaceData data;
  data.basis.resize(n, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) data.basis(i, j) = basis_rng.normal();
  }

  data.signals.resize(n, spec.count);
  std::vector<double> mags(n);
  for (int i = 0; i < spec.count; ++i) {
    // Resample on the (measure-zero) degenerate draw where the pivotal
    // order statistic vanishes and no finite rescaling exists.
    for (uint64_t attempt = 0;; ++attempt) {
      Rng rng = Rng(spec.seed).split(1 + static_cast<uint64_t>(i)).split(attempt);
      Vec coeff(k);
      for (int j = 0; j < k; ++j) coeff[j] = rng.normal();
      Vec x = data.basis * coeff;
      for (int j = 0; j < n; ++j) mags[j] = std::abs(x[j]);
      std::nth_element(mags.begin(), mags.begin() + (c - 1), mags.end(),
                       std::greater<double>());
      const double pivot = mags[c - 1];
      if (pivot > 0) {
        // Dividing by the pivot first puts the pivotal entry at exactly
        // +/- threshold, so the at-or-above count is exact.
        data.signals.col(i) = (x / pivot) * spec.threshold;
        break;
      }
      require(attempt < 64, "degenerate-draw",
              "subspace sample " + std::to_string(i) + " kept producing a zero pivot");
    }
  }
  return data;
}

RandomOperator gaussian_operator(int m, int n, bool scaled, uint64_t seed) {
  require(m >= 1 && n >= 1, "invalid-argument", "operator dims must be >= 1");
  Rng rng(seed);
  const double scale = scaled ? 1.0 / std::sqrt(static_cast<double>(m)) : 1.0;
  Mat a(m, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) a(i, j) = scale * rng.normal();
  }
  return RandomOperator{std::move(a),
                        scaled ? OperatorKind::gaussian_scaled : OperatorKind::gaussian_unit,
                        seed};
}

RandomOperator haar_orthogonal(int n, uint64_t seed) {
  require(n >= 1, "invalid-argument", "operator dims must be >= 1");
  const Mat g = gaussian_operator(n, n, false, seed).matrix;
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return RandomOperator{std::move(q), OperatorKind::haar_orthogonal, seed};
}

RandomOperator identity_operator(int n) {
  return RandomOperator{Mat::Identity(n, n), OperatorKind::identity, 0};
}

SplitIndices split_indices(int count, double train_fraction, uint64_t seed) {
  require(train_fraction > 0 && train_fraction < 1, "invalid-argument",
          "train fraction must be in (0, 1)");
  const int train_n = static_cast<int>(std::floor(train_fraction * count + 1e-9));
  require(train_n >= 1 && train_n < count, "invalid-argument",
          "split would leave an empty side");
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  SplitIndices split;
  split.train.assign(order.begin(), order.begin() + train_n);
  split.test.assign(order.begin() + train_n, order.end());
  return split;
}

Mat select_columns(const Mat& data, const std::vector<int>& idx) {
  Mat out(data.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = data.col(idx[i]);
  return out;
}

Signal test_fixture_28x28() {
  // Soft ring with a diagonal stroke; values in [0, 1].
  Vec img(28 * 28);
  for (int row = 0; row < 28; ++row) {
    for (int col = 0; col < 28; ++col) {
      const double dy = (row - 13.5) / 13.5;
      const double dx = (col - 13.5) / 13.5;
      const double radius = std::sqrt(dx * dx + dy * dy);
      const double ring = std::exp(-std::pow((radius - 0.55) / 0.18, 2.0));
      const double d = (dx + dy) / std::sqrt(2.0);
      const double across = (dx - dy) / std::sqrt(2.0);
      const double stroke =
          std::exp(-std::pow(across / 0.12, 2.0)) * std::exp(-std::pow(d / 0.7, 2.0));
      img[row * 28 + col] = std::min(1.0, ring + 0.8 * stroke);
    }
  }
  return Signal{std::move(img), std::vector<int>{28, 28}};
}

}  // namespace declip
