#include <doctest.h>

#include <algorithm>
#include <set>

#include "declip/datasets.hpp"
#include "declip/forward_ops.hpp"

using namespace declip;

TEST_CASE("cone amplitudes follow the exponential mean") {
  ConeSpec spec;
  spec.base = Vec::Ones(4);
  spec.amplitude_mean = 2.0;
  spec.count = 100000;
  spec.seed = 42;
  const ConeData data = gen_cone(spec);
  double mean = 0.0;
  for (double e : data.amplitudes) mean += e;
  mean /= spec.count;
  CHECK(mean >= 1.96);
  CHECK(mean <= 2.04);
}

TEST_CASE("cone samples are nonnegative multiples of the base") {
  ConeSpec spec;
  spec.base = Vec(3);
  spec.base << 1.0, -2.0, 0.5;
  spec.count = 200;
  spec.seed = 1;
  const ConeData data = gen_cone(spec);
  const Vec dir = spec.base / spec.base.norm();
  for (int i = 0; i < spec.count; ++i) {
    const Vec col = data.signals.col(i);
    CHECK(col.norm() > 0);
    const double corr = col.dot(dir) / col.norm();
    CHECK(corr == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Normalized set collapses to a single point: scale invariance.
  const Vec d0 = data.signals.col(0) / data.signals.col(0).norm();
  for (int i = 1; i < spec.count; ++i) {
    const Vec di = data.signals.col(i) / data.signals.col(i).norm();
    CHECK((di - d0).norm() <= 1e-10);
  }
}

TEST_CASE("cone generation is deterministic and rejects a zero base") {
  ConeSpec spec;
  spec.base = Vec::Ones(5);
  spec.count = 64;
  spec.seed = 9;
  const ConeData a = gen_cone(spec);
  const ConeData b = gen_cone(spec);
  CHECK(a.signals == b.signals);

  spec.base = Vec::Zero(5);
  CHECK_THROWS_AS(gen_cone(spec), Error);
}

TEST_CASE("subspace signals hit the clip-count contract exactly") {
  SubspaceSpec spec;
  spec.ambient_dim = 100;
  spec.subspace_dim = 3;
  spec.clip_fraction = 0.2;
  spec.threshold = 1.0;
  spec.count = 50;
  spec.seed = 100;
  CHECK(clipped_entry_count(spec) == 20);
  const SubspaceData data = gen_subspace_dataset(spec);
  for (int i = 0; i < spec.count; ++i) {
    int at_or_above = 0;
    for (int j = 0; j < spec.ambient_dim; ++j) {
      if (std::abs(data.signals(j, i)) >= spec.threshold) ++at_or_above;
    }
    CHECK(at_or_above == 20);
  }
}

TEST_CASE("clip touches exactly the top-magnitude entries (sort oracle)") {
  SubspaceSpec spec;
  spec.ambient_dim = 60;
  spec.subspace_dim = 4;
  spec.clip_fraction = 0.25;
  spec.threshold = 1.0;
  spec.count = 20;
  spec.seed = 7;
  const int c = clipped_entry_count(spec);
  const ClipSpec clip_spec = ClipSpec::symmetric(spec.threshold);
  const SubspaceData data = gen_subspace_dataset(spec);
  for (int i = 0; i < spec.count; ++i) {
    const Vec x = data.signals.col(i);
    // Independent oracle: sort indices by |x_j| descending.
    std::vector<int> order(spec.ambient_dim);
    for (int j = 0; j < spec.ambient_dim; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
    const Vec y = clip(x, clip_spec);
    std::set<int> top(order.begin(), order.begin() + c);
    for (int j = 0; j < spec.ambient_dim; ++j) {
      if (top.count(j)) {
        CHECK((y[j] == clip_spec.mu1 || y[j] == clip_spec.mu2));
      } else {
        CHECK(y[j] == x[j]);
        CHECK(std::abs(x[j]) < spec.threshold);
      }
    }
  }
}

TEST_CASE("subspace signals lie in the span of the basis") {
  SubspaceSpec spec;
  spec.ambient_dim = 40;
  spec.subspace_dim = 5;
  spec.clip_fraction = 0.1;
  spec.threshold = 1.0;
  spec.count = 30;
  spec.seed = 11;
  const SubspaceData data = gen_subspace_dataset(spec);
  // Projector onto span(basis) via the normal equations.
  const Mat b = data.basis;
  const Mat proj = b * (b.transpose() * b).inverse() * b.transpose();
  for (int i = 0; i < spec.count; ++i) {
    const Vec x = data.signals.col(i);
    CHECK((x - proj * x).norm() <= 1e-8 * x.norm());
  }
}

TEST_CASE("k=1 subspace signals are pairwise collinear") {
  SubspaceSpec spec;
  spec.ambient_dim = 30;
  spec.subspace_dim = 1;
  spec.clip_fraction = 0.2;
  spec.threshold = 1.0;
  spec.count = 10;
  spec.seed = 3;
  const SubspaceData data = gen_subspace_dataset(spec);
  const Vec d0 = data.signals.col(0) / data.signals.col(0).norm();
  for (int i = 1; i < spec.count; ++i) {
    const Vec di = data.signals.col(i) / data.signals.col(i).norm();
    CHECK(std::min((di - d0).norm(), (di + d0).norm()) <= 1e-10);
  }
}

TEST_CASE("subspace generation is bit-reproducible") {
  SubspaceSpec spec;
  spec.ambient_dim = 50;
  spec.subspace_dim = 2;
  spec.clip_fraction = 0.3;
  spec.threshold = 1.0;
  spec.count = 25;
  spec.seed = 1234;
  const SubspaceData a = gen_subspace_dataset(spec);
  const SubspaceData b = gen_subspace_dataset(spec);
  CHECK(a.basis == b.basis);
  CHECK(a.signals == b.signals);
}

TEST_CASE("unit gaussian operator entry variance") {
  const RandomOperator op = gaussian_operator(1000, 1000, false, 77);
  const double mean = op.matrix.mean();
  const double var = (op.matrix.array() - mean).square().sum() / (1e6 - 1.0);
  CHECK(var >= 0.99);
  CHECK(var <= 1.01);
  CHECK(gaussian_operator(1000, 1000, false, 77).matrix == op.matrix);
}

TEST_CASE("scaled operator: E||Ax||_1 approaches sqrt(2m/pi) for unit x") {
  const int m = 400;
  const int n = 30;
  const double expected = std::sqrt(2.0 * m / M_PI);
  Rng rng(5);
  double total = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const RandomOperator op = gaussian_operator(m, n, true, rng.bits());
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.normal();
    x /= x.norm();
    total += (op.matrix * x).lpNorm<1>();
  }
  // Each |(Ax)_i| has mean sqrt(2/(pi m)), so the sum has mean sqrt(2m/pi).
  CHECK(std::abs(total / trials - expected) / expected <= 0.02);
}

TEST_CASE("haar orthogonal operator is an isometry with unit determinant") {
  for (int n : {1, 2, 17, 60}) {
    const RandomOperator op = haar_orthogonal(n, 900 + n);
    const Mat q = op.matrix;
    CHECK((q.transpose() * q - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(std::abs(q.determinant()) - 1.0) <= 1e-8);
    Rng rng(4);
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.normal();
    CHECK(std::abs((q * x).norm() - x.norm()) <= 1e-8 * x.norm());
    if (n == 1) CHECK((q(0, 0) == 1.0 || q(0, 0) == -1.0));
  }
}

TEST_CASE("split is deterministic, disjoint and complete") {
  const SplitIndices split = split_indices(1000, 0.9, 17);
  CHECK(split.train.size() == 900);
  CHECK(split.test.size() == 100);
  std::set<int> all(split.train.begin(), split.train.end());
  all.insert(split.test.begin(), split.test.end());
  CHECK(all.size() == 1000);
  const SplitIndices again = split_indices(1000, 0.9, 17);
  CHECK(again.train == split.train);
  CHECK(again.test == split.test);
  CHECK_THROWS_AS(split_indices(3, 0.01, 0), Error);
}

TEST_CASE("bundled 28x28 fixture is a valid nonnegative image") {
  const Signal img = test_fixture_28x28();
  CHECK(img.dim() == 784);
  REQUIRE(img.shape.has_value());
  CHECK((*img.shape)[0] == 28);
  CHECK(img.values.minCoeff() >= 0.0);
  CHECK(img.values.maxCoeff() <= 1.0);
  CHECK(img.values.maxCoeff() > 0.5);
  CHECK(img.values == test_fixture_28x28().values);
}
