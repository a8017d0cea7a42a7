#include "declip/theory_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declip/rng.hpp"

namespace declip {

double radius_bound(int k, int m, double mu) {
  require(k >= 1 && m >= 1, "invalid-argument", "dimensions must be positive");
  require(mu > 0, "invalid-argument", "threshold must be positive");
  const double bound = mu * (0.5 - static_cast<double>(k + 1) / m);
  require(bound > 0, "infeasible-regime",
          "radius bound nonpositive: need m > 2(k+1), got k=" + std::to_string(k) +
              " m=" + std::to_string(m));
  return bound;
}

void InjectivityTrialSpec::validate() const {
  require(cone_dim >= 1 && ambient_n >= 1 && measurement_m >= 1, "invalid-argument",
          "dimensions must be positive");
  require(cone_dim <= ambient_n, "invalid-argument", "cone dim exceeds ambient dim");
  require(mu > 0 && radius > 0, "invalid-argument", "mu and radius must be positive");
  require(pair_count >= 1, "invalid-argument", "pair count must be >= 1");
  if (op == OperatorKind::haar_orthogonal || op == OperatorKind::identity) {
    require(measurement_m == ambient_n, "invalid-argument",
            "square operator requires m = n");
  }
}

double InjectivityTrialSpec::effective_tol() const {
  return collision_tol >= 0 ? collision_tol
                            : 1e-9 * std::sqrt(static_cast<double>(measurement_m)) * mu;
}

double TrialReport::min_residual() const {
  double m = std::numeric_limits<double>::infinity();
  for (double r : pair_residuals) m = std::min(m, r);
  return m;
}

namespace {

// Orthonormal basis of a random k-dim subspace (thin QR of a Gaussian draw).
Mat random_subspace_basis(int n, int k, Rng& rng) {
  Mat g(n, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ() * Mat::Identity(n, k);
}

Vec uniform_direction_in_span(const Mat& basis, Rng& rng) {
  Vec w(basis.cols());
  for (int j = 0; j < basis.cols(); ++j) w[j] = rng.normal();
  Vec d = basis * w;
  const double norm = d.norm();
  return norm > 0 ? Vec(d / norm) : Vec(basis.col(0));
}

}  // namespace

TrialReport injectivity_trial(const InjectivityTrialSpec& spec) {
  spec.validate();
  // Radii live on (0, sqrt(m) * R]: the bound is stated for unit-variance
  // operators after rescaling by sqrt(m).
  const double max_radius = std::sqrt(static_cast<double>(spec.measurement_m)) * spec.radius;
  const double tol = spec.effective_tol();
  const ClipSpec clip_spec = ClipSpec::symmetric(spec.mu);
  const Rng base(spec.seed);

  TrialReport report;
  report.pair_residuals.reserve(spec.pair_count);
  double sat_sum = 0.0;
  for (int p = 0; p < spec.pair_count; ++p) {
    Rng rng = base.split(static_cast<uint64_t>(p));

    Vec d1, d2;
    if (spec.cone == ConeKind::axis_aligned) {
      d1 = Vec::Unit(spec.ambient_n, 0);
      d2 = d1;
    } else {
      const Mat basis = random_subspace_basis(spec.ambient_n, spec.cone_dim, rng);
      d1 = uniform_direction_in_span(basis, rng);
      d2 = uniform_direction_in_span(basis, rng);
    }
    const double r1 = max_radius * (1.0 - rng.uniform());  // uniform on (0, max]
    const double r2 = max_radius * (1.0 - rng.uniform());
    const Vec x = r1 * d1;
    const Vec u = r2 * d2;

    Vec ax, au;
    switch (spec.op) {
      case OperatorKind::identity:
        ax = x;
        au = u;
        break;
      case OperatorKind::haar_orthogonal: {
        const Mat q = haar_orthogonal(spec.ambient_n, rng.bits()).matrix;
        ax = q * x;
        au = q * u;
        break;
      }
      default: {
        Mat a(spec.measurement_m, spec.ambient_n);
        for (int j = 0; j < spec.ambient_n; ++j) {
          for (int i = 0; i < spec.measurement_m; ++i) a(i, j) = rng.normal();
        }
        ax = a * x;
        au = a * u;
        break;
      }
    }
    const Vec yx = clip(ax, clip_spec);
    const Vec yu = clip(au, clip_spec);

    int sat_x = 0;
    bool common_sat = false;
    double full_resid = 0.0;
    double unsat_resid = 0.0;
    for (int j = 0; j < spec.measurement_m; ++j) {
      const bool sx = is_saturated(yx[j], clip_spec);
      const bool su = is_saturated(yu[j], clip_spec);
      if (sx) ++sat_x;
      if (sx && su && yx[j] == yu[j]) common_sat = true;
      full_resid = std::max(full_resid, std::abs(yx[j] - yu[j]));
      if (!sx && !su) unsat_resid = std::max(unsat_resid, std::abs(yx[j] - yu[j]));
    }
    sat_sum += static_cast<double>(sat_x) / spec.measurement_m;
    report.pair_residuals.push_back(unsat_resid);

    const bool distinct = (x - u).norm() > 0;
    if (distinct && full_resid <= tol && common_sat) ++report.collisions;
    ++report.pairs_tested;
  }
  report.mean_saturated_fraction = sat_sum / spec.pair_count;
  return report;
}

SaturationEstimate saturation_fraction(double x_norm, double mu, int m, int trials,
                                       uint64_t seed) {
  require(x_norm > 0 && mu > 0 && m >= 1 && trials >= 1, "invalid-argument",
          "saturation_fraction arguments must be positive");
  SaturationEstimate est;
  est.analytic = std::erfc(mu / x_norm / std::sqrt(2.0));
  Rng rng(seed);
  long saturated = 0;
  for (int t = 0; t < trials; ++t) {
    // Each row of a unit-variance A projects a norm-x signal to a
    // N(0, x_norm^2) variable.
    for (int i = 0; i < m; ++i) {
      if (std::abs(x_norm * rng.normal()) >= mu) ++saturated;
    }
  }
  est.empirical = static_cast<double>(saturated) / (static_cast<double>(m) * trials);
  return est;
}

std::vector<L1ConcentrationRow> l1_concentration(int k, int n,
                                                 const std::vector<int>& m_values,
                                                 int samples, uint64_t seed) {
  require(k >= 1 && k <= n, "invalid-argument", "need 1 <= k <= n");
  require(samples >= 1 && !m_values.empty(), "invalid-argument",
          "need samples and at least one m");
  std::vector<L1ConcentrationRow> rows;
  const Rng base(seed);
  for (size_t idx = 0; idx < m_values.size(); ++idx) {
    const int m = m_values[idx];
    require(m >= 1, "invalid-argument", "m must be positive");
    Rng rng = base.split(idx);
    const Mat a = gaussian_operator(m, n, /*scaled=*/true, rng.bits()).matrix;
    const Mat basis = random_subspace_basis(n, k, rng);
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    long violations = 0;
    double l1_sum = 0.0;
    for (int s = 0; s < samples; ++s) {
      const Vec z = uniform_direction_in_span(basis, rng);
      const double l1 = (a * z).lpNorm<1>();
      l1_sum += l1;
      if (l1 > sqrt_m) ++violations;
    }
    rows.push_back(L1ConcentrationRow{m, static_cast<double>(violations) / samples,
                                      l1_sum / samples / sqrt_m});
  }
  return rows;
}

Mat conic_extension(const Mat& measurements, const ClipSpec& spec, double dedup_tol,
                    double sat_tol) {
  spec.validate();
  require(measurements.cols() > 0, "invalid-argument", "empty measurement set");
  const bool check_lower = spec.mu1 != 0.0;

  std::vector<Vec> directions;
  for (int i = 0; i < measurements.cols(); ++i) {
    const Vec y = measurements.col(i);
    bool interior = true;
    for (int j = 0; j < y.size() && interior; ++j) {
      if (y[j] >= spec.mu2 - sat_tol) interior = false;
      if (check_lower && y[j] <= spec.mu1 + sat_tol) interior = false;
    }
    if (!interior) continue;
    const double norm = y.norm();
    if (norm == 0.0) continue;
    const Vec d = y / norm;
    bool duplicate = false;
    for (const Vec& existing : directions) {
      if ((d - existing).norm() <= dedup_tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) directions.push_back(d);
  }
  require(!directions.empty(), "unidentifiable-sample",
          "no strictly unsaturated measurement survives the filter");
  Mat out(measurements.rows(), static_cast<Eigen::Index>(directions.size()));
  for (size_t i = 0; i < directions.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = directions[i];
  return out;
}

int covering_number(const Mat& points, double eps) {
  require(points.cols() > 0, "invalid-argument", "empty point set");
  require(eps > 0, "invalid-argument", "eps must be positive");
  const int n = static_cast<int>(points.cols());
  // Farthest-point traversal; nearest[i] tracks the distance from point i
  // to the closest chosen center.
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  int next = 0;
  int centers = 0;
  while (true) {
    const Vec c = points.col(next);
    ++centers;
    double worst = 0.0;
    int worst_idx = -1;
    for (int i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], (points.col(i) - c).norm());
      if (nearest[i] > worst) {
        worst = nearest[i];
        worst_idx = i;
      }
    }
    if (worst <= eps || worst_idx < 0) break;
    next = worst_idx;
  }
  return centers;
}

double box_dim_estimate(const Mat& points, const std::vector<double>& eps_grid) {
  require(eps_grid.size() >= 2, "invalid-argument",
          "dimension estimate needs at least two eps values");
  std::vector<double> xs, ys;
  for (double eps : eps_grid) {
    xs.push_back(-std::log(eps));
    ys.push_back(std::log(static_cast<double>(covering_number(points, eps))));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  require(std::abs(denom) > 1e-12, "invalid-argument",
          "eps grid is degenerate (all values equal)");
  return (n * sxy - sx * sy) / denom;
}

double hausdorff_distance(const Mat& a, const Mat& b) {
  require(a.cols() > 0 && b.cols() > 0, "invalid-argument", "empty point set");
  auto directed = [](const Mat& from, const Mat& to) {
    double worst = 0.0;
    for (int i = 0; i < from.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < to.cols(); ++j) {
        best = std::min(best, (from.col(i) - to.col(j)).norm());
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace declip
