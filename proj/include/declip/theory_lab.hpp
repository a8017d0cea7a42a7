#pragma once

#include <cstdint>
#include <vector>

#include "declip/common.hpp"
#include "declip/datasets.hpp"
#include "declip/forward_ops.hpp"

namespace declip {

// Largest signal norm for which unique recovery is guaranteed with high
// probability: mu * (1/2 - (k+1)/m). Requires m > 2(k+1).
double radius_bound(int k, int m, double mu);

enum class ConeKind { random_subspace, axis_aligned };

struct InjectivityTrialSpec {
  int cone_dim = 2;       // k
  int ambient_n = 50;     // n
  int measurement_m = 50; // m
  double mu = 1.0;
  double radius = 0.25;   // R; sampled norms are uniform on (0, sqrt(m)*R]
  int pair_count = 10000;
  uint64_t seed = 0;
  double collision_tol = -1.0;  // < 0 selects the default 1e-9 * sqrt(m) * mu
  OperatorKind op = OperatorKind::gaussian_unit;
  ConeKind cone = ConeKind::random_subspace;

  void validate() const;
  double effective_tol() const;
};

struct TrialReport {
  int pairs_tested = 0;
  int collisions = 0;
  double mean_saturated_fraction = 0.0;
  std::vector<double> pair_residuals;  // residual on the common unsaturated set

  double collision_rate() const {
    return pairs_tested ? static_cast<double>(collisions) / pairs_tested : 0.0;
  }
  double min_residual() const;
};

// Draws signal pairs from a random cone, pushes them through clip(A .), and
// counts measurement collisions. A pair collides when the clipped images
// agree within tolerance and the two images share at least one saturated
// coordinate on the same side.
TrialReport injectivity_trial(const InjectivityTrialSpec& spec);

struct SaturationEstimate {
  double empirical = 0.0;
  double analytic = 0.0;  // P(|g| * x_norm >= mu) for standard normal g
};

// Fraction of saturated projections of a fixed-norm signal under a
// unit-variance Gaussian operator, empirical vs closed form.
SaturationEstimate saturation_fraction(double x_norm, double mu, int m, int trials,
                                       uint64_t seed);

struct L1ConcentrationRow {
  int m = 0;
  double violation_rate = 0.0;       // fraction with ||Az||_1 > sqrt(m)
  double mean_l1_over_sqrt_m = 0.0;  // expected ~ sqrt(2/pi) ~ 0.798
};

// Checks ||Az||_1 <= sqrt(m) ||z||_2 for unit-norm samples from a random
// k-dimensional subspace, with A entries of variance 1/m.
std::vector<L1ConcentrationRow> l1_concentration(int k, int n,
                                                 const std::vector<int>& m_values,
                                                 int samples, uint64_t seed);

// Estimated normalized signal set: keeps measurements that are strictly
// unsaturated in every coordinate, normalizes them, and deduplicates within
// tolerance. The lower threshold only disqualifies entries when mu1 != 0;
// at mu1 = 0 a zero entry is an exact observation of a nonnegative signal.
// Throws "unidentifiable-sample" when nothing survives the filter.
Mat conic_extension(const Mat& measurements, const ClipSpec& spec,
                    double dedup_tol = 1e-6, double sat_tol = 0.0);

// Greedy farthest-point upper bound on the covering number N(eps).
int covering_number(const Mat& points, double eps);

// Least-squares slope of log N(eps) against log(1/eps) over the grid.
double box_dim_estimate(const Mat& points, const std::vector<double>& eps_grid);

// Symmetric Hausdorff distance between two column sets.
double hausdorff_distance(const Mat& a, const Mat& b);

}  // namespace declip
