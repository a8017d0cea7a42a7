#pragma once

#include <cstdint>
#include <vector>

#include "declip/common.hpp"
#include "declip/forward_ops.hpp"
#include "declip/rng.hpp"

namespace declip {

// Scale-invariant rank-1 set {e_i * x0} with exponential amplitudes.
struct ConeSpec {
  Vec base;                     // x0, nonzero
  double amplitude_mean = 2.0;  // mean of the exponential amplitude law
  int count = 1;
  uint64_t seed = 0;
};

struct ConeData {
  Mat signals;  // n x count, column i = amplitudes[i] * base
  std::vector<double> amplitudes;
};

ConeData gen_cone(const ConeSpec& spec);

// Signals drawn from a random k-dimensional subspace of R^n, each rescaled
// so that exactly ceil(v * n) entries sit at or above the clip threshold.
struct SubspaceSpec {
  int ambient_dim = 100;      // n
  int subspace_dim = 1;       // k
  double clip_fraction = 0.1; // v in (0, 1)
  double threshold = 1.0;     // mu
  int count = 1;              // N
  uint64_t seed = 0;
};

struct SubspaceData {
  Mat basis;    // n x k, standard normal entries
  Mat signals;  // n x count
};

int clipped_entry_count(const SubspaceSpec& spec);  // ceil(v * n)
SubspaceData gen_subspace_dataset(const SubspaceSpec& spec);

enum class OperatorKind { gaussian_unit, gaussian_scaled, haar_orthogonal, identity };

struct RandomOperator {
  Mat matrix;
  OperatorKind kind = OperatorKind::gaussian_unit;
  uint64_t seed = 0;
};

// i.i.d. normal entries, variance 1 (unit) or 1/m (scaled).
RandomOperator gaussian_operator(int m, int n, bool scaled, uint64_t seed);

// Haar-distributed orthogonal matrix: QR of a unit Gaussian matrix with the
// R_ii > 0 sign convention.
RandomOperator haar_orthogonal(int n, uint64_t seed);

RandomOperator identity_operator(int n);

struct SplitIndices {
  std::vector<int> train;
  std::vector<int> test;
};

// Disjoint deterministic shuffle-split over item indices.
SplitIndices split_indices(int count, double train_fraction, uint64_t seed);

Mat select_columns(const Mat& data, const std::vector<int>& idx);

// Bundled 28x28 nonnegative base image for cone experiments; removes any
// external download dependency.
Signal test_fixture_28x28();

}  // namespace declip
