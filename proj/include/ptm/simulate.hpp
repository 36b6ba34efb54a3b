#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptm/depth.hpp"
#include "ptm/trim.hpp"
#include "ptm/types.hpp"
#include "ptm/univariate.hpp"

namespace ptm {

struct MixtureComponent {
  double weight = 1.0;
  Vec mean;
  Mat cov;  // full SPD covariance
};

// Mixture model with fixed-count component assignment: component j >= 1 gets
// exactly floor(weight_j * n) points, the first component the remainder, in
// contiguous blocks. Draws are indexed per point, so a sample is a pure
// function of (model, n, seed).
struct ModelSpec {
  int d = 2;
  std::vector<MixtureComponent> components;

  static ModelSpec standard_normal(int d);
  // (1-eps) N_d(0, I) + eps N_d((mu,...,mu), sd^2 I)
  static ModelSpec contaminated(double eps, double mu = 10.0, double sd = 5.0,
                                int d = 2);
  void validate() const;
};

PointCloud sample(const ModelSpec& model, int n, std::uint64_t seed);

// Mean squared distance to theta, pairwise-summed so the total is independent
// of accumulation order.
double emse(const std::vector<Vec>& estimates, const Vec& theta);

enum class EstimatorKind { Mean, Ptm, StahelDonoho, ProjectionMedian, HalfspaceMedian };

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Mean;
  // Ptm settings; alpha_auto resolves per sample to min(0.1, 0.9 * alpha_d).
  double alpha = 0.1;
  bool alpha_auto = false;
  WeightSpec weight = WeightSpec::constant_one();

  std::string label() const;
};

struct EstimatorRow {
  std::string label;
  double emse = 0.0;
  double re = 1.0;    // EMSE(mean) / EMSE(this)
  int failures = 0;   // replicates excluded from the average
  bool flagged = false;  // more than 1% of replicates failed
};

struct StudyRow {
  int n = 0;
  int m = 0;
  std::string depth_method;  // direction strategy used at this n
  std::vector<EstimatorRow> estimators;
};

struct StudyConfig {
  ModelSpec model;
  std::vector<int> n_list;
  int m = 1000;
  std::vector<EstimatorConfig> estimators;
  std::uint64_t seed = 2026;
  int threads = 0;  // 0 = hardware concurrency
};

struct EmseReport {
  StudyConfig config;
  Vec theta;  // known location target
  std::vector<StudyRow> rows;
};

// The efficiency protocol: for each n, m replicate samples, every estimator
// evaluated on the identical samples, EMSE and RE vs the mean per estimator.
// Replicates run in parallel; results land in per-replicate slots, so reruns
// are bit-identical whatever the thread count. Estimator failures are
// excluded and counted per row.
EmseReport run_study(const StudyConfig& config);

struct RadiusConsistencyRow {
  int n = 0;
  int reps = 0;
  int invalid = 0;          // reps whose sample could not support the level
  double median_sup_err = 0.0;  // median over reps of sup_u |R_n(u) - R(u)|
  bool valid = true;            // false when any rep was invalid
};

// Convergence of the sample directional radius to its N_2(0,I) limit
// Phi^{-1}(3/4) at level 1/2: per n, the sup over a fan of angles of the
// radius error, median across replicates.
std::vector<RadiusConsistencyRow> radius_consistency_study(
    double alpha, const std::vector<int>& n_list, int reps, std::uint64_t seed,
    int angles = 4096);

struct NormalityStudy {
  double alpha = 0.1;
  int n = 0;
  int m = 0;
  int failures = 0;
  Mat estimates;  // m x d, failed replicates NaN
  Vec mean;       // per-coordinate mean of the estimates
  Vec variance;   // per-coordinate variance of sqrt(n) * estimate
  Vec skewness;
  Vec kurtosis;   // excess kurtosis
};

// Sampling-distribution shape check of the trimmed mean under N_2(0,I) with
// the plain indicator weight.
NormalityStudy normality_study(double alpha, int n, int m, std::uint64_t seed);

}  // namespace ptm
