#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ptm/types.hpp"

namespace ptm {

// Offset median: the average of the floor((n+k)/2)-th and floor((n+k+1)/2)-th
// order statistics (1-based). k=1 is the ordinary median; larger k shifts the
// pick upward, which is what gives the multivariate scale its breakdown
// behavior. Requires 1 <= k <= n.
double med_k(std::span<const double> xs, int k = 1);

// Scale companion of med_k: med_k of absolute deviations from the ordinary
// median (the location step always uses k=1; only the scale step is offset).
double mad_k(std::span<const double> xs, int k = 1);

// Mean and the divisor-n standard deviation.
std::pair<double, double> mean_sd(std::span<const double> xs);

enum class PairKind { MedMad, MeanSd };

// A univariate (location, scale) functional choice plus its k offset.
struct LocationScalePair {
  PairKind kind = PairKind::MedMad;
  int k = 1;

  static LocationScalePair medmad(int k) { return {PairKind::MedMad, k}; }
  static LocationScalePair meansd() { return {PairKind::MeanSd, 1}; }
  // Library default: k=1 in one dimension, k=d+1 above.
  static LocationScalePair medmad_default(int d) {
    return {PairKind::MedMad, d <= 1 ? 1 : d + 1};
  }
};

// Evaluate the chosen pair on a sample.
std::pair<double, double> evaluate_pair(std::span<const double> xs,
                                        const LocationScalePair& pair);

namespace detail {

// In-place selection variants used by the hot loops; they permute `buf`.
double med1_inplace(std::span<double> buf);
double med_k_inplace(std::span<double> buf, int k);
// Computes med_k of |buf[i] - center| using `scratch` (same length) as workspace.
double mad_k_about(std::span<const double> buf, double center, int k,
                   std::span<double> scratch);

}  // namespace detail

}  // namespace ptm
