#pragma once

#include <cstdint>
#include <string>

#include "ptm/depth.hpp"
#include "ptm/types.hpp"

namespace ptm {

// Weight applied to the depth of each kept point.
struct WeightSpec {
  enum class Kind { ConstantOne, Power };
  Kind kind = Kind::ConstantOne;
  double p = 1.0;

  static WeightSpec constant_one() { return {Kind::ConstantOne, 1.0}; }
  static WeightSpec power(double p) { return {Kind::Power, p}; }
  double operator()(double s) const;
  // Derivative in s, used by the influence-function machinery.
  double derivative(double s) const;
};

struct TrimSpec {
  double alpha = 0.1;
  WeightSpec weight = WeightSpec::constant_one();

  double beta() const { return (1.0 - alpha) / alpha; }
};

struct PtmResult {
  Vec estimate;
  int kept = 0;             // points with depth >= alpha
  double weight_sum = 0.0;
  double max_point_depth = 0.0;  // largest depth among the data points
  std::string method;
};

// Depth-weighted trimmed mean: points with depth >= alpha, weighted by
// weight(depth). Errors with the attained maximum point depth if nothing
// survives the trim.
PtmResult ptm(const DepthEvaluator& ev, const TrimSpec& spec);
PtmResult ptm(const PointCloud& data, const TrimSpec& spec,
              const LocationScalePair& pair, const DirectionStrategy& strategy);

struct AlphaDReport {
  double alpha_d = 0.0;  // trimming levels at or below this keep every
                         // original point inside the region under the
                         // guaranteed contamination budget
  double ratio = 0.0;    // maximized range-to-spread ratio, (1-a)/a
  bool exact = false;    // true when the maximization is a refined 2-D sweep
};

// Sample threshold from the worst-direction ratio of projected range to the
// tightest (d+1)-window half-width. Exact (grid + local refinement) for
// d <= 2; a seeded direction sample above, reported as a bound.
AlphaDReport alpha_d(const PointCloud& data, int grid = 4096,
                     std::uint64_t seed = 0);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Finite-sample replacement breakdown point of the trimmed mean with the
// offset-k scale.
Rational breakdown_point(int n, int d, int k);

// Replace m points (seeded choice) with one site at the given distance along
// a seeded direction, recompute the trimmed mean, return its norm
// (+infinity if the trim empties out).
double breakdown_probe(const PointCloud& data, const TrimSpec& spec,
                       const LocationScalePair& pair,
                       const DirectionStrategy& strategy, int m_replace,
                       double magnitude, std::uint64_t seed);

}  // namespace ptm
