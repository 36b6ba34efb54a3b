#pragma once

#include <cstdint>
#include <vector>

#include "ptm/depth.hpp"
#include "ptm/types.hpp"

namespace ptm {

struct CenterEstimate {
  Vec center;
  double outlyingness = 0.0;
  double depth = 1.0;
  int evaluations = 0;
  bool converged = true;  // all starts agreed within tolerance
};

// Deepest point: multistart simplex minimization of the outlyingness,
// starting from the coordinatewise median, the mean, and the deepest data
// point. The returned center is the best probe ever evaluated.
CenterEstimate projection_median(const DepthEvaluator& ev);
CenterEstimate projection_median(const PointCloud& data,
                                 const LocationScalePair& pair,
                                 const DirectionStrategy& strategy);

// Depth attained at the computed deepest point.
double max_depth(const DepthEvaluator& ev);

// Largest r >= 0 with depth(center + r u) >= alpha; geometric bracket growth
// from the data scale, then bisection to 1e-9 relative width.
double directional_radius(const DepthEvaluator& ev, const Vec& center,
                          const Vec& u, double alpha);

struct RadiusProfile {
  double alpha = 0.0;
  Vec center;
  std::vector<Vec> directions;
  std::vector<double> radii;
};

// Radii in n_dirs directions: equally spaced angles for d = 2, {+1,-1} for
// d = 1, seeded random sphere directions above.
RadiusProfile radius_profile(const DepthEvaluator& ev, const Vec& center,
                             double alpha, int n_dirs, std::uint64_t seed = 0);
RadiusProfile radius_profile(const PointCloud& data,
                             const LocationScalePair& pair,
                             const DirectionStrategy& strategy, double alpha,
                             int n_dirs, std::uint64_t seed = 0);

}  // namespace ptm
