#pragma once

#include <functional>

#include "ptm/depth.hpp"
#include "ptm/trim.hpp"
#include "ptm/types.hpp"

namespace ptm {

// Maps a point's projection depth (in (0, 1]) to a nonnegative weight,
// nondecreasing in depth.
using DepthWeight = std::function<double(double)>;

// Default Stahel-Donoho taper: full weight at or above r0, quadratic decay
// below. r0 is typically the median of the sample depths.
DepthWeight huber_depth_weight(double r0);

// Stahel-Donoho estimate: depth-weighted mean of the data behind `ev`.
// An empty `weight` means the default taper with r0 = median sample depth.
Vec stahel_donoho(const DepthEvaluator& ev, const DepthWeight& weight = {});
Vec stahel_donoho(const PointCloud& data, const DirectionStrategy& strategy,
                  const DepthWeight& weight = {});

// Tukey halfspace depth: min over directions u of #{i : u'X_i >= u'x} / n.
// Exact for d <= 2 (angular sweep); for d >= 3 a fixed sample of directions
// gives an upper bound of the exact minimum.
Rational halfspace_depth(const Vec& x, const PointCloud& data);

struct HalfspaceMedianResult {
  Vec center;
  Rational depth;      // certificate: exact depth recomputed at `center`
  int evaluations = 0; // depth evaluations spent by the search
};

// Maximizer of the halfspace depth (d = 2): probe grid over the bounding box
// plus the data points, a few shrinking refinement passes, a short simplex
// polish, ties resolved by the centroid of the best probes (depth regions are
// convex, so the centroid keeps the level).
HalfspaceMedianResult halfspace_median(const PointCloud& data, int grid = 24,
                                       int refine = 3);

}  // namespace ptm
