#include "ptm/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ptm/univariate.hpp"

namespace ptm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double data_scale(const PointCloud& data) {
  const Vec mean = data.pts.colwise().mean().transpose();
  const Mat centered = data.pts.rowwise() - mean.transpose();
  const double tr = centered.squaredNorm() / static_cast<double>(data.n());
  return std::sqrt(tr / data.dim());
}

struct NmResult {
  Vec best;
  double fbest;
  int evals;
};

// Simplex descent with reflection 1, expansion 2, contraction 0.5, shrink
// 0.5, capped at 500 iterations. Tracks the best probe ever seen.
NmResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                     double step) {
  const int d = static_cast<int>(x0.size());
  std::vector<Vec> xs(d + 1, x0);
  std::vector<double> fs(d + 1);
  for (int i = 1; i <= d; ++i) xs[i][i - 1] += step;
  int evals = 0;
  for (int i = 0; i <= d; ++i) {
    fs[i] = f(xs[i]);
    ++evals;
  }
  Vec best = xs[0];
  double fbest = fs[0];
  const auto note = [&](const Vec& x, double fx) {
    if (fx < fbest) {
      fbest = fx;
      best = x;
    }
  };
  for (int i = 0; i <= d; ++i) note(xs[i], fs[i]);

  std::vector<int> idx(d + 1);
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int lo = idx[0], hi = idx[d], second = idx[d - 1];

    double diam = 0.0;
    for (int i = 1; i <= d; ++i) diam = std::max(diam, (xs[idx[i]] - xs[lo]).norm());
    const double fspread = std::isfinite(fs[hi]) ? fs[hi] - fs[lo] : kInf;
    if (diam < 1e-10 * (1.0 + xs[lo].norm()) &&
        fspread < 1e-12 * (1.0 + std::fabs(fs[lo])))
      break;

    Vec centroid = Vec::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != hi) centroid += xs[i];
    centroid /= static_cast<double>(d);

    const Vec xr = centroid + (centroid - xs[hi]);
    const double fr = f(xr);
    ++evals;
    note(xr, fr);
    if (fr < fs[lo]) {
      const Vec xe = centroid + 2.0 * (centroid - xs[hi]);
      const double fe = f(xe);
      ++evals;
      note(xe, fe);
      if (fe < fr) {
        xs[hi] = xe;
        fs[hi] = fe;
      } else {
        xs[hi] = xr;
        fs[hi] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      xs[hi] = xr;
      fs[hi] = fr;
      continue;
    }
    const bool outside = fr < fs[hi];
    const Vec xc = outside ? centroid + 0.5 * (xr - centroid)
                           : centroid + 0.5 * (xs[hi] - centroid);
    const double fc = f(xc);
    ++evals;
    note(xc, fc);
    if (fc < std::min(fr, fs[hi])) {
      xs[hi] = xc;
      fs[hi] = fc;
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      if (i == lo) continue;
      xs[i] = xs[lo] + 0.5 * (xs[i] - xs[lo]);
      fs[i] = f(xs[i]);
      ++evals;
      note(xs[i], fs[i]);
    }
  }
  return {best, fbest, evals};
}

}  // namespace

CenterEstimate projection_median(const DepthEvaluator& ev) {
  const PointCloud& data = ev.data();
  const int n = data.n();
  const int d = data.dim();
  const auto obj = [&](const Vec& x) { return ev.outlyingness(x); };

  // Starts: coordinatewise median, mean, deepest data point.
  Vec start_med(d);
  {
    std::vector<double> col(n);
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < n; ++i) col[i] = data.pts(i, j);
      start_med[j] = detail::med1_inplace(col);
    }
  }
  const Vec start_mean = data.pts.colwise().mean().transpose();
  int best_row = 0;
  double best_o = kInf;
  for (int i = 0; i < n; ++i) {
    const double o = ev.outlyingness(data.row(i));
    if (o < best_o) {
      best_o = o;
      best_row = i;
    }
  }
  const Vec start_deep = data.row(best_row);

  const double step = std::max(0.25 * data_scale(data), 1e-8);
  CenterEstimate out;
  double fbest = kInf;
  int evals = n;
  std::vector<double> finals;
  for (const Vec& s : {start_med, start_mean, start_deep}) {
    const NmResult r = nelder_mead(obj, s, step);
    evals += r.evals;
    finals.push_back(r.fbest);
    if (r.fbest < fbest) {
      fbest = r.fbest;
      out.center = r.best;
    }
  }
  out.outlyingness = fbest;
  out.depth = std::isinf(fbest) ? 0.0 : 1.0 / (1.0 + fbest);
  out.evaluations = evals;
  out.converged = true;
  for (double fv : finals)
    if (!(fv <= fbest + 1e-8 * (1.0 + std::fabs(fbest)))) out.converged = false;
  return out;
}

CenterEstimate projection_median(const PointCloud& data,
                                 const LocationScalePair& pair,
                                 const DirectionStrategy& strategy) {
  DepthEvaluator ev(data, pair, strategy);
  return projection_median(ev);
}

double max_depth(const DepthEvaluator& ev) { return projection_median(ev).depth; }

double directional_radius(const DepthEvaluator& ev, const Vec& center,
                          const Vec& u, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("bad_alpha", "alpha must lie in (0,1)");
  if (std::fabs(u.norm() - 1.0) > 1e-12)
    throw Error("bad_direction", "direction must have unit norm (within 1e-12)");
  const double center_depth = ev.depth(center);
  if (center_depth < alpha)
    throw Error("empty_region", "depth at the center is below alpha",
                {{"alpha", std::to_string(alpha)},
                 {"center_depth", std::to_string(center_depth)}});

  double hi = std::max(data_scale(ev.data()), 1e-6);
  double lo = 0.0;
  int grow = 0;
  while (ev.depth(center + hi * u) >= alpha) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 300)
      throw Error("unbounded_region", "region appears unbounded along this direction");
  }
  while (hi - lo > 1e-9 * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    if (ev.depth(center + mid * u) >= alpha)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

RadiusProfile radius_profile(const DepthEvaluator& ev, const Vec& center,
                             double alpha, int n_dirs, std::uint64_t seed) {
  if (n_dirs < 1) throw Error("bad_argument", "need at least one direction");
  const int d = ev.dim();
  RadiusProfile prof;
  prof.alpha = alpha;
  prof.center = center;
  if (d == 1) {
    Vec plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    prof.directions = {plus, minus};
  } else if (d == 2) {
    prof.directions.reserve(n_dirs);
    for (int j = 0; j < n_dirs; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_dirs;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      prof.directions.push_back(std::move(u));
    }
  } else {
    prof.directions = direction_set(DirectionStrategy::random_sphere(n_dirs, seed),
                                    ev.data());
  }
  prof.radii.reserve(prof.directions.size());
  for (const Vec& u : prof.directions)
    prof.radii.push_back(directional_radius(ev, center, u, alpha));
  return prof;
}

RadiusProfile radius_profile(const PointCloud& data,
                             const LocationScalePair& pair,
                             const DirectionStrategy& strategy, double alpha,
                             int n_dirs, std::uint64_t seed) {
  DepthEvaluator ev(data, pair, strategy);
  const CenterEstimate c = projection_median(ev);
  return radius_profile(ev, c.center, alpha, n_dirs, seed);
}

}  // namespace ptm
