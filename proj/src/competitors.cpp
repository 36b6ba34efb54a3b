#include "ptm/competitors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "ptm/rng.hpp"
#include "ptm/univariate.hpp"

namespace ptm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// #{i : u'X_i >= u'x} minimized over u in the given direction set.
long long min_count_sampled(const Vec& x, const PointCloud& data,
                            const std::vector<Vec>& dirs) {
  const int n = data.n();
  long long best = n;
  for (const Vec& u : dirs) {
    const double ux = u.dot(x);
    long long above = 0, below = 0;
    for (int i = 0; i < n; ++i) {
      const double p = u.dot(data.pts.row(i).transpose());
      if (p >= ux) ++above;
      if (p <= ux) ++below;
    }
    best = std::min({best, above, below});
    if (best == 0) break;
  }
  return best;
}

// Exact planar sweep. Directions where the count can change are exactly those
// perpendicular to some X_i - x, so the count is constant on the arcs between
// the angles psi_i +- pi/2 and weakly larger at the arc endpoints (ties count
// for the halfspace). Scanning arc midpoints therefore finds the minimum.
long long min_count_planar(const Vec& x, const PointCloud& data) {
  const int n = data.n();
  long long base = 0;  // points equal to x lie in every closed halfplane
  std::vector<double> psi;
  psi.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double dx = data.pts(i, 0) - x[0];
    const double dy = data.pts(i, 1) - x[1];
    if (dx == 0.0 && dy == 0.0) {
      ++base;
    } else {
      psi.push_back(wrap_angle(std::atan2(dy, dx)));
    }
  }
  if (psi.empty()) return base;
  std::sort(psi.begin(), psi.end());

  std::vector<double> events;
  events.reserve(2 * psi.size());
  for (const double p : psi) {
    events.push_back(wrap_angle(p + kHalfPi));
    events.push_back(wrap_angle(p - kHalfPi));
  }
  std::sort(events.begin(), events.end());

  // #psi in [a, b) on the circle; midpoints never coincide with a psi +- pi/2,
  // so the open/closed distinction cannot matter there.
  const auto arc_count = [&](double a, double b) -> long long {
    const auto la = std::lower_bound(psi.begin(), psi.end(), a);
    const auto lb = std::lower_bound(psi.begin(), psi.end(), b);
    if (a <= b) return lb - la;
    return (psi.end() - la) + (lb - psi.begin());
  };

  long long best = std::numeric_limits<long long>::max();
  const size_t m = events.size();
  for (size_t e = 0; e < m; ++e) {
    const double lo = events[e];
    const double hi = e + 1 < m ? events[e + 1] : events[0] + kTwoPi;
    if (hi - lo <= 0.0) continue;
    const double theta = wrap_angle(0.5 * (lo + hi));
    best = std::min(best,
                    arc_count(wrap_angle(theta - kHalfPi), wrap_angle(theta + kHalfPi)));
    if (best == 0) break;
  }
  return base + best;
}

long long halfspace_count(const Vec& x, const PointCloud& data) {
  const int d = data.dim();
  const int n = data.n();
  if (static_cast<int>(x.size()) != d)
    throw Error("dim_mismatch", "query point dimension does not match the data",
                {{"point_dim", static_cast<double>(x.size())},
                 {"data_dim", static_cast<double>(d)}});
  if (d == 1) {
    long long above = 0, below = 0;
    for (int i = 0; i < n; ++i) {
      if (data.pts(i, 0) >= x[0]) ++above;
      if (data.pts(i, 0) <= x[0]) ++below;
    }
    return std::min(above, below);
  }
  if (d == 2) return min_count_planar(x, data);

  // Above the plane only a sampled bound: axes plus random unit vectors.
  std::vector<Vec> dirs;
  dirs.reserve(2048 + d);
  for (int j = 0; j < d; ++j) dirs.push_back(Vec::Unit(d, j));
  CounterRng rng(0x7D, 0xD1C7ULL);
  for (int i = 0; i < 2048; ++i) {
    Vec u = rng.normal_vec(static_cast<std::uint64_t>(i) * d, d);
    const double nrm = u.norm();
    if (nrm > 0.0) dirs.push_back(u / nrm);
  }
  return min_count_sampled(x, data, dirs);
}

}  // namespace

DepthWeight huber_depth_weight(double r0) {
  if (!(r0 > 0.0))
    return [](double) { return 1.0; };
  return [r0](double r) {
    if (r >= r0) return 1.0;
    if (r <= 0.0) return 0.0;
    const double t = r / r0;
    return t * t;
  };
}

Vec stahel_donoho(const DepthEvaluator& ev, const DepthWeight& weight) {
  const PointCloud& data = ev.data();
  const int n = data.n();
  const int d = data.dim();
  if (n < d + 1)
    throw Error("too_few_points", "need at least d+1 points",
                {{"n", static_cast<double>(n)}, {"d", static_cast<double>(d)}});

  std::vector<double> depths(n);
  for (int i = 0; i < n; ++i)
    depths[i] = ev.depth(data.pts.row(i).transpose());

  DepthWeight w = weight;
  if (!w) {
    std::vector<double> tmp = depths;
    w = huber_depth_weight(med_k(tmp, 1));
  }

  Vec acc = Vec::Zero(d);
  double wsum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double wi = w(depths[i]);
    if (wi < 0.0)
      throw Error("bad_weight", "depth weight must be nonnegative",
                  {{"weight", wi}, {"depth", depths[i]}});
    acc += wi * data.pts.row(i).transpose();
    wsum += wi;
  }
  if (!(wsum > 0.0))
    throw Error("zero_weights", "all depth weights vanish; nothing to average",
                {{"n", static_cast<double>(n)}});
  return acc / wsum;
}

Vec stahel_donoho(const PointCloud& data, const DirectionStrategy& strategy,
                  const DepthWeight& weight) {
  // size check first: a too-small sample should not surface as a median
  // offset complaint from the evaluator construction
  if (data.n() < data.dim() + 1)
    throw Error("too_few_points", "need at least d+1 points",
                {{"n", static_cast<double>(data.n())},
                 {"d", static_cast<double>(data.dim())}});
  DepthEvaluator ev(data, LocationScalePair::medmad_default(data.dim()), strategy);
  return stahel_donoho(ev, weight);
}

Rational halfspace_depth(const Vec& x, const PointCloud& data) {
  return {halfspace_count(x, data), data.n()};
}

HalfspaceMedianResult halfspace_median(const PointCloud& data, int grid,
                                       int refine) {
  const int n = data.n();
  const int d = data.dim();
  if (grid < 2)
    throw Error("bad_argument", "grid must be at least 2",
                {{"grid", static_cast<double>(grid)}});
  if (d > 2)
    throw Error("unsupported_dimension",
                "halfspace median search is implemented for d <= 2",
                {{"d", static_cast<double>(d)}});

  HalfspaceMedianResult out;
  if (d == 1) {
    std::vector<double> xs(data.pts.col(0).begin(), data.pts.col(0).end());
    Vec c(1);
    c[0] = med_k(xs, 1);
    out.center = c;
    out.depth = {halfspace_count(c, data), n};
    out.evaluations = 1;
    return out;
  }

  long long best = -1;
  std::vector<Vec> ties;
  const auto consider = [&](const Vec& p) {
    const long long c = halfspace_count(p, data);
    ++out.evaluations;
    if (c > best) {
      best = c;
      ties.assign(1, p);
    } else if (c == best) {
      ties.push_back(p);
    }
    return c;
  };
  const auto tie_centroid = [&]() {
    Vec c = Vec::Zero(2);
    for (const Vec& t : ties) c += t;
    return Vec(c / static_cast<double>(ties.size()));
  };

  const Vec lo = data.pts.colwise().minCoeff().transpose();
  const Vec hi = data.pts.colwise().maxCoeff().transpose();
  const Vec span = hi - lo;

  const auto lattice = [&](const Vec& center, const Vec& half, int m) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Vec p(2);
        p[0] = center[0] + half[0] * (2.0 * i / (m - 1) - 1.0);
        p[1] = center[1] + half[1] * (2.0 * j / (m - 1) - 1.0);
        consider(p);
      }
    }
  };

  // Pass 1: bounding-box lattice, the data points, mean and coordinate median.
  lattice(0.5 * (lo + hi), 0.5 * span, grid);
  for (int i = 0; i < n; ++i) consider(data.pts.row(i).transpose());
  consider(data.pts.colwise().mean().transpose());
  {
    std::vector<double> c0(data.pts.col(0).begin(), data.pts.col(0).end());
    std::vector<double> c1(data.pts.col(1).begin(), data.pts.col(1).end());
    Vec cm(2);
    cm << med_k(c0, 1), med_k(c1, 1);
    consider(cm);
  }

  // Shrinking lattices around the running tie centroid.
  Vec half = 0.5 * span;
  for (int lvl = 1; lvl <= refine; ++lvl) {
    half *= 0.4;
    lattice(tie_centroid(), half, std::max(5, grid / 2));
  }

  // Short simplex polish; only a strictly deeper point displaces the ties, so
  // symmetric tie sets stay symmetric when the polish finds nothing.
  {
    Vec c = tie_centroid();
    const double step = std::max({half[0], half[1], 1e-12});
    std::array<Vec, 3> s = {c, c + step * Vec::Unit(2, 0), c + step * Vec::Unit(2, 1)};
    std::array<long long, 3> f;
    const auto probe = [&](const Vec& p) {
      const long long v = halfspace_count(p, data);
      ++out.evaluations;
      if (v > best) {
        best = v;
        ties.assign(1, p);
      }
      return v;
    };
    for (int i = 0; i < 3; ++i) f[i] = probe(s[i]);
    for (int it = 0; it < 60; ++it) {
      std::array<int, 3> ord = {0, 1, 2};
      std::sort(ord.begin(), ord.end(), [&](int a, int b) { return f[a] > f[b]; });
      const int hiI = ord[2];
      const Vec mid = 0.5 * (s[ord[0]] + s[ord[1]]);
      if ((s[ord[0]] - s[hiI]).norm() < 1e-9) break;
      const Vec refl = mid + (mid - s[hiI]);
      const long long fr = probe(refl);
      if (fr > f[hiI]) {
        s[hiI] = refl;
        f[hiI] = fr;
      } else {
        const Vec contr = 0.5 * (mid + s[hiI]);
        const long long fc = probe(contr);
        if (fc > f[hiI]) {
          s[hiI] = contr;
          f[hiI] = fc;
        } else {
          for (int i = 1; i < 3; ++i) {
            s[ord[i]] = 0.5 * (s[ord[0]] + s[ord[i]]);
            f[ord[i]] = probe(s[ord[i]]);
          }
        }
      }
    }
  }

  // The depth region at the best level is convex, so the tie centroid holds
  // the level; verify and keep the certificate honest.
  Vec center = tie_centroid();
  long long cert = halfspace_count(center, data);
  ++out.evaluations;
  if (cert < best) {
    center = ties.front();
    cert = best;
  }
  out.center = center;
  out.depth = {cert, n};
  return out;
}

}  // namespace ptm
