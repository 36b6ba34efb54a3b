#include "ptm/trim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ptm/rng.hpp"

namespace ptm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double WeightSpec::operator()(double s) const {
  if (kind == Kind::ConstantOne) return 1.0;
  return std::pow(s, p);
}

double WeightSpec::derivative(double s) const {
  if (kind == Kind::ConstantOne) return 0.0;
  return p * std::pow(s, p - 1.0);
}

PtmResult ptm(const DepthEvaluator& ev, const TrimSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw Error("bad_alpha", "alpha must lie in (0,1)");
  if (spec.weight.kind == WeightSpec::Kind::Power && spec.weight.p < 0.0)
    throw Error("bad_weight", "power weight exponent must be >= 0");
  const PointCloud& data = ev.data();
  const int n = data.n();
  const int d = data.dim();
  PtmResult out;
  out.method = ev.method();
  Vec acc = Vec::Zero(d);
  double wsum = 0.0;
  double maxdep = 0.0;
  int kept = 0;
  for (int i = 0; i < n; ++i) {
    const Vec xi = data.row(i);
    const double dep = ev.depth(xi);
    maxdep = std::max(maxdep, dep);
    if (dep >= spec.alpha) {
      const double w = spec.weight(dep);
      acc += w * xi;
      wsum += w;
      ++kept;
    }
  }
  out.max_point_depth = maxdep;
  if (kept == 0 || wsum <= 0.0)
    throw Error("empty_trimmed_set",
                "no data point reaches the trimming depth; lower alpha "
                "(the alpha-d threshold of this dataset is a safe choice)",
                {{"alpha", std::to_string(spec.alpha)},
                 {"max_point_depth", std::to_string(maxdep)}});
  out.estimate = acc / wsum;
  out.kept = kept;
  out.weight_sum = wsum;
  return out;
}

PtmResult ptm(const PointCloud& data, const TrimSpec& spec,
              const LocationScalePair& pair, const DirectionStrategy& strategy) {
  DepthEvaluator ev(data, pair, strategy);
  return ptm(ev, spec);
}

namespace {

// Worst-direction ratio for one projection: full range over half the
// tightest window spanning d+1 consecutive order statistics.
double ratio_for_projection(std::vector<double>& proj, int d) {
  std::sort(proj.begin(), proj.end());
  const int n = static_cast<int>(proj.size());
  const double range = proj[n - 1] - proj[0];
  double minw = kInf;
  for (int j = 0; j + d < n; ++j) minw = std::min(minw, proj[j + d] - proj[j]);
  if (minw <= 0.0) return kInf;
  return range / (0.5 * minw);
}

}  // namespace

AlphaDReport alpha_d(const PointCloud& data, int grid, std::uint64_t seed) {
  const int n = data.n();
  const int d = data.dim();
  if (n < d + 1)
    throw Error("too_few_points", "need at least d+1 points",
                {{"n", std::to_string(n)}, {"d", std::to_string(d)}});
  AlphaDReport rep;
  std::vector<double> proj(n);
  if (d == 1) {
    for (int i = 0; i < n; ++i) proj[i] = data.pts(i, 0);
    rep.ratio = ratio_for_projection(proj, d);
    rep.exact = true;
  } else if (d == 2) {
    if (grid < 16) throw Error("bad_argument", "grid too coarse");
    const auto ratio_at = [&](double th) {
      const double c = std::cos(th), s = std::sin(th);
      for (int i = 0; i < n; ++i) proj[i] = c * data.pts(i, 0) + s * data.pts(i, 1);
      return ratio_for_projection(proj, d);
    };
    std::vector<double> vals(grid);
    for (int j = 0; j < grid; ++j) vals[j] = ratio_at(kPi * j / grid);
    // Golden-section polish around the best handful of grid angles.
    std::vector<int> idx(grid);
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + std::min(8, grid), idx.end(),
                      [&](int a, int b) { return vals[a] > vals[b]; });
    double best = -kInf;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    const double h = kPi / grid;
    for (int t = 0; t < std::min(8, grid); ++t) {
      const double center = kPi * idx[t] / grid;
      best = std::max(best, vals[idx[t]]);
      double a = center - h, b = center + h;
      double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
      double f1 = ratio_at(c1), f2 = ratio_at(c2);
      for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
          a = c1; c1 = c2; f1 = f2;
          c2 = a + gr * (b - a); f2 = ratio_at(c2);
        } else {
          b = c2; c2 = c1; f2 = f1;
          c1 = b - gr * (b - a); f1 = ratio_at(c1);
        }
        if (std::isinf(f1) || std::isinf(f2)) break;
      }
      best = std::max({best, f1, f2});
    }
    rep.ratio = best;
    rep.exact = true;
  } else {
    const auto dirs = direction_set(
        DirectionStrategy::random_sphere(std::max(grid, 1024), seed), data);
    double best = -kInf;
    for (const Vec& u : dirs) {
      Eigen::Map<Eigen::VectorXd>(proj.data(), n) = data.pts * u;
      best = std::max(best, ratio_for_projection(proj, d));
    }
    rep.ratio = best;
    rep.exact = false;  // sampled: a lower bound on the true ratio
  }
  rep.alpha_d = std::isinf(rep.ratio) ? 0.0 : 1.0 / (1.0 + rep.ratio);
  return rep;
}

Rational breakdown_point(int n, int d, int k) {
  if (n < 1 || d < 1) throw Error("bad_argument", "need n >= 1 and d >= 1");
  if (k < 1 || k > n)
    throw Error("bad_k", "offset k must satisfy 1 <= k <= n");
  long long m;
  if (d == 1) {
    m = (n - k + 2) / 2;
  } else {
    m = std::min(static_cast<long long>((n + k + 1 - 2 * d) / 2),
                 static_cast<long long>((n - k + 2) / 2));
  }
  m = std::max(m, 0LL);
  return Rational{m, n};
}

double breakdown_probe(const PointCloud& data, const TrimSpec& spec,
                       const LocationScalePair& pair,
                       const DirectionStrategy& strategy, int m_replace,
                       double magnitude, std::uint64_t seed) {
  const int n = data.n();
  const int d = data.dim();
  if (m_replace < 0 || m_replace > n)
    throw Error("bad_argument", "replacement count out of range");
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude))
    throw Error("bad_argument", "magnitude must be finite and nonnegative");

  CounterRng rng(seed, 0xB0DEULL);
  // Seeded choice of which rows get replaced.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int t = 0; t < m_replace; ++t) {
    const std::uint64_t span = static_cast<std::uint64_t>(n - t);
    std::swap(idx[t], idx[t + static_cast<int>(rng.bits(t) % span)]);
  }
  Vec dir = rng.normal_vec(1000, d);
  const double nrm = dir.norm();
  dir = (nrm > 1e-12) ? Vec(dir / nrm) : Vec(Vec::Unit(d, 0));

  Mat contaminated = data.pts;
  for (int t = 0; t < m_replace; ++t)
    contaminated.row(idx[t]) = (magnitude * dir).transpose();
  try {
    const PtmResult r = ptm(PointCloud(std::move(contaminated)), spec, pair, strategy);
    return r.estimate.norm();
  } catch (const Error& e) {
    if (e.code() == "empty_trimmed_set") return kInf;
    throw;
  }
}

}  // namespace ptm
