#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ptm/depth.hpp"
#include "ptm/rng.hpp"
#include "ptm/univariate.hpp"

using namespace ptm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointCloud random_cloud(int n, int d, std::uint64_t seed, double spread = 1.0) {
  const CounterRng rng(seed, 99);
  Mat pts(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j)
      pts(i, j) = spread * rng.normal(static_cast<std::uint64_t>(i) * d + j);
  return PointCloud{pts};
}

// Reference sup over a dense angle fan, reimplementing the definition
// directly from the univariate pieces.
double grid_sup(const Vec& x, const PointCloud& data,
                const LocationScalePair& pair, int angles) {
  const int n = data.n();
  std::vector<double> proj(n);
  double best = 0.0;
  for (int a = 0; a < angles; ++a) {
    const double th = std::numbers::pi * a / angles;
    const double c = std::cos(th), s = std::sin(th);
    for (int i = 0; i < n; ++i)
      proj[i] = c * data.pts(i, 0) + s * data.pts(i, 1);
    const auto [mu, sig] = evaluate_pair(proj, pair);
    const double num = std::abs(c * x[0] + s * x[1] - mu);
    double val;
    if (sig > 0.0)
      val = num / sig;
    else
      val = num == 0.0 ? 0.0 : kInf;
    best = std::max(best, val);
  }
  return best;
}

}  // namespace

TEST_CASE("one-dimensional outlyingness has a closed form") {
  Mat pts(5, 1);
  pts << 0, 1, 2, 3, 10;
  const PointCloud data{pts};
  const LocationScalePair pair = LocationScalePair::medmad_default(1);
  const DepthEvaluator ev(data, pair, DirectionStrategy::auto_for(5, 1, pair));
  // median 2, deviations {2,1,0,1,8} -> MAD 1
  CHECK(ev.outlyingness(Vec::Constant(1, 2.0)) == doctest::Approx(0.0));
  CHECK(ev.depth(Vec::Constant(1, 2.0)) == doctest::Approx(1.0));
  CHECK(ev.outlyingness(Vec::Constant(1, 10.0)) == doctest::Approx(8.0));
  CHECK(ev.depth(Vec::Constant(1, 10.0)) == doctest::Approx(1.0 / 9.0));
  CHECK(ev.outlyingness(Vec::Constant(1, -3.0)) == doctest::Approx(5.0));
}

TEST_CASE("zero-over-zero counts as no deviation, nonzero over zero diverges") {
  Mat pts(5, 1);
  pts << 1, 1, 1, 2, 3;
  const PointCloud data{pts};
  const LocationScalePair pair = LocationScalePair::medmad(1);
  const DepthEvaluator ev(data, pair, DirectionStrategy::auto_for(5, 1, pair));
  // median 1, deviations {0,0,0,1,2} -> MAD 0
  CHECK(ev.outlyingness(Vec::Constant(1, 1.0)) == 0.0);
  CHECK(ev.depth(Vec::Constant(1, 1.0)) == doctest::Approx(1.0));
  CHECK(std::isinf(ev.outlyingness(Vec::Constant(1, 2.0))));
  CHECK(ev.depth(Vec::Constant(1, 2.0)) == 0.0);
}

TEST_CASE("planar sweep dominates every dense angle grid") {
  int cases = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 5 + static_cast<int>((seed * 7) % 26);
    const PointCloud data = random_cloud(n, 2, seed);
    const LocationScalePair pair = LocationScalePair::medmad_default(2);
    const CounterRng qr(seed, 7);
    for (int q = 0; q < 3; ++q) {
      Vec x(2);
      x << 3.0 * qr.normal(2 * q), 3.0 * qr.normal(2 * q + 1);
      const DepthEvaluation e = sweep_exact_2d(x, data, pair.k);
      const double grid = grid_sup(x, data, pair, 20000);
      CHECK(e.outlyingness >= grid - 1e-9);
      // a fine grid should come close to the sweep value
      CHECK(grid >= e.outlyingness - 1e-3 * (1.0 + e.outlyingness));
      ++cases;
    }
  }
  CHECK(cases == 36);
}

TEST_CASE("witness direction reproduces the reported sup") {
  for (std::uint64_t seed = 21; seed <= 24; ++seed) {
    const PointCloud data = random_cloud(20, 2, seed);
    const LocationScalePair pair = LocationScalePair::medmad_default(2);
    const DepthEvaluator ev(data, pair, DirectionStrategy::exact2d());
    const CounterRng qr(seed, 8);
    for (int q = 0; q < 4; ++q) {
      Vec x(2);
      x << 2.0 * qr.normal(2 * q), 2.0 * qr.normal(2 * q + 1);
      const DepthEvaluation e = ev.evaluate(x);
      REQUIRE(e.witness.size() == 2);
      CHECK(e.witness.norm() == doctest::Approx(1.0));
      const double at_witness = std::abs(g_deviation(x, e.witness, data, pair));
      CHECK(at_witness == doctest::Approx(e.outlyingness).epsilon(1e-9));
    }
  }
}

TEST_CASE("exact sweep is affine invariant") {
  const PointCloud data = random_cloud(25, 2, 31);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  const CounterRng rng(5, 3);
  for (int rep = 0; rep < 6; ++rep) {
    Mat A(2, 2);
    std::uint64_t attempt = 0;
    do {
      for (int i = 0; i < 4; ++i)
        A(i / 2, i % 2) =
            rng.normal(static_cast<std::uint64_t>(rep) * 1024 + attempt * 4 + i);
      ++attempt;
    } while (std::abs(A.determinant()) < 0.3);
    Vec b(2);
    b << rng.normal(rep * 16 + 8), rng.normal(rep * 16 + 9);

    Mat tp = (data.pts * A.transpose()).rowwise() + b.transpose();
    const PointCloud tdata{tp};
    Vec x(2);
    x << 1.3, -0.4;
    const Vec tx = A * x + b;
    const double o1 = sweep_exact_2d(x, data, pair.k).outlyingness;
    const double o2 = sweep_exact_2d(tx, tdata, pair.k).outlyingness;
    CHECK(o2 == doctest::Approx(o1).epsilon(1e-9));
  }
}

TEST_CASE("outlyingness is convex along rays from its minimizer") {
  const PointCloud data = random_cloud(30, 2, 41);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  const DepthEvaluator ev(data, pair, DirectionStrategy::exact2d());
  // crude minimizer: best data point
  Vec center = data.row(0);
  double best = kInf;
  for (int i = 0; i < data.n(); ++i) {
    const double o = ev.outlyingness(data.row(i));
    if (o < best) {
      best = o;
      center = data.row(i);
    }
  }
  for (int a = 0; a < 8; ++a) {
    const double th = std::numbers::pi * a / 4.0;
    Vec u(2);
    u << std::cos(th), std::sin(th);
    double prev = ev.outlyingness(center);
    for (double t = 0.5; t <= 8.0; t *= 2.0) {
      const double cur = ev.outlyingness(center + t * u);
      CHECK(cur >= prev - 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("sampled direction sets never exceed the exact sup") {
  const PointCloud data = random_cloud(40, 2, 51);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  const DepthEvaluator exact(data, pair, DirectionStrategy::exact2d());
  const DepthEvaluator sphere(data, pair, DirectionStrategy::random_sphere(200, 9));
  const CounterRng qr(13, 4);
  for (int q = 0; q < 10; ++q) {
    Vec x(2);
    x << 4.0 * qr.normal(2 * q), 4.0 * qr.normal(2 * q + 1);
    CHECK(sphere.outlyingness(x) <= exact.outlyingness(x) + 1e-9);
  }
}

TEST_CASE("mean/SD outlyingness equals the Mahalanobis distance") {
  const PointCloud data = random_cloud(50, 3, 61);
  const DepthEvaluator ev(data, LocationScalePair::meansd(),
                          DirectionStrategy::auto_for(50, 3, LocationScalePair::meansd()));
  const Vec mean = data.pts.colwise().mean().transpose();
  const Mat centered = data.pts.rowwise() - mean.transpose();
  const Mat cov = centered.transpose() * centered / data.n();
  const Mat cov_inv = cov.inverse();
  const CounterRng qr(17, 5);
  for (int q = 0; q < 8; ++q) {
    Vec x(3);
    for (int j = 0; j < 3; ++j) x[j] = 2.0 * qr.normal(3 * q + j);
    const Vec c = x - mean;
    const double maha = std::sqrt(c.dot(cov_inv * c));
    CHECK(ev.outlyingness(x) == doctest::Approx(maha).epsilon(1e-9));
  }
}

TEST_CASE("outlyingness is Lipschitz with constant one over the table scale") {
  const PointCloud data = random_cloud(35, 2, 71);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  const DepthEvaluator ev(data, pair, DirectionStrategy::random_sphere(150, 3));
  const double lam = 1.0 / ev.min_scale();
  const CounterRng qr(19, 6);
  for (int q = 0; q < 10; ++q) {
    Vec x(2), y(2);
    x << 3.0 * qr.normal(4 * q), 3.0 * qr.normal(4 * q + 1);
    y << 3.0 * qr.normal(4 * q + 2), 3.0 * qr.normal(4 * q + 3);
    const double lhs = std::abs(ev.outlyingness(x) - ev.outlyingness(y));
    CHECK(lhs <= lam * (x - y).norm() + 1e-9);
  }
}

TEST_CASE("direction sets are deterministic and respect their caps") {
  const PointCloud data = random_cloud(30, 2, 81);
  const auto a = direction_set(DirectionStrategy::data_driven(100, 5), data);
  const auto b = direction_set(DirectionStrategy::data_driven(100, 5), data);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() <= 100);
  CHECK(a.size() >= 90);  // only degenerate pairs may be dropped
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK(a[i].norm() == doctest::Approx(1.0));
  }
  const auto c = direction_set(DirectionStrategy::data_driven(100, 6), data);
  bool any_diff = c.size() != a.size();
  for (size_t i = 0; !any_diff && i < a.size(); ++i)
    any_diff = (a[i] - c[i]).norm() > 0.0;
  CHECK(any_diff);  // a different seed picks a different subset

  // uncapped: n*(n-1)/2 pairs, difference and perpendicular each
  const auto full = direction_set(DirectionStrategy::data_driven(0, 0), data);
  CHECK(full.size() == 30 * 29);
}

TEST_CASE("one-dimensional strategies reduce to the two signs") {
  const PointCloud data = random_cloud(15, 1, 91);
  for (const auto& s : {DirectionStrategy::random_sphere(50, 1),
                        DirectionStrategy::data_driven(40, 2),
                        DirectionStrategy::hybrid(40, 50, 3)}) {
    const auto dirs = direction_set(s, data);
    REQUIRE(dirs.size() == 2);
    CHECK(dirs[0][0] == doctest::Approx(1.0));
    CHECK(dirs[1][0] == doctest::Approx(-1.0));
  }
}

TEST_CASE("automatic strategy switches at the planar size cutoff") {
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  CHECK(DirectionStrategy::auto_for(kExact2DMaxN, 2, pair).kind ==
        DirectionStrategy::Kind::Exact2D);
  CHECK(DirectionStrategy::auto_for(kExact2DMaxN + 1, 2, pair).kind ==
        DirectionStrategy::Kind::Hybrid);
  CHECK(DirectionStrategy::auto_for(50, 3, pair).kind ==
        DirectionStrategy::Kind::Hybrid);
  CHECK(DirectionStrategy::auto_for(50, 2, LocationScalePair::meansd()).kind !=
        DirectionStrategy::Kind::Exact2D);
}

TEST_CASE("hybrid fallback tracks the exact sweep closely on large inputs") {
  const PointCloud data = random_cloud(120, 2, 101);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  const DepthEvaluator exact(data, pair, DirectionStrategy::exact2d());
  const DepthEvaluator hybrid(data, pair, DirectionStrategy::hybrid(500, 300, 4));
  const CounterRng qr(23, 7);
  for (int q = 0; q < 8; ++q) {
    Vec x(2);
    x << 3.0 * qr.normal(2 * q), 3.0 * qr.normal(2 * q + 1);
    const double oe = exact.outlyingness(x);
    const double oh = hybrid.outlyingness(x);
    CHECK(oh <= oe + 1e-9);
    CHECK(oh >= oe - 0.02 * (1.0 + oe));
  }
}

TEST_CASE("degenerate and invalid inputs raise coded errors") {
  Mat empty(0, 2);
  CHECK_THROWS_AS(PointCloud{empty}.validate(), Error);
  Mat bad(2, 2);
  bad << 1, 2, std::nan(""), 4;
  CHECK_THROWS_AS(PointCloud{bad}.validate(), Error);

  Mat same(4, 2);
  same << 1, 1, 1, 1, 1, 1, 1, 1;
  CHECK_THROWS_AS(
      direction_set(DirectionStrategy::data_driven(10, 0), PointCloud{same}),
      Error);
}

TEST_CASE("one-shot helpers agree with the evaluator") {
  const PointCloud data = random_cloud(25, 2, 111);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  Vec x(2);
  x << 0.7, -1.1;
  const DepthEvaluation a =
      projection_depth(x, data, pair, DirectionStrategy::exact2d());
  const DepthEvaluator ev(data, pair, DirectionStrategy::exact2d());
  CHECK(a.outlyingness == doctest::Approx(ev.outlyingness(x)));
  CHECK(a.depth == doctest::Approx(1.0 / (1.0 + a.outlyingness)));
}
