#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ptm/competitors.hpp"
#include "ptm/depth.hpp"
#include "ptm/rng.hpp"
#include "ptm/types.hpp"

using namespace ptm;

namespace {

PointCloud cloud(const std::vector<std::vector<double>>& rows) {
  return PointCloud::from_rows(rows);
}

PointCloud random_cloud(int n, int d, std::uint64_t seed) {
  const CounterRng rng(seed, 7);
  Mat m(n, d);
  for (int i = 0; i < n; ++i)
    m.row(i) = rng.normal_vec(static_cast<std::uint64_t>(i) * d, d).transpose();
  return PointCloud(std::move(m));
}

// Independent planar oracle: the count can only change at directions
// perpendicular to some X_i - x, so probing a dense fan plus both sides of
// every such direction covers every constancy arc.
long long planar_count_oracle(const Vec& x, const PointCloud& data) {
  std::vector<double> angles;
  const int grid = 4096;
  angles.reserve(2 * grid + 4 * data.n());
  for (int j = 0; j < grid; ++j)
    angles.push_back(std::numbers::pi * j / grid);
  for (int i = 0; i < data.n(); ++i) {
    const double dx = data.pts(i, 0) - x[0];
    const double dy = data.pts(i, 1) - x[1];
    if (dx == 0.0 && dy == 0.0) continue;
    const double psi = std::atan2(dy, dx);
    for (double off : {1e-7, -1e-7}) {
      angles.push_back(psi + std::numbers::pi / 2 + off);
      angles.push_back(psi - std::numbers::pi / 2 + off);
    }
  }
  long long best = data.n();
  for (const double th : angles) {
    const Vec u = (Vec(2) << std::cos(th), std::sin(th)).finished();
    const double ux = u.dot(x);
    long long above = 0, below = 0;
    for (int i = 0; i < data.n(); ++i) {
      const double p = u.dot(data.pts.row(i).transpose());
      if (p >= ux) ++above;
      if (p <= ux) ++below;
    }
    best = std::min({best, above, below});
  }
  return best;
}

}  // namespace

TEST_CASE("huber taper: quadratic below the knee, flat above") {
  const DepthWeight w = huber_depth_weight(0.5);
  CHECK(w(0.5) == doctest::Approx(1.0));
  CHECK(w(0.9) == doctest::Approx(1.0));
  CHECK(w(0.25) == doctest::Approx(0.25));
  CHECK(w(0.1) == doctest::Approx(0.04));
  CHECK(w(0.0) == doctest::Approx(0.0));
  CHECK(w(-0.2) == doctest::Approx(0.0));
  const DepthWeight flat = huber_depth_weight(0.0);
  CHECK(flat(0.01) == doctest::Approx(1.0));
  CHECK(flat(0.99) == doctest::Approx(1.0));
}

TEST_CASE("halfspace depth on the four-point cross") {
  const PointCloud data = cloud({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const Rational center = halfspace_depth((Vec(2) << 0, 0).finished(), data);
  CHECK(center.num == 2);
  CHECK(center.den == 4);
  CHECK(center.value() == doctest::Approx(0.5));
  const Rational vertex = halfspace_depth((Vec(2) << 1, 0).finished(), data);
  CHECK(vertex.num == 1);
  CHECK(vertex.den == 4);
  const Rational outside = halfspace_depth((Vec(2) << 2, 2).finished(), data);
  CHECK(outside.num == 0);
}

TEST_CASE("halfspace depth at triangle vertices and interior") {
  const PointCloud data = cloud({{0, 0}, {3, 0.4}, {1, 2.5}});
  for (int i = 0; i < 3; ++i) {
    const Rational r = halfspace_depth(data.pts.row(i).transpose(), data);
    CHECK(r.num == 1);
    CHECK(r.den == 3);
  }
  const Vec inside = data.pts.colwise().mean().transpose();
  CHECK(halfspace_depth(inside, data).num == 1);
}

TEST_CASE("halfspace depth on the line") {
  const PointCloud data = cloud({{1}, {2}, {3}, {4}, {5}});
  CHECK(halfspace_depth((Vec(1) << 3).finished(), data).num == 3);
  CHECK(halfspace_depth((Vec(1) << 1).finished(), data).num == 1);
  CHECK(halfspace_depth((Vec(1) << 0.5).finished(), data).num == 0);
  CHECK(halfspace_depth((Vec(1) << 2.5).finished(), data).num == 2);
  CHECK(halfspace_depth((Vec(1) << 3).finished(), data).den == 5);
}

TEST_CASE("planar sweep equals the direction-fan oracle") {
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL, 6ULL}) {
    const int n = seed % 2 == 0 ? 25 : 10;
    PointCloud data = random_cloud(n, 2, seed);
    if (seed == 3) data.pts.row(1) = data.pts.row(0);  // duplicate row
    const CounterRng rng(seed, 9);
    std::vector<Vec> queries;
    for (int q = 0; q < 4; ++q)
      queries.push_back(rng.normal_vec(1000 + static_cast<std::uint64_t>(q) * 2, 2));
    for (int i = 0; i < 3; ++i) queries.push_back(data.pts.row(i).transpose());
    for (const Vec& x : queries) {
      const Rational got = halfspace_depth(x, data);
      CHECK(got.den == n);
      CHECK(got.num == planar_count_oracle(x, data));
    }
  }
}

TEST_CASE("halfspace depth never exceeds the majority bound") {
  for (const std::uint64_t seed : {11ULL, 12ULL}) {
    const PointCloud data = random_cloud(21, 2, seed);
    for (int i = 0; i < data.n(); ++i) {
      const Rational r = halfspace_depth(data.pts.row(i).transpose(), data);
      CHECK(r.num >= 1);  // a data point sits in every closed halfplane through it
      CHECK(r.num <= (data.n() + 1) / 2);
    }
  }
}

TEST_CASE("halfspace median finds the symmetric center") {
  const PointCloud crossed = cloud({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const HalfspaceMedianResult r = halfspace_median(crossed);
  CHECK(r.center.norm() <= 1e-9);
  CHECK(r.depth.num == 2);
  CHECK(r.depth.den == 4);
  CHECK(r.evaluations > 0);

  const PointCloud doubled = cloud(
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {2, 0}, {-2, 0}, {0, 2}, {0, -2}});
  const HalfspaceMedianResult r8 = halfspace_median(doubled);
  CHECK(r8.center.norm() <= 1e-9);
  CHECK(r8.depth.num == 4);
  CHECK(r8.depth.den == 8);
}

TEST_CASE("halfspace median certificate is honest") {
  for (const std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
    const PointCloud data = random_cloud(30, 2, seed);
    const HalfspaceMedianResult r = halfspace_median(data);
    const Rational check = halfspace_depth(r.center, data);
    CHECK(check.num == r.depth.num);
    CHECK(check.den == r.depth.den);
    // a center point of depth >= n/(d+1) always exists, and every data point
    // was probed, so the reported level can never fall below either bound
    CHECK(r.depth.num >= 10);
    long long best_data = 0;
    for (int i = 0; i < data.n(); ++i)
      best_data = std::max(best_data,
                           halfspace_depth(data.pts.row(i).transpose(), data).num);
    CHECK(r.depth.num >= best_data);
  }
}

TEST_CASE("halfspace median on the line is the median") {
  const HalfspaceMedianResult odd = halfspace_median(cloud({{1}, {2}, {3}, {4}, {5}}));
  CHECK(odd.center[0] == doctest::Approx(3.0));
  CHECK(odd.depth.num == 3);
  CHECK(odd.depth.den == 5);
  const HalfspaceMedianResult even = halfspace_median(cloud({{1}, {2}, {3}, {10}}));
  CHECK(even.center[0] == doctest::Approx(2.5));
  CHECK(even.depth.num == 2);
}

TEST_CASE("halfspace median rejects unsupported inputs") {
  CHECK_THROWS_AS(halfspace_median(random_cloud(10, 3, 1)), Error);
  try {
    halfspace_median(random_cloud(10, 2, 1), 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "bad_argument");
  }
}

TEST_CASE("depth-weighted mean with constant weight is the mean") {
  const PointCloud data = random_cloud(25, 2, 31);
  const Vec got = stahel_donoho(data, DirectionStrategy::exact2d(),
                                [](double) { return 1.0; });
  const Vec mean = data.pts.colwise().mean().transpose();
  CHECK((got - mean).norm() <= 1e-12);
}

TEST_CASE("depth-weighted mean is translation and scale equivariant") {
  const PointCloud data = random_cloud(40, 2, 32);
  const DirectionStrategy strat = DirectionStrategy::exact2d();
  const Vec base = stahel_donoho(data, strat);
  Vec shift(2);
  shift << 3.5, -1.25;

  Mat shifted = data.pts;
  shifted.rowwise() += shift.transpose();
  const Vec moved = stahel_donoho(PointCloud(shifted), strat);
  CHECK((moved - (base + shift)).norm() <= 1e-9);

  const Vec scaled = stahel_donoho(PointCloud(Mat(5.0 * data.pts)), strat);
  CHECK((scaled - 5.0 * base).norm() <= 1e-9);
}

TEST_CASE("depth-weighted mean resists a far cluster") {
  PointCloud data = random_cloud(40, 2, 33);
  Mat pts = data.pts;
  for (int i = 0; i < 8; ++i) {
    pts(i, 0) = 50.0 + 0.1 * i;
    pts(i, 1) = 50.0;
  }
  const PointCloud poisoned(std::move(pts));
  const Vec sd = stahel_donoho(poisoned, DirectionStrategy::exact2d());
  const Vec mean = poisoned.pts.colwise().mean().transpose();
  CHECK(mean.norm() > 5.0);
  CHECK(sd.norm() < 0.25 * mean.norm());
  CHECK(sd.norm() < 2.0);
}

TEST_CASE("depth-weighted mean works off the plane") {
  const PointCloud data = random_cloud(30, 3, 34);
  const Vec sd = stahel_donoho(data, DirectionStrategy::random_sphere(300, 5));
  CHECK(sd.allFinite());
  CHECK(sd.norm() < 1.5);
}

TEST_CASE("depth-weighted mean input contract") {
  try {
    stahel_donoho(random_cloud(2, 2, 35), DirectionStrategy::exact2d());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "too_few_points");
  }
  const PointCloud data = random_cloud(20, 2, 36);
  try {
    stahel_donoho(data, DirectionStrategy::exact2d(), [](double) { return -1.0; });
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "bad_weight");
  }
  try {
    stahel_donoho(data, DirectionStrategy::exact2d(), [](double) { return 0.0; });
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "zero_weights");
  }
}
