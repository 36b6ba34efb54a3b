#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ptm/rng.hpp"
#include "ptm/univariate.hpp"

using namespace ptm;

TEST_CASE("offset median on hand-checked samples") {
  const std::vector<double> odd{1, 2, 3, 4, 5};
  CHECK(med_k(odd, 1) == doctest::Approx(3.0));
  CHECK(med_k(odd, 2) == doctest::Approx(3.5));
  CHECK(med_k(odd, 3) == doctest::Approx(4.0));
  CHECK(med_k(odd, 5) == doctest::Approx(5.0));

  const std::vector<double> even{1, 2, 3, 4};
  CHECK(med_k(even, 1) == doctest::Approx(2.5));
  CHECK(med_k(even, 2) == doctest::Approx(3.0));
  CHECK(med_k(even, 4) == doctest::Approx(4.0));
}

TEST_CASE("offset median ignores input order") {
  const std::vector<double> shuffled{4, 1, 5, 3, 2};
  CHECK(med_k(shuffled, 1) == doctest::Approx(3.0));
  CHECK(med_k(shuffled, 3) == doctest::Approx(4.0));
}

TEST_CASE("offset median is monotone in k and stays inside the range") {
  const CounterRng rng(7, 1);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + static_cast<int>(rng.bits(100 + rep) % 30);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
      xs[i] = 10.0 * rng.normal(static_cast<std::uint64_t>(rep) * 1000 + i);
    double prev = med_k(xs, 1);
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    for (int k = 1; k <= n; ++k) {
      const double m = med_k(xs, k);
      CHECK(m >= prev - 1e-12);
      CHECK(m >= *lo);
      CHECK(m <= *hi);
      prev = m;
    }
  }
}

TEST_CASE("offset median is affine equivariant") {
  const std::vector<double> xs{0.4, -1.7, 2.2, 0.1, 5.0, -3.3};
  for (int k = 1; k <= 6; ++k) {
    std::vector<double> ys(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) ys[i] = 2.5 * xs[i] - 7.0;
    CHECK(med_k(ys, k) == doctest::Approx(2.5 * med_k(xs, k) - 7.0));
  }
}

TEST_CASE("offset MAD centers at the plain median") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  // deviations from 3: {2,1,0,1,2} sorted {0,1,1,2,2}
  CHECK(mad_k(xs, 1) == doctest::Approx(1.0));
  CHECK(mad_k(xs, 2) == doctest::Approx(1.5));
  CHECK(mad_k(xs, 3) == doctest::Approx(2.0));

  // The location step must stay the ordinary median even for k > 1: centering
  // at med_2 = 3.5 would give deviations {2.5,1.5,0.5,0.5,1.5} and a
  // different k=2 value (2.0 instead of 1.5).
  CHECK(mad_k(xs, 2) != doctest::Approx(2.0));
}

TEST_CASE("offset MAD is translation invariant and scale equivariant") {
  const std::vector<double> xs{0.4, -1.7, 2.2, 0.1, 5.0, -3.3, 8.8};
  for (int k = 1; k <= 7; ++k) {
    std::vector<double> ys(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) ys[i] = -3.0 * xs[i] + 11.0;
    CHECK(mad_k(ys, k) == doctest::Approx(3.0 * mad_k(xs, k)));
  }
}

TEST_CASE("mean and divisor-n standard deviation") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto [m, s] = mean_sd(xs);
  CHECK(m == doctest::Approx(2.5));
  CHECK(s == doctest::Approx(std::sqrt(1.25)));

  const std::vector<double> flat{5, 5, 5};
  const auto [mf, sf] = mean_sd(flat);
  CHECK(mf == doctest::Approx(5.0));
  CHECK(sf == doctest::Approx(0.0));
}

TEST_CASE("pair evaluation matches the underlying functionals") {
  const std::vector<double> xs{0.4, -1.7, 2.2, 0.1, 5.0};
  {
    // the location slot stays the ordinary median; only the scale carries k
    const auto [mu, sig] = evaluate_pair(xs, LocationScalePair::medmad(2));
    CHECK(mu == doctest::Approx(med_k(xs, 1)));
    CHECK(sig == doctest::Approx(mad_k(xs, 2)));
  }
  {
    const auto [mu, sig] = evaluate_pair(xs, LocationScalePair::meansd());
    const auto [m, s] = mean_sd(xs);
    CHECK(mu == doctest::Approx(m));
    CHECK(sig == doctest::Approx(s));
  }
}

TEST_CASE("pair defaults follow the dimension") {
  CHECK(LocationScalePair::medmad_default(1).k == 1);
  CHECK(LocationScalePair::medmad_default(2).k == 3);
  CHECK(LocationScalePair::medmad_default(5).k == 6);
}

TEST_CASE("degenerate and invalid inputs raise coded errors") {
  const std::vector<double> xs{1, 2, 3};
  const std::vector<double> empty;
  CHECK_THROWS_AS(med_k(empty, 1), Error);
  CHECK_THROWS_AS(med_k(xs, 0), Error);
  CHECK_THROWS_AS(med_k(xs, 4), Error);
  try {
    med_k(xs, 9);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "bad_k");
  }
  const std::vector<double> bad{1.0, std::nan(""), 2.0};
  CHECK_THROWS_AS(med_k(bad, 1), Error);
}

TEST_CASE("in-place selection helpers agree with the reference versions") {
  const CounterRng rng(3, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + static_cast<int>(rng.bits(rep) % 25);
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
      xs[i] = rng.normal(static_cast<std::uint64_t>(rep) * 512 + i);
    for (int k = 1; k <= n; k += 2) {
      std::vector<double> buf = xs;
      CHECK(detail::med_k_inplace(buf, k) == doctest::Approx(med_k(xs, k)));
      std::vector<double> scratch(n);
      const double center = med_k(xs, 1);
      CHECK(detail::mad_k_about(xs, center, k, scratch) ==
            doctest::Approx(mad_k(xs, k)));
    }
  }
}
