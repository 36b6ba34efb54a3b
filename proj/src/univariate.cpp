#include "ptm/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ptm {

namespace {

void check_sample(std::span<const double> xs, int k) {
  if (xs.empty()) throw Error("empty_input", "sample is empty");
  const int n = static_cast<int>(xs.size());
  if (k < 1 || k > n)
    throw Error("bad_k", "offset k must satisfy 1 <= k <= n",
                {{"k", std::to_string(k)}, {"n", std::to_string(n)}});
  for (double x : xs)
    if (!std::isfinite(x))
      throw Error("nonfinite_input", "sample contains NaN or infinite entries");
}

}  // namespace

namespace detail {

double med_k_inplace(std::span<double> buf, int k) {
  const int n = static_cast<int>(buf.size());
  // 1-based order-statistic ranks, then 0-based offsets.
  const int a = (n + k) / 2 - 1;
  const int b = (n + k + 1) / 2 - 1;
  std::nth_element(buf.begin(), buf.begin() + a, buf.end());
  const double xa = buf[a];
  if (b == a) return xa;
  // b == a+1: the next order statistic is the min of the right part.
  const double xb = *std::min_element(buf.begin() + b, buf.end());
  return 0.5 * (xa + xb);
}

double med1_inplace(std::span<double> buf) { return med_k_inplace(buf, 1); }

double mad_k_about(std::span<const double> buf, double center, int k,
                   std::span<double> scratch) {
  const size_t n = buf.size();
  for (size_t i = 0; i < n; ++i) scratch[i] = std::fabs(buf[i] - center);
  return med_k_inplace(scratch.subspan(0, n), k);
}

}  // namespace detail

double med_k(std::span<const double> xs, int k) {
  check_sample(xs, k);
  std::vector<double> buf(xs.begin(), xs.end());
  return detail::med_k_inplace(buf, k);
}

double mad_k(std::span<const double> xs, int k) {
  check_sample(xs, k);
  std::vector<double> buf(xs.begin(), xs.end());
  const double m = detail::med1_inplace(buf);
  std::vector<double> scratch(xs.size());
  return detail::mad_k_about(std::span<const double>(xs), m, k, scratch);
}

std::pair<double, double> mean_sd(std::span<const double> xs) {
  check_sample(xs, 1);
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / n)};
}

std::pair<double, double> evaluate_pair(std::span<const double> xs,
                                        const LocationScalePair& pair) {
  if (pair.kind == PairKind::MeanSd) return mean_sd(xs);
  check_sample(xs, pair.k);
  std::vector<double> buf(xs.begin(), xs.end());
  const double m = detail::med1_inplace(buf);
  std::vector<double> scratch(xs.size());
  const double s = detail::mad_k_about(std::span<const double>(xs), m, pair.k, scratch);
  return {m, s};
}

}  // namespace ptm
