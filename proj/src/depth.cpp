#include "ptm/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "ptm/rng.hpp"

namespace ptm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Angle in [0, pi) of a direction perpendicular to w (directions are modulo
// sign for our purposes, so half a turn suffices).
double perp_angle(double wx, double wy) {
  double t = std::atan2(wx, -wy);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t -= kPi;
  return t;
}

void push_if_inside(double theta, double lo, double hi, std::vector<double>& out) {
  if (theta > lo && theta < hi) {
    out.push_back(theta);
  } else if (theta + kPi > lo && theta + kPi < hi) {
    out.push_back(theta + kPi);
  }
}

std::vector<Vec> sphere_directions(int count, std::uint64_t seed, int d) {
  if (count < 1) throw Error("bad_strategy", "direction count must be >= 1");
  CounterRng rng(seed, 0xD19EC7ULL);
  std::vector<Vec> dirs;
  dirs.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec v;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const std::uint64_t base =
          (static_cast<std::uint64_t>(i) * 8 + attempt) * static_cast<std::uint64_t>(d);
      v = rng.normal_vec(base, d);
      const double nrm = v.norm();
      if (nrm > 1e-12) {
        v /= nrm;
        break;
      }
    }
    dirs.push_back(std::move(v));
  }
  return dirs;
}

// Directions from point pairs: the normalized difference, plus its
// perpendicular in the plane. Pairs are never materialized wholesale; when a
// cap applies, slot indices are drawn by a virtual partial Fisher-Yates
// (O(cap) memory) and directions built only for the drawn slots, in
// enumeration order. Slots hitting coincident points yield nothing, so the
// result can fall slightly short of the cap on data with duplicates.
std::vector<Vec> data_driven_directions(const PointCloud& data, int cap,
                                        std::uint64_t seed) {
  const int n = data.n();
  const int d = data.dim();
  const std::uint64_t mult = d == 2 ? 2 : 1;
  const std::uint64_t npairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (npairs == 0)
    throw Error("degenerate_data", "need at least two distinct points");
  const std::uint64_t total = npairs * mult;

  // lexicographic pair rank -> (i, j): offset(i) counts pairs before row i
  const auto offset = [&](std::uint64_t i) {
    return i * (2 * static_cast<std::uint64_t>(n) - i - 1) / 2;
  };
  const auto unrank = [&](std::uint64_t rank, int& i, int& j) {
    std::uint64_t lo = 0, hi = static_cast<std::uint64_t>(n) - 1;
    while (lo + 1 < hi) {
      const std::uint64_t mid = (lo + hi) / 2;
      (offset(mid) <= rank ? lo : hi) = mid;
    }
    i = static_cast<int>(lo);
    j = static_cast<int>(lo + 1 + (rank - offset(lo)));
  };
  const auto build = [&](std::uint64_t slot, std::vector<Vec>& out) {
    int i, j;
    unrank(slot / mult, i, j);
    Vec diff = (data.pts.row(i) - data.pts.row(j)).transpose();
    const double nrm = diff.norm();
    if (nrm <= 0.0) return;
    diff /= nrm;
    if (slot % mult == 1) {
      Vec perp(2);
      perp << -diff[1], diff[0];
      out.push_back(std::move(perp));
    } else {
      out.push_back(std::move(diff));
    }
  };

  std::vector<std::uint64_t> keep;
  if (cap > 0 && total > static_cast<std::uint64_t>(cap)) {
    std::unordered_map<std::uint64_t, std::uint64_t> moved;
    const auto at = [&](std::uint64_t p) {
      const auto it = moved.find(p);
      return it == moved.end() ? p : it->second;
    };
    CounterRng rng(seed, 0xDA7AULL);
    keep.reserve(cap);
    for (int t = 0; t < cap; ++t) {
      const std::uint64_t span = total - static_cast<std::uint64_t>(t);
      const std::uint64_t j = static_cast<std::uint64_t>(t) + rng.bits(t) % span;
      const std::uint64_t vj = at(j), vt = at(static_cast<std::uint64_t>(t));
      keep.push_back(vj);
      moved[j] = vt;
    }
    std::sort(keep.begin(), keep.end());
  } else {
    keep.resize(total);
    std::iota(keep.begin(), keep.end(), 0);
  }

  std::vector<Vec> picked;
  picked.reserve(keep.size());
  for (const std::uint64_t slot : keep) build(slot, picked);
  if (picked.empty()) {
    // every drawn slot hit duplicates; scan pairs deterministically instead
    const int want = cap > 0 ? cap : static_cast<int>(total);
    for (std::uint64_t s = 0; s < total && static_cast<int>(picked.size()) < want; ++s)
      build(s, picked);
    if (picked.empty())
      throw Error("degenerate_data", "all points coincide; no data-driven directions");
  }
  return picked;
}

}  // namespace

DirectionStrategy DirectionStrategy::auto_for(int n, int d,
                                              const LocationScalePair& pair,
                                              std::uint64_t seed) {
  if (pair.kind == PairKind::MedMad && d == 2 && n <= kExact2DMaxN)
    return exact2d();
  return hybrid(500, 300, seed);
}

namespace detail {

std::vector<double> exact2d_candidate_angles(const PointCloud& data) {
  const int n = data.n();
  const auto& P = data.pts;
  std::vector<double> events;
  events.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double vx = P(i, 0) - P(j, 0);
      const double vy = P(i, 1) - P(j, 1);
      if (vx == 0.0 && vy == 0.0) continue;
      events.push_back(perp_angle(vx, vy));
    }
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  std::vector<double> cands;
  cands.push_back(0.0);
  cands.push_back(0.5 * kPi);
  if (events.empty()) {
    // Projection order never changes (e.g. all points coincide).
    cands.push_back(0.25 * kPi);
    cands.push_back(0.75 * kPi);
    return cands;
  }
  cands.insert(cands.end(), events.begin(), events.end());

  const int A = static_cast<int>(events.size());
  std::vector<double> qa(n), qb(n);
  std::vector<int> order(n);
  // Walk the arcs between consecutive ordering events. Inside an arc the
  // median pair is fixed, so the scale can only change ranks where a sum
  // deviation or a single deviation crosses zero; those angles, the events
  // themselves, and the arc midpoints exhaust the places the sup can live.
  for (int ai = 0; ai < A; ++ai) {
    const double lo = events[ai];
    const double hi = (ai + 1 < A) ? events[ai + 1] : events[0] + kPi;
    if (hi - lo < 1e-14) continue;
    const double mid = 0.5 * (lo + hi);
    const double cm = std::cos(mid), sm = std::sin(mid);
    for (int i = 0; i < n; ++i) order[i] = i;
    const auto proj_at = [&](int i) { return cm * P(i, 0) + sm * P(i, 1); };
    const int r1 = (n - 1) / 2;
    std::nth_element(order.begin(), order.begin() + r1, order.end(),
                     [&](int a, int b) { return proj_at(a) < proj_at(b); });
    const int m1 = order[r1];
    int m2 = m1;
    if (n % 2 == 0) {
      m2 = order[r1 + 1];
      for (int t = r1 + 2; t < n; ++t)
        if (proj_at(order[t]) < proj_at(m2)) m2 = order[t];
    }
    const double px = 0.5 * (P(m1, 0) + P(m2, 0));
    const double py = 0.5 * (P(m1, 1) + P(m2, 1));
    const double cl = std::cos(lo), sl = std::sin(lo);
    const double ch = std::cos(hi), sh = std::sin(hi);
    const double pl = cl * px + sl * py;
    const double ph = ch * px + sh * py;
    for (int i = 0; i < n; ++i) {
      qa[i] = cl * P(i, 0) + sl * P(i, 1) - pl;
      qb[i] = ch * P(i, 0) + sh * P(i, 1) - ph;
    }
    cands.push_back(mid);
    for (int i = 0; i < n; ++i) {
      if ((qa[i] > 0.0 && qb[i] < 0.0) || (qa[i] < 0.0 && qb[i] > 0.0))
        push_if_inside(perp_angle(P(i, 0) - px, P(i, 1) - py), lo, hi, cands);
    }
    for (int i = 0; i < n; ++i) {
      const double qai = qa[i], qbi = qb[i];
      for (int j = i + 1; j < n; ++j) {
        const double sa = qai + qa[j];
        const double sb = qbi + qb[j];
        if ((sa > 0.0 && sb < 0.0) || (sa < 0.0 && sb > 0.0))
          push_if_inside(perp_angle(P(i, 0) + P(j, 0) - 2.0 * px,
                                    P(i, 1) + P(j, 1) - 2.0 * py),
                         lo, hi, cands);
      }
    }
  }
  for (double& a : cands) {
    if (a >= kPi) a -= kPi;
    if (a < 0.0) a += kPi;
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

}  // namespace detail

double g_deviation(const Vec& x, const Vec& u, const PointCloud& data,
                   const LocationScalePair& pair) {
  if (x.size() != data.dim() || u.size() != data.dim())
    throw Error("dim_mismatch", "query/direction dimension does not match data");
  if (std::fabs(u.norm() - 1.0) > 1e-12)
    throw Error("bad_direction", "direction must have unit norm (within 1e-12)");
  std::vector<double> proj(data.n());
  for (int i = 0; i < data.n(); ++i) proj[i] = data.pts.row(i).dot(u);
  const auto [mu, sigma] = evaluate_pair(proj, pair);
  const double num = u.dot(x) - mu;
  if (sigma == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? kInf : -kInf;
  }
  return num / sigma;
}

std::vector<Vec> direction_set(const DirectionStrategy& strategy,
                               const PointCloud& data) {
  const int d = data.dim();
  if (d == 1) {
    Vec plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    return {plus, minus};
  }
  switch (strategy.kind) {
    case DirectionStrategy::Kind::RandomSphere:
      return sphere_directions(strategy.count, strategy.seed, d);
    case DirectionStrategy::Kind::DataDriven:
      return data_driven_directions(data, strategy.cap, strategy.seed);
    case DirectionStrategy::Kind::Hybrid: {
      auto dirs = data_driven_directions(data, strategy.cap, strategy.seed);
      auto extra = sphere_directions(strategy.count, strategy.seed, d);
      dirs.insert(dirs.end(), std::make_move_iterator(extra.begin()),
                  std::make_move_iterator(extra.end()));
      return dirs;
    }
    case DirectionStrategy::Kind::Exact2D: {
      if (d != 2)
        throw Error("bad_strategy", "the exact sweep requires two-dimensional data");
      auto angles = detail::exact2d_candidate_angles(data);
      std::vector<Vec> dirs;
      dirs.reserve(angles.size());
      for (double a : angles) {
        Vec u(2);
        u << std::cos(a), std::sin(a);
        dirs.push_back(std::move(u));
      }
      return dirs;
    }
  }
  throw Error("bad_strategy", "unknown direction strategy");
}

DepthEvaluator::DepthEvaluator(PointCloud data, LocationScalePair pair,
                               DirectionStrategy strategy)
    : data_(std::move(data)), pair_(pair), strategy_(strategy) {
  data_.validate();
  if (pair_.kind == PairKind::MeanSd) {
    mode_ = Mode::MeanSdClosed;
    method_ = "meansd_closed_form";
    build_meansd();
    return;
  }
  if (pair_.k < 1 || pair_.k > data_.n())
    throw Error("bad_k", "offset k must satisfy 1 <= k <= n");
  mode_ = Mode::Table;
  build_table();
}

void DepthEvaluator::build_meansd() {
  const int n = data_.n();
  const int d = data_.dim();
  mean_ = data_.pts.colwise().mean().transpose();
  Mat centered = data_.pts.rowwise() - mean_.transpose();
  Mat cov = (centered.transpose() * centered) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  if (es.info() != Eigen::Success)
    throw Error("numeric", "covariance eigendecomposition failed");
  cov_evec_ = es.eigenvectors();
  cov_eval_ = es.eigenvalues();
  const double top = std::max(cov_eval_[d - 1], 0.0);
  eig_tol_ = top * 1e-12;
}

void DepthEvaluator::build_table() {
  const int n = data_.n();
  const int d = data_.dim();
  std::vector<Vec> dirs;
  if (d == 1) {
    Vec u(1);
    u << 1.0;
    dirs.push_back(u);
    method_ = "exact1d";
  } else if (strategy_.kind == DirectionStrategy::Kind::Exact2D) {
    if (d != 2)
      throw Error("bad_strategy", "the exact sweep requires two-dimensional data");
    if (n <= kExact2DMaxN) {
      const auto angles = detail::exact2d_candidate_angles(data_);
      dirs.reserve(angles.size());
      for (double a : angles) {
        Vec u(2);
        u << std::cos(a), std::sin(a);
        dirs.push_back(std::move(u));
      }
      method_ = "exact2d";
    } else {
      dirs = data_driven_directions(data_, 500, strategy_.seed);
      auto extra = sphere_directions(300, strategy_.seed, d);
      dirs.insert(dirs.end(), std::make_move_iterator(extra.begin()),
                  std::make_move_iterator(extra.end()));
      refine_ = true;
      method_ = "exact2d_fallback(data_driven+random_sphere+refine)";
    }
  } else {
    dirs = direction_set(strategy_, data_);
    switch (strategy_.kind) {
      case DirectionStrategy::Kind::RandomSphere: method_ = "random_sphere"; break;
      case DirectionStrategy::Kind::DataDriven: method_ = "data_driven"; break;
      default: method_ = "data_driven+random_sphere"; break;
    }
  }

  const int m = static_cast<int>(dirs.size());
  dirs_.resize(d, m);
  mu_.resize(m);
  sigma_.resize(m);
  std::vector<double> proj(n), buf(n), scratch(n);
  for (int j = 0; j < m; ++j) {
    dirs_.col(j) = dirs[j];
    Eigen::Map<Eigen::VectorXd>(proj.data(), n) = data_.pts * dirs[j];
    std::copy(proj.begin(), proj.end(), buf.begin());
    const double mu = detail::med1_inplace(buf);
    mu_[j] = mu;
    sigma_[j] = detail::mad_k_about(proj, mu, pair_.k, scratch);
  }
}

double DepthEvaluator::refined_sup(const Vec& x, double theta_best,
                                   double window, double* theta_out) const {
  // Golden-section polish of |g| over the angle; used when the table is a
  // sampled stand-in for the full sweep.
  const int n = data_.n();
  std::vector<double> proj(n), scratch(n), buf(n);
  const auto eval = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    for (int i = 0; i < n; ++i) proj[i] = c * data_.pts(i, 0) + s * data_.pts(i, 1);
    std::copy(proj.begin(), proj.end(), buf.begin());
    const double mu = detail::med1_inplace(buf);
    const double sig = detail::mad_k_about(proj, mu, pair_.k, scratch);
    const double num = std::fabs(c * x[0] + s * x[1] - mu);
    if (sig == 0.0) return num == 0.0 ? 0.0 : kInf;
    return num / sig;
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = theta_best - window, b = theta_best + window;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = eval(c1), f2 = eval(c2);
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (b - a); f2 = eval(c2);
    } else {
      b = c2; c2 = c1; f2 = f1;
      c1 = b - gr * (b - a); f1 = eval(c1);
    }
  }
  const double th = (f1 > f2) ? c1 : c2;
  if (theta_out) *theta_out = th;
  return std::max(f1, f2);
}

DepthEvaluation DepthEvaluator::evaluate_meansd(const Vec& x,
                                                bool want_witness) const {
  const int d = data_.dim();
  DepthEvaluation out;
  out.method = method_;
  const Vec delta = x - mean_;
  const Vec z = cov_evec_.transpose() * delta;
  const double null_tol = 1e-8 * (1.0 + delta.norm());
  double o2 = 0.0;
  Vec w = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (cov_eval_[i] <= eig_tol_) {
      if (std::fabs(z[i]) > null_tol) {
        out.outlyingness = kInf;
        out.depth = 0.0;
        if (want_witness) {
          out.witness = cov_evec_.col(i);
          if (out.witness.dot(delta) < 0.0) out.witness = -out.witness;
        }
        return out;
      }
      continue;
    }
    o2 += z[i] * z[i] / cov_eval_[i];
    w += cov_evec_.col(i) * (z[i] / cov_eval_[i]);
  }
  out.outlyingness = std::sqrt(o2);
  out.depth = 1.0 / (1.0 + out.outlyingness);
  if (want_witness) {
    const double nrm = w.norm();
    if (nrm > 0.0) {
      out.witness = w / nrm;
    } else {
      out.witness = Vec::Zero(d);
      out.witness[0] = 1.0;
      out.tied = true;
    }
  }
  return out;
}

DepthEvaluation DepthEvaluator::evaluate_table(const Vec& x,
                                               bool want_witness) const {
  const int m = static_cast<int>(dirs_.cols());
  DepthEvaluation out;
  out.method = method_;
  double best = -1.0;
  int bi = 0;
  for (int j = 0; j < m; ++j) {
    const double t = dirs_.col(j).dot(x) - mu_[j];
    double val = std::fabs(t) / sigma_[j];
    if (std::isnan(val)) val = 0.0;  // 0/0 convention
    if (val > best) {
      best = val;
      bi = j;
    }
  }
  double best_theta = (data_.dim() == 2)
                          ? std::atan2(dirs_(1, bi), dirs_(0, bi))
                          : 0.0;
  if (refine_ && std::isfinite(best)) {
    const double window = std::max(4.0 * kPi / std::max(m, 8), 0.01);
    double th = best_theta;
    const double ref = refined_sup(x, best_theta, window, &th);
    if (ref > best) {
      best = ref;
      best_theta = th;
      bi = -1;
    }
  }
  out.outlyingness = best;
  out.depth = std::isinf(best) ? 0.0 : 1.0 / (1.0 + best);

  if (want_witness) {
    Vec u;
    if (bi >= 0) {
      u = dirs_.col(bi);
    } else {
      u = Vec(2);
      u << std::cos(best_theta), std::sin(best_theta);
    }
    // Report the direction along which the deviation is nonnegative.
    double t = u.dot(x) - (bi >= 0 ? mu_[bi] : 0.0);
    if (bi < 0) {
      // Recompute the location for the refined angle.
      std::vector<double> proj(data_.n()), buf(data_.n());
      for (int i = 0; i < data_.n(); ++i) proj[i] = data_.pts.row(i).dot(u);
      std::copy(proj.begin(), proj.end(), buf.begin());
      t = u.dot(x) - detail::med1_inplace(buf);
    }
    if (t < 0.0) u = -u;
    out.witness = u;
    // Tie scan: distinct directions achieving the sup within tolerance.
    if (bi >= 0) {
      const double tol = std::isinf(best) ? 0.0 : 1e-12 * (1.0 + best);
      int distinct = 0;
      double first_theta = kInf;
      int first_idx = -1;
      Vec first_dir;
      for (int j = 0; j < m; ++j) {
        const double t2 = dirs_.col(j).dot(x) - mu_[j];
        double val = std::fabs(t2) / sigma_[j];
        if (std::isnan(val)) val = 0.0;
        const bool hit = std::isinf(best) ? std::isinf(val) : (val >= best - tol);
        if (!hit) continue;
        if (first_idx < 0) {
          first_idx = j;
          first_dir = dirs_.col(j);
          first_theta = (data_.dim() == 2)
                            ? std::fmod(std::atan2(dirs_(1, j), dirs_(0, j)) + kPi, kPi)
                            : 0.0;
          distinct = 1;
          continue;
        }
        bool same;
        if (data_.dim() == 2) {
          double th = std::fmod(std::atan2(dirs_(1, j), dirs_(0, j)) + kPi, kPi);
          double dd = std::fabs(th - first_theta);
          dd = std::min(dd, kPi - dd);
          same = dd < 1e-9;
        } else {
          same = std::fabs(std::fabs(first_dir.dot(dirs_.col(j))) - 1.0) < 1e-12;
        }
        if (!same) {
          ++distinct;
          // Smallest angle wins the report.
          if (data_.dim() == 2) {
            double th = std::fmod(std::atan2(dirs_(1, j), dirs_(0, j)) + kPi, kPi);
            if (th < first_theta) {
              first_theta = th;
              first_idx = j;
              first_dir = dirs_.col(j);
            }
          }
          break;
        }
      }
      if (distinct > 1) {
        out.tied = true;
        Vec u2 = first_dir;
        const double t2 = u2.dot(x) - mu_[first_idx];
        if (t2 < 0.0) u2 = -u2;
        out.witness = u2;
      }
    }
  }
  return out;
}

DepthEvaluation DepthEvaluator::evaluate(const Vec& x) const {
  if (x.size() != data_.dim())
    throw Error("dim_mismatch", "query dimension does not match data");
  if (mode_ == Mode::MeanSdClosed) return evaluate_meansd(x, true);
  return evaluate_table(x, true);
}

double DepthEvaluator::outlyingness(const Vec& x) const {
  if (x.size() != data_.dim())
    throw Error("dim_mismatch", "query dimension does not match data");
  if (mode_ == Mode::MeanSdClosed) return evaluate_meansd(x, false).outlyingness;
  const int m = static_cast<int>(dirs_.cols());
  double best = -1.0;
  int bi = 0;
  for (int j = 0; j < m; ++j) {
    const double t = dirs_.col(j).dot(x) - mu_[j];
    double val = std::fabs(t) / sigma_[j];
    if (std::isnan(val)) val = 0.0;
    if (val > best) {
      best = val;
      bi = j;
    }
  }
  if (refine_ && std::isfinite(best)) {
    const double theta = std::atan2(dirs_(1, bi), dirs_(0, bi));
    const double window = std::max(4.0 * kPi / std::max(m, 8), 0.01);
    best = std::max(best, refined_sup(x, theta, window, nullptr));
  }
  return best;
}

double DepthEvaluator::depth(const Vec& x) const {
  const double o = outlyingness(x);
  return std::isinf(o) ? 0.0 : 1.0 / (1.0 + o);
}

int DepthEvaluator::table_size() const {
  return mode_ == Mode::Table ? static_cast<int>(dirs_.cols()) : 0;
}

double DepthEvaluator::min_scale() const {
  if (mode_ == Mode::MeanSdClosed)
    return std::sqrt(std::max(cov_eval_[0], 0.0));
  double s = kInf;
  for (int j = 0; j < sigma_.size(); ++j)
    if (sigma_[j] > 0.0) s = std::min(s, sigma_[j]);
  return s;
}

std::vector<Vec> DepthEvaluator::directions() const {
  std::vector<Vec> out;
  if (mode_ != Mode::Table) return out;
  out.reserve(dirs_.cols());
  for (int j = 0; j < dirs_.cols(); ++j) out.push_back(dirs_.col(j));
  return out;
}

DepthEvaluation outlyingness(const Vec& x, const PointCloud& data,
                             const LocationScalePair& pair,
                             const DirectionStrategy& strategy) {
  DepthEvaluator ev(data, pair, strategy);
  return ev.evaluate(x);
}

DepthEvaluation projection_depth(const Vec& x, const PointCloud& data,
                                 const LocationScalePair& pair,
                                 const DirectionStrategy& strategy) {
  return outlyingness(x, data, pair, strategy);
}

DepthEvaluation sweep_exact_2d(const Vec& x, const PointCloud& data, int k) {
  if (data.dim() != 2)
    throw Error("bad_strategy", "the exact sweep requires two-dimensional data");
  DepthEvaluator ev(data, LocationScalePair::medmad(k), DirectionStrategy::exact2d());
  return ev.evaluate(x);
}

}  // namespace ptm
