#include "ptm/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ptm/competitors.hpp"
#include "ptm/distributions.hpp"
#include "ptm/regions.hpp"
#include "ptm/rng.hpp"

namespace ptm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

// Work-stealing loop over replicate indices; slot-indexed outputs keep the
// results independent of the schedule.
void parallel_for(int m, int threads, const std::function<void(int)>& body) {
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  t = std::clamp(t, 1, std::max(1, m));
  if (t == 1) {
    for (int r = 0; r < m; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  const auto work = [&] {
    for (int r; (r = next.fetch_add(1)) < m;) body(r);
  };
  std::vector<std::thread> pool;
  pool.reserve(t - 1);
  for (int i = 0; i < t - 1; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

std::uint64_t replicate_seed(std::uint64_t master, int n, int r) {
  CounterRng mix(master, static_cast<std::uint64_t>(n) * 1000003ULL +
                             static_cast<std::uint64_t>(r));
  return mix.bits(0);
}

Mat cov_sqrt(const Mat& cov) {
  Eigen::SelfAdjointEigenSolver<Mat> es(cov);
  return es.eigenvectors() *
         es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

std::string strategy_label(const DirectionStrategy& s) {
  switch (s.kind) {
    case DirectionStrategy::Kind::Exact2D:
      return "exact2d";
    case DirectionStrategy::Kind::RandomSphere:
      return "random-sphere(" + std::to_string(s.count) + ")";
    case DirectionStrategy::Kind::DataDriven:
      return "data-driven(" + std::to_string(s.cap) + ")";
    case DirectionStrategy::Kind::Hybrid:
      return "data-driven(" + std::to_string(s.cap) + ")+random(" +
             std::to_string(s.count) + ")";
  }
  return "unknown";
}

double slots_emse(const std::vector<Vec>& est, const std::vector<char>& ok,
                  const Vec& theta, int* failures) {
  std::vector<double> sq;
  sq.reserve(est.size());
  for (size_t r = 0; r < est.size(); ++r)
    if (ok[r]) sq.push_back((est[r] - theta).squaredNorm());
  *failures = static_cast<int>(est.size() - sq.size());
  if (sq.empty()) return kNaN;
  return pairwise_sum(sq) / static_cast<double>(sq.size());
}

}  // namespace

ModelSpec ModelSpec::standard_normal(int d) {
  ModelSpec m;
  m.d = d;
  m.components.push_back({1.0, Vec::Zero(d), Mat::Identity(d, d)});
  return m;
}

ModelSpec ModelSpec::contaminated(double eps, double mu, double sd, int d) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw Error("bad_argument", "contamination fraction must lie in [0, 1)",
                {{"eps", eps}});
  ModelSpec m;
  m.d = d;
  m.components.push_back({1.0 - eps, Vec::Zero(d), Mat::Identity(d, d)});
  m.components.push_back(
      {eps, Vec::Constant(d, mu), sd * sd * Mat::Identity(d, d)});
  return m;
}

void ModelSpec::validate() const {
  if (d < 1)
    throw Error("bad_model", "dimension must be positive",
                {{"d", static_cast<double>(d)}});
  if (components.empty())
    throw Error("bad_model", "at least one mixture component is required");
  double wsum = 0.0;
  for (size_t j = 0; j < components.size(); ++j) {
    const MixtureComponent& c = components[j];
    if (!(c.weight >= 0.0))
      throw Error("bad_model", "component weights must be nonnegative",
                  {{"component", static_cast<double>(j)}, {"weight", c.weight}});
    wsum += c.weight;
    if (c.mean.size() != d)
      throw Error("bad_model", "component mean has the wrong dimension",
                  {{"component", static_cast<double>(j)},
                   {"mean_dim", static_cast<double>(c.mean.size())},
                   {"d", static_cast<double>(d)}});
    if (c.cov.rows() != d || c.cov.cols() != d)
      throw Error("bad_model", "component covariance has the wrong shape",
                  {{"component", static_cast<double>(j)}});
    if (!c.cov.isApprox(c.cov.transpose(), 1e-10))
      throw Error("bad_model", "component covariance is not symmetric",
                  {{"component", static_cast<double>(j)}});
    Eigen::SelfAdjointEigenSolver<Mat> es(c.cov);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw Error("bad_model", "component covariance is not positive definite",
                  {{"component", static_cast<double>(j)},
                   {"min_eigenvalue", es.eigenvalues().minCoeff()}});
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw Error("bad_model", "mixture weights must sum to 1",
                {{"weight_sum", wsum}});
}

PointCloud sample(const ModelSpec& model, int n, std::uint64_t seed) {
  model.validate();
  if (n < 1)
    throw Error("bad_argument", "need at least one point",
                {{"n", static_cast<double>(n)}});
  const int d = model.d;
  const size_t k = model.components.size();

  // Fixed-count assignment: floor(weight * n) per later component, remainder
  // to the first, laid out in contiguous blocks.
  std::vector<int> counts(k, 0);
  int rest = n;
  for (size_t j = 1; j < k; ++j) {
    counts[j] = static_cast<int>(std::floor(model.components[j].weight * n));
    rest -= counts[j];
  }
  counts[0] = rest;

  std::vector<Mat> roots;
  roots.reserve(k);
  for (const MixtureComponent& c : model.components) roots.push_back(cov_sqrt(c.cov));

  CounterRng rng(seed, 0x5A17ULL);
  Mat pts(n, d);
  int i = 0;
  for (size_t j = 0; j < k; ++j) {
    for (int t = 0; t < counts[j]; ++t, ++i) {
      const Vec g = rng.normal_vec(static_cast<std::uint64_t>(i) * d, d);
      pts.row(i) = (model.components[j].mean + roots[j] * g).transpose();
    }
  }
  return PointCloud(std::move(pts));
}

double emse(const std::vector<Vec>& estimates, const Vec& theta) {
  if (estimates.empty())
    throw Error("bad_argument", "no estimates to average");
  std::vector<double> sq;
  sq.reserve(estimates.size());
  for (const Vec& t : estimates) {
    if (t.size() != theta.size())
      throw Error("dim_mismatch", "estimate dimension does not match theta",
                  {{"estimate_dim", static_cast<double>(t.size())},
                   {"theta_dim", static_cast<double>(theta.size())}});
    sq.push_back((t - theta).squaredNorm());
  }
  return pairwise_sum(sq) / static_cast<double>(sq.size());
}

std::string EstimatorConfig::label() const {
  char buf[64];
  switch (kind) {
    case EstimatorKind::Mean:
      return "mean";
    case EstimatorKind::Ptm: {
      std::string s = "ptm(";
      if (alpha_auto) {
        s += "auto";
      } else {
        std::snprintf(buf, sizeof buf, "%g", alpha);
        s += buf;
      }
      if (weight.kind == WeightSpec::Kind::Power) {
        std::snprintf(buf, sizeof buf, ",power=%g", weight.p);
        s += buf;
      }
      return s + ")";
    }
    case EstimatorKind::StahelDonoho:
      return "stahel-donoho";
    case EstimatorKind::ProjectionMedian:
      return "projection-median";
    case EstimatorKind::HalfspaceMedian:
      return "halfspace-median";
  }
  return "unknown";
}

EmseReport run_study(const StudyConfig& config) {
  config.model.validate();
  if (config.n_list.empty())
    throw Error("bad_argument", "n_list must not be empty");
  if (config.m < 1)
    throw Error("bad_argument", "need at least one replicate",
                {{"m", static_cast<double>(config.m)}});
  if (config.estimators.empty())
    throw Error("bad_argument", "no estimators configured");
  for (const EstimatorConfig& e : config.estimators)
    if (e.kind == EstimatorKind::Ptm && !e.alpha_auto &&
        !(e.alpha > 0.0 && e.alpha < 1.0))
      throw Error("bad_argument", "trimming level must lie in (0, 1)",
                  {{"alpha", e.alpha}});

  const int d = config.model.d;
  const int m = config.m;
  const size_t ne = config.estimators.size();
  const Vec theta = Vec::Zero(d);  // the studies estimate a known center
  const LocationScalePair pair = LocationScalePair::medmad_default(d);

  bool needs_depth = false;
  for (const EstimatorConfig& e : config.estimators)
    needs_depth |= e.kind == EstimatorKind::Ptm ||
                   e.kind == EstimatorKind::StahelDonoho ||
                   e.kind == EstimatorKind::ProjectionMedian;

  EmseReport report;
  report.config = config;
  report.theta = theta;

  for (const int n : config.n_list) {
    if (n < d + 1)
      throw Error("bad_argument", "sample size too small for the dimension",
                  {{"n", static_cast<double>(n)}, {"d", static_cast<double>(d)}});
    StudyRow row;
    row.n = n;
    row.m = m;
    row.depth_method =
        strategy_label(DirectionStrategy::auto_for(n, d, pair, 0));

    std::vector<Vec> mean_est(m, Vec::Zero(d));
    std::vector<std::vector<Vec>> est(ne, std::vector<Vec>(m, Vec::Zero(d)));
    std::vector<std::vector<char>> ok(ne, std::vector<char>(m, 0));

    parallel_for(m, config.threads, [&](int r) {
      const std::uint64_t rs = replicate_seed(config.seed, n, r);
      const PointCloud data = sample(config.model, n, rs);
      mean_est[r] = data.pts.colwise().mean().transpose();

      std::optional<DepthEvaluator> shared_ev;
      if (needs_depth) {
        try {
          shared_ev.emplace(data, pair,
                            DirectionStrategy::auto_for(n, d, pair, rs));
        } catch (const std::exception&) {
          // depth-based estimators fail this replicate
        }
      }
      const DepthEvaluator* evp = shared_ev ? &*shared_ev : nullptr;

      for (size_t e = 0; e < ne; ++e) {
        const EstimatorConfig& cfg = config.estimators[e];
        try {
          switch (cfg.kind) {
            case EstimatorKind::Mean:
              est[e][r] = mean_est[r];
              break;
            case EstimatorKind::Ptm: {
              if (!evp) throw Error("depth_unavailable", "no depth table");
              TrimSpec spec;
              spec.weight = cfg.weight;
              spec.alpha = cfg.alpha;
              if (cfg.alpha_auto)
                spec.alpha = std::min(0.1, 0.9 * alpha_d(data, 4096, rs).alpha_d);
              est[e][r] = ptm(*evp, spec).estimate;
              break;
            }
            case EstimatorKind::StahelDonoho:
              if (!evp) throw Error("depth_unavailable", "no depth table");
              est[e][r] = stahel_donoho(*evp);
              break;
            case EstimatorKind::ProjectionMedian:
              if (!evp) throw Error("depth_unavailable", "no depth table");
              est[e][r] = projection_median(*evp).center;
              break;
            case EstimatorKind::HalfspaceMedian:
              est[e][r] = halfspace_median(data).center;
              break;
          }
          ok[e][r] = 1;
        } catch (const std::exception&) {
          ok[e][r] = 0;
        }
      }
    });

    int mean_failures = 0;
    const std::vector<char> all_ok(m, 1);
    const double baseline = slots_emse(mean_est, all_ok, theta, &mean_failures);

    for (size_t e = 0; e < ne; ++e) {
      EstimatorRow er;
      er.label = config.estimators[e].label();
      if (config.estimators[e].kind == EstimatorKind::Mean) {
        er.emse = baseline;
        er.re = 1.0;
        er.failures = 0;
      } else {
        er.emse = slots_emse(est[e], ok[e], theta, &er.failures);
        er.re = er.emse > 0.0 ? baseline / er.emse
                              : std::numeric_limits<double>::infinity();
      }
      er.flagged = static_cast<long long>(er.failures) * 100 > m;
      row.estimators.push_back(std::move(er));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<RadiusConsistencyRow> radius_consistency_study(
    double alpha, const std::vector<int>& n_list, int reps, std::uint64_t seed,
    int angles) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("bad_argument", "level must lie in (0, 1)", {{"alpha", alpha}});
  if (reps < 1 || angles < 4)
    throw Error("bad_argument", "need at least one replicate and four angles",
                {{"reps", static_cast<double>(reps)},
                 {"angles", static_cast<double>(angles)}});

  const ModelSpec model = ModelSpec::standard_normal(2);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  // Population radius of the level set under N_2(0, I): the outlyingness of x
  // is |x| / Phi^{-1}(3/4), so depth alpha is hit at beta * Phi^{-1}(3/4).
  const double target = (1.0 - alpha) / alpha * normal_mad_constant();

  std::vector<RadiusConsistencyRow> rows;
  for (const int n : n_list) {
    RadiusConsistencyRow row;
    row.n = n;
    row.reps = reps;
    std::vector<double> sups(reps, kNaN);
    std::vector<char> bad(reps, 0);
    parallel_for(reps, 0, [&](int rep) {
      const std::uint64_t rs =
          CounterRng(seed, static_cast<std::uint64_t>(n) * 1000003ULL +
                               static_cast<std::uint64_t>(rep))
              .bits(0);
      const PointCloud data = sample(model, n, rs);
      const DepthEvaluator ev(data, pair,
                              DirectionStrategy::auto_for(n, 2, pair, rs));
      const CenterEstimate center = projection_median(ev);
      if (center.depth < alpha) {  // sample cannot support the level
        bad[rep] = 1;
        return;
      }
      double sup = 0.0;
      for (int j = 0; j < angles; ++j) {
        const double t = 2.0 * std::numbers::pi * j / angles;
        Vec u(2);
        u << std::cos(t), std::sin(t);
        const double r = directional_radius(ev, center.center, u, alpha);
        sup = std::max(sup, std::abs(r - target));
      }
      sups[rep] = sup;
    });
    std::vector<double> good;
    good.reserve(reps);
    for (int rep = 0; rep < reps; ++rep) {
      if (bad[rep])
        ++row.invalid;
      else
        good.push_back(sups[rep]);
    }
    row.valid = row.invalid == 0;
    row.median_sup_err = good.empty() ? kNaN : med_k(good, 1);
    rows.push_back(row);
  }
  return rows;
}

NormalityStudy normality_study(double alpha, int n, int m, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("bad_argument", "level must lie in (0, 1)", {{"alpha", alpha}});
  if (n < 3 || m < 2)
    throw Error("bad_argument", "need n >= 3 and m >= 2",
                {{"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}});

  const ModelSpec model = ModelSpec::standard_normal(2);
  const LocationScalePair pair = LocationScalePair::medmad_default(2);
  NormalityStudy out;
  out.alpha = alpha;
  out.n = n;
  out.m = m;
  out.estimates = Mat::Constant(m, 2, kNaN);

  std::vector<char> ok(m, 0);
  parallel_for(m, 0, [&](int r) {
    const std::uint64_t rs = replicate_seed(seed, n, r);
    const PointCloud data = sample(model, n, rs);
    try {
      const DepthEvaluator ev(data, pair,
                              DirectionStrategy::auto_for(n, 2, pair, rs));
      TrimSpec spec;
      spec.alpha = alpha;
      out.estimates.row(r) = ptm(ev, spec).estimate.transpose();
      ok[r] = 1;
    } catch (const std::exception&) {
      ok[r] = 0;
    }
  });

  out.mean = Vec::Zero(2);
  out.variance = Vec::Zero(2);
  out.skewness = Vec::Zero(2);
  out.kurtosis = Vec::Zero(2);
  std::vector<double> col;
  col.reserve(m);
  for (int c = 0; c < 2; ++c) {
    col.clear();
    for (int r = 0; r < m; ++r)
      if (ok[r]) col.push_back(out.estimates(r, c));
    const int mok = static_cast<int>(col.size());
    if (c == 0) out.failures = m - mok;
    if (mok < 2) {
      out.mean[c] = out.variance[c] = out.skewness[c] = out.kurtosis[c] = kNaN;
      continue;
    }
    const double mu = pairwise_sum(col) / mok;
    std::vector<double> p2(mok), p3(mok), p4(mok);
    for (int i = 0; i < mok; ++i) {
      const double dlt = col[i] - mu;
      p2[i] = dlt * dlt;
      p3[i] = p2[i] * dlt;
      p4[i] = p2[i] * p2[i];
    }
    const double m2 = pairwise_sum(p2) / mok;
    const double m3 = pairwise_sum(p3) / mok;
    const double m4 = pairwise_sum(p4) / mok;
    out.mean[c] = mu;
    out.variance[c] = n * (pairwise_sum(p2) / (mok - 1));
    out.skewness[c] = m3 / std::pow(m2, 1.5);
    out.kurtosis[c] = m4 / (m2 * m2) - 3.0;
  }
  return out;
}

}  // namespace ptm
