#include "ptm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ptm/distributions.hpp"
#include "ptm/rng.hpp"

namespace ptm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sign0(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

double med3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error("bad_alpha", "alpha must lie in (0,1)");
}

void check_unit(const Vec& u) {
  if (std::abs(u.norm() - 1.0) > 1e-10)
    throw Error("bad_direction", "direction must be a unit vector");
}

void check_dims(const EllipticalModel& model, const Vec& x, const Vec& u) {
  if (x.size() != model.dim() || u.size() != model.dim())
    throw Error("dim_mismatch", "point/direction dimension differs from the model",
                {{"model_dim", std::to_string(model.dim())},
                 {"x_dim", std::to_string(x.size())},
                 {"u_dim", std::to_string(u.size())}});
}

// ||Sigma^{-1/2} u||
double inv_half_norm(const EllipticalModel& m, const Vec& u) {
  return (m.sigma_inv_half * u).norm();
}

// sqrt(u' Sigma u): scale of the projection onto u
double proj_scale(const EllipticalModel& m, const Vec& u) {
  return std::sqrt(u.dot(m.sigma * u));
}

// z-unit of the pair: the projected scale per sqrt(u' Sigma u)
double pair_unit(const EllipticalModel& m, const LocationScalePair& pair) {
  return pair.kind == PairKind::MedMad ? m.z.m0 : m.z.sigma_z;
}

// Composite Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(double a, double b, int n, F f) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Surface area of the unit sphere in R^d.
double sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// Mean |u_1| over the unit sphere in R^d.
double mean_abs_coord(int d) {
  if (d == 1) return 1.0;
  return std::tgamma(0.5 * d) / (std::sqrt(kPi) * std::tgamma(0.5 * (d + 1)));
}

}  // namespace

ZSpec ZSpec::standard_normal() {
  ZSpec z;
  z.m0 = normal_mad_constant();
  z.h0 = normal_pdf(0.0);
  z.hm0 = normal_pdf(z.m0);
  z.sigma_z = 1.0;
  z.standard = true;
  return z;
}

ZSpec ZSpec::custom(double h0, double hm0, double m0, double sigma_z) {
  if (!(h0 > 0.0) || !(hm0 > 0.0) || !(m0 > 0.0) || !(sigma_z > 0.0))
    throw Error("bad_argument", "all scalar-law constants must be positive");
  ZSpec z;
  z.h0 = h0;
  z.hm0 = hm0;
  z.m0 = m0;
  z.sigma_z = sigma_z;
  z.standard = false;
  return z;
}

EllipticalModel::EllipticalModel(Vec theta_, Mat sigma_, ZSpec z_)
    : theta(std::move(theta_)), sigma(std::move(sigma_)), z(z_) {
  const int d = static_cast<int>(theta.size());
  if (d < 1) throw Error("bad_argument", "model dimension must be >= 1");
  if (sigma.rows() != d || sigma.cols() != d)
    throw Error("bad_argument", "scatter matrix shape differs from the location");
  if (!sigma.isApprox(sigma.transpose(), 1e-10))
    throw Error("not_spd", "scatter matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma);
  if (es.info() != Eigen::Success)
    throw Error("not_spd", "scatter eigendecomposition failed");
  const Vec lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0)
    throw Error("not_spd", "scatter matrix must be positive definite",
                {{"min_eigenvalue", std::to_string(lam.minCoeff())}});
  const Mat& V = es.eigenvectors();
  sigma_half = V * lam.cwiseSqrt().asDiagonal() * V.transpose();
  sigma_inv_half = V * lam.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose();
  sigma_inv = V * lam.cwiseInverse().asDiagonal() * V.transpose();
  det_sigma = lam.prod();
}

EllipticalModel EllipticalModel::standard(int d) {
  return EllipticalModel(Vec::Zero(d), Mat::Identity(d, d));
}

IfConstants if_constants(const EllipticalModel& model, double alpha,
                         const LocationScalePair& pair, const WeightSpec& weight) {
  check_alpha(alpha);
  const int d = model.dim();
  IfConstants k;
  k.alpha = alpha;
  k.beta = (1.0 - alpha) / alpha;
  const double unit = pair_unit(model, pair);
  k.c = k.beta * unit;
  if (weight.kind == WeightSpec::Kind::ConstantOne) {
    k.c0 = chi2_cdf(k.c * k.c, d);
    k.c1 = 0.0;
    return k;
  }
  // Kept weighted mass: radial integral of w(depth) against the chi_d law.
  k.c0 = simpson(0.0, k.c, 4096, [&](double s) {
    return weight(1.0 / (1.0 + s / unit)) * chi_pdf(s, d);
  });
  // Interior gradient constant (spherical reduction, median/MAD path): the
  // weight-gradient term of the influence function equals c1 * x/||x|| / c0.
  if (pair.kind == PairKind::MedMad) {
    const double cd = mean_abs_coord(d);
    const double h0 = model.z.h0;
    k.c1 = simpson(0.0, k.c, 4096, [&](double s) {
      const double dep = 1.0 / (1.0 + s / unit);
      return s * cd * weight.derivative(dep) * chi_pdf(s, d) /
             (2.0 * h0 * unit * (1.0 + s / unit) * (1.0 + s / unit));
    });
  }
  return k;
}

double radius_at_model(const Vec& u, const EllipticalModel& model, double alpha,
                       const LocationScalePair& pair) {
  check_alpha(alpha);
  check_unit(u);
  check_dims(model, u, u);
  const double beta = (1.0 - alpha) / alpha;
  return beta * pair_unit(model, pair) / inv_half_norm(model, u);
}

double if_radius(const Vec& x, const Vec& u, double alpha,
                 const EllipticalModel& model, const LocationScalePair& pair) {
  check_alpha(alpha);
  check_unit(u);
  check_dims(model, x, u);
  const double beta = (1.0 - alpha) / alpha;
  const Vec xc = x - model.theta;
  const double t = u.dot(model.sigma_inv * xc);
  const double s = inv_half_norm(model, u);
  if (pair.kind == PairKind::MeanSd) {
    const double sz = model.z.sigma_z;
    return ((1.0 - alpha) * (t * t - s * s * sz * sz) / (2.0 * alpha * s * sz) + t) /
           u.dot(model.sigma_inv * u);
  }
  const double thr = s * model.z.m0;
  if (!xc.isZero(0.0) && (t == 0.0 || std::abs(t) == thr))
    throw Error("if_undefined_on_exclusion_set",
                "the radius influence jumps exactly here; move the probe off "
                "the zero/threshold projection",
                {{"projection", std::to_string(t)},
                 {"threshold", std::to_string(thr)}});
  return (beta * sign0(std::abs(t) - thr) / (4.0 * model.z.hm0) +
          sign0(t) / (2.0 * model.z.h0)) /
         s;
}

ContaminatedFunctionals contaminated_functionals(const Vec& u, double eps,
                                                 const Vec& x,
                                                 const EllipticalModel& model) {
  check_unit(u);
  check_dims(model, x, u);
  if (!(eps > 0.0 && eps < 0.5))
    throw Error("bad_argument", "contamination mass must lie in (0, 1/2)",
                {{"eps", std::to_string(eps)}});
  if (!model.z.standard)
    throw Error("unsupported_model",
                "the contamination oracle needs the standard-normal scalar law");
  const double sc = proj_scale(model, u);
  const double proj = u.dot(x - model.theta);
  const double a = (1.0 - 2.0 * eps) / (2.0 * (1.0 - eps));
  const double b = 1.0 / (2.0 * (1.0 - eps));

  ContaminatedFunctionals out;
  const double mu_c = med3(sc * normal_quantile(a), proj, sc * normal_quantile(b));

  // Quantile of |Z - mu/sc| for standard-normal Z, by bisection.
  const double ctilde = mu_c / sc;
  auto folded_quantile = [&](double p) {
    auto cdf = [&](double t) {
      return normal_cdf(ctilde + t) - normal_cdf(ctilde - t);
    };
    double lo = 0.0, hi = std::abs(ctilde) + 9.0;
    while (cdf(hi) < p) hi *= 2.0;
    for (int it = 0; it < 160; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  out.sigma = med3(sc * folded_quantile(a), std::abs(proj - mu_c),
                   sc * folded_quantile(b));
  out.mu = mu_c + u.dot(model.theta);
  return out;
}

double contaminated_radius(const Vec& u, double eps, const Vec& x,
                           const EllipticalModel& model, double alpha) {
  check_alpha(alpha);
  check_unit(u);
  const double beta = (1.0 - alpha) / alpha;
  Vec v = model.sigma_inv * u;
  v /= v.norm();
  const ContaminatedFunctionals cf = contaminated_functionals(v, eps, x, model);
  const double mu_centered = cf.mu - v.dot(model.theta);
  return (beta * cf.sigma + mu_centered) / u.dot(v);
}

double jacobian(const Vec& u, double r, int d) {
  if (!(r > 0.0)) throw Error("bad_argument", "radius must be positive");
  if (u.size() != d)
    throw Error("dim_mismatch", "direction dimension differs from d");
  check_unit(u);
  double val = std::pow(r, d - 1);
  // Angular factor: sin^{d-1-j} of the j-th spherical angle, whose sine is a
  // ratio of consecutive tail norms of u.
  double prev = 1.0;
  for (int j = 1; j <= d - 2; ++j) {
    const double tail = u.tail(d - j).norm();
    val *= std::pow(tail / prev, d - 1 - j);
    prev = tail;
  }
  return val;
}

ScoreValues score_functions(const Vec& x, const Vec& u,
                            const EllipticalModel& model, double alpha) {
  check_alpha(alpha);
  check_unit(u);
  check_dims(model, x, u);
  const double beta = (1.0 - alpha) / alpha;
  const Vec xc = x - model.theta;
  const auto f1_at = [&](const Vec& w) {
    const double sc = proj_scale(model, w);
    return sc * (0.5 - (w.dot(xc) <= 0.0 ? 1.0 : 0.0)) / model.z.h0;
  };
  const auto f2_at = [&](const Vec& w) {
    const double sc = proj_scale(model, w);
    const double inside = std::abs(w.dot(xc)) <= sc * model.z.m0 ? 1.0 : 0.0;
    return sc * (0.5 - inside) / (2.0 * model.z.hm0);
  };
  ScoreValues out;
  out.f1 = f1_at(u);
  out.f2 = f2_at(u);
  Vec v = model.sigma_inv * u;
  v /= v.norm();
  out.k = (beta * f2_at(v) + f1_at(v)) / u.dot(v);
  return out;
}

Vec if_ptm(const Vec& x, double alpha, const EllipticalModel& model,
           const WeightSpec& weight, const LocationScalePair& pair,
           const IfPtmOptions& opts) {
  check_alpha(alpha);
  const int d = model.dim();
  if (x.size() != d)
    throw Error("dim_mismatch", "point dimension differs from the model");
  if (opts.nodes < 64)
    throw Error("bad_argument", "need at least 64 boundary quadrature nodes");
  if (weight.kind == WeightSpec::Kind::Power && weight.p < 1.0)
    throw Error("bad_weight", "power weight exponent must be >= 1");

  const double beta = (1.0 - alpha) / alpha;
  const double unit = pair_unit(model, pair);
  const double c = beta * unit;  // region radius in z-units
  const double c0 = if_constants(model, alpha, pair, weight).c0;
  const Vec xc = x - model.theta;
  const Vec xz = model.sigma_inv_half * xc;

  // Direct point term: the probe's own weighted pull while it stays kept.
  Vec l3 = Vec::Zero(d);
  if (xz.norm() <= c) {
    const double dep = 1.0 / (1.0 + xz.norm() / unit);
    l3 = xc * (weight(dep) / c0);
  }

  // Boundary term: region-edge movement induced by the contamination,
  // integrated over directions. The boundary density is constant on the
  // depth contour of the Gaussian elliptical model.
  const double gh = std::exp(-0.5 * c * c) * std::pow(2.0 * kPi, -0.5 * d) /
                    std::sqrt(model.det_sigma);
  Vec l1 = Vec::Zero(d);
  const double w_alpha = weight(alpha);
  if (d == 1) {
    for (const double s : {1.0, -1.0}) {
      const Vec u = Vec::Constant(1, s);
      const double r = c / inv_half_norm(model, u);
      try {
        l1 += r * u * gh * if_radius(x, u, alpha, model, pair);
      } catch (const Error&) {
      }
    }
    l1 *= w_alpha / c0;
  } else if (d == 2) {
    const int n = opts.nodes;
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * j / n;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      const double r = c / inv_half_norm(model, u);
      try {
        l1 += u * (r * r * if_radius(x, u, alpha, model, pair));
      } catch (const Error&) {
      }
    }
    l1 *= gh * (2.0 * kPi / n) * w_alpha / c0;
  } else {
    if (opts.directions < 16)
      throw Error("bad_argument", "need at least 16 sampled boundary directions");
    const CounterRng rng(opts.seed, 0xD14ULL);
    Vec acc = Vec::Zero(d);
    for (int l = 0; l < opts.directions; ++l) {
      Vec u = rng.normal_vec(static_cast<std::uint64_t>(l) * d, d);
      const double nrm = u.norm();
      if (nrm < 1e-12) continue;
      u /= nrm;
      const double r = c / inv_half_norm(model, u);
      try {
        acc += u * (std::pow(r, d) * if_radius(x, u, alpha, model, pair));
      } catch (const Error&) {
      }
    }
    l1 = acc * (gh * sphere_area(d) / opts.directions) * (w_alpha / c0);
  }

  // Interior weight-gradient term, zero for constant weights. Monte Carlo
  // over the model restricted to the region, with antithetic pairs so the
  // scale part cancels exactly and the result is exactly odd in x.
  Vec l2 = Vec::Zero(d);
  if (weight.kind == WeightSpec::Kind::Power) {
    const CounterRng rng(opts.seed, 0x12EULL);
    const long long pairs = std::max<long long>(1, opts.draws / 2);
    Vec acc = Vec::Zero(d);
    for (long long i = 0; i < pairs; ++i) {
      const Vec g = rng.normal_vec(static_cast<std::uint64_t>(i) * d, d);
      const double rz = g.norm();
      if (rz > c) continue;
      const Vec y = model.sigma_half * g;
      const double o = rz / unit;
      Vec v = model.sigma_inv * y;
      v /= v.norm();
      const double t = v.dot(xc);
      const double scv = proj_scale(model, v);
      double if_mu, sig_v;
      if (pair.kind == PairKind::MedMad) {
        if_mu = scv * sign0(t) / (2.0 * model.z.h0);
        sig_v = scv * model.z.m0;
      } else {
        if_mu = t;
        sig_v = scv * model.z.sigma_z;
      }
      // pair sum over (g, -g): the location part doubles, the scale part cancels
      const double dep = 1.0 / (1.0 + o);
      acc += y * (weight.derivative(dep) * 2.0 * if_mu /
                  (sig_v * (1.0 + o) * (1.0 + o)));
    }
    l2 = acc / (2.0 * static_cast<double>(pairs) * c0);
  }

  return l1 + l2 + l3;
}

double GreReport::value() const { return divergent ? kInf : sup; }

GreReport gre(const std::function<Vec(const Vec&)>& if_eval, int d,
              const GreGrid& grid) {
  if (d < 1) throw Error("bad_argument", "dimension must be >= 1");
  if (grid.directions < 1)
    throw Error("bad_argument", "need at least one probe direction");
  std::vector<Vec> dirs;
  if (d == 1) {
    dirs = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
  } else if (d == 2) {
    for (int j = 0; j < grid.directions; ++j) {
      const double th = 2.0 * kPi * (j + 0.5) / grid.directions;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(u);
    }
  } else {
    const CounterRng rng(grid.seed, 0x93EULL);
    for (int j = 0; j < grid.directions; ++j) {
      Vec u = rng.normal_vec(static_cast<std::uint64_t>(j) * d, d);
      const double nrm = u.norm();
      if (nrm < 1e-12) continue;
      dirs.push_back(u / nrm);
    }
  }
  const auto sup_at = [&](double r) {
    double s = 0.0;
    for (const Vec& u : dirs) {
      try {
        s = std::max(s, if_eval(r * u).norm());
      } catch (const Error&) {
        // influence undefined exactly on its jump set; skip the probe
      }
    }
    return s;
  };
  GreReport rep;
  for (const double r : grid.radii) rep.sup = std::max(rep.sup, sup_at(r));
  const double s100 = sup_at(100.0), s200 = sup_at(200.0);
  const double s1000 = sup_at(1000.0), s2000 = sup_at(2000.0);
  rep.sup = std::max({rep.sup, s100, s200, s1000, s2000});
  rep.divergent = s200 > 1.5 * s100 && s2000 > 1.5 * s1000;
  return rep;
}

AsyVariance asy_variance(double alpha, int d, const AsyOptions& opts) {
  check_alpha(alpha);
  if (d < 1) throw Error("bad_argument", "dimension must be >= 1");
  if (opts.draws < 2) throw Error("bad_argument", "need at least 2 draws");
  if (d == 2 && (opts.nodes < 64 || opts.nodes % 2 != 0))
    throw Error("bad_argument", "need an even circle node count >= 64");
  if (d >= 3 && opts.directions < 16)
    throw Error("bad_argument", "need at least 16 sphere directions");

  const ZSpec z = ZSpec::standard_normal();
  const double beta = (1.0 - alpha) / alpha;
  const double c = beta * z.m0, c2 = c * c, m0 = z.m0;
  const double ka = beta / (4.0 * z.hm0);  // scale-score amplitude
  const double kb = 1.0 / (2.0 * z.h0);    // location-score amplitude

  AsyVariance out;
  out.nodes = d == 2 ? opts.nodes : 0;
  const double kept = chi2_cdf(c2, d);
  out.a = kept * kept;

  const long long evals = (opts.draws + 1) / 2;
  out.draws = 2 * evals;
  const CounterRng rng(opts.seed, 0xA51ULL);

  // One antithetic pair (X, -X) per evaluation: the expansion is exactly odd,
  // so each squared value counts for both draws.
  double sum = 0.0, sumsq = 0.0;
  double bsum = 0.0, bsumsq = 0.0;  // block accumulators
  long long in_block = 0;
  const auto flush = [&] {
    sum += bsum;
    sumsq += bsumsq;
    bsum = bsumsq = 0.0;
    in_block = 0;
  };
  const auto push = [&](double t) {
    const double t2 = t * t;
    bsum += t2;
    bsumsq += t2 * t2;
    if (++in_block == 65536) flush();
  };

  if (d == 2) {
    const int n = opts.nodes;
    const double g2 = std::exp(-0.5 * c2) / (2.0 * kPi);
    std::vector<double> cx(n), sx(n), wc(n);
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * j / n;
      cx[j] = std::cos(th);
      sx[j] = std::sin(th);
      wc[j] = (2.0 * kPi / n) * c2 * g2 * cx[j];
    }
    const double* pcx = cx.data();
    const double* psx = sx.data();
    const double* pwc = wc.data();
    for (long long i = 0; i < evals; ++i) {
      const double x1 = rng.normal(2 * static_cast<std::uint64_t>(i));
      const double x2 = rng.normal(2 * static_cast<std::uint64_t>(i) + 1);
      double acc = x1 * x1 + x2 * x2 <= c2 ? x1 : 0.0;
      for (int j = 0; j < n; ++j) {
        const double t = pcx[j] * x1 + psx[j] * x2;
        acc += pwc[j] * (std::copysign(ka, std::fabs(t) - m0) + std::copysign(kb, t));
      }
      push(acc);
    }
  } else if (d == 1) {
    const double edge = c * normal_pdf(c) / z.h0;  // the scale parts cancel
    for (long long i = 0; i < evals; ++i) {
      const double x1 = rng.normal(static_cast<std::uint64_t>(i));
      const double t = (std::fabs(x1) <= c ? x1 : 0.0) + edge * sign0(x1);
      push(t);
    }
  } else {
    const CounterRng drng(opts.seed, 0xD16ULL);
    const int nl = opts.directions;
    Mat dirs(nl, d);
    Vec u1(nl);
    for (int l = 0; l < nl; ++l) {
      Vec u = drng.normal_vec(static_cast<std::uint64_t>(l) * d, d);
      double nrm = u.norm();
      if (nrm < 1e-12) {
        u = Vec::Unit(d, 0);
        nrm = 1.0;
      }
      dirs.row(l) = (u / nrm).transpose();
      u1(l) = u(0) / nrm;
    }
    const double gd = std::exp(-0.5 * c2) * std::pow(2.0 * kPi, -0.5 * d);
    const double w = std::pow(c, d) * gd * sphere_area(d) / nl;
    Vec xv(d);
    for (long long i = 0; i < evals; ++i) {
      for (int j = 0; j < d; ++j)
        xv(j) = rng.normal(static_cast<std::uint64_t>(i) * d + j);
      double acc = xv.norm() <= c ? xv(0) : 0.0;
      const Vec proj = dirs * xv;
      for (int l = 0; l < nl; ++l)
        acc += w * u1(l) *
               (std::copysign(ka, std::fabs(proj(l)) - m0) +
                std::copysign(kb, proj(l)));
      push(acc);
    }
  }
  flush();

  const double n = static_cast<double>(evals);
  out.b = sum / n;
  out.se_b = std::sqrt(std::max(0.0, sumsq / n - out.b * out.b) / n);
  out.v = out.b / out.a;
  return out;
}

double are_vs_mean(double alpha, int d, const AsyOptions& opts) {
  const AsyVariance r = asy_variance(alpha, d, opts);
  return r.a / r.b;  // unit marginal variance at the spherical normal model
}

}  // namespace ptm
