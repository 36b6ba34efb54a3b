#pragma once

#include <cstdint>
#include <functional>

#include "ptm/trim.hpp"
#include "ptm/types.hpp"
#include "ptm/univariate.hpp"

namespace ptm {

// Scalar reference law of the elliptical model, symmetric about zero. Only
// these four constants enter the closed-form influence expressions. The
// standard flag marks the law as N(0,1), which additionally makes quantiles
// available for the finite-contamination oracle.
struct ZSpec {
  double h0 = 0.0;       // density at 0
  double hm0 = 0.0;      // density at m0
  double m0 = 0.0;       // median absolute deviation
  double sigma_z = 1.0;  // standard deviation
  bool standard = false;

  static ZSpec standard_normal();
  static ZSpec custom(double h0, double hm0, double m0, double sigma_z);
};

// Location/scatter model: every projection u'(X - theta) is distributed as
// sqrt(u' sigma u) * Z. Square roots and inverses of the scatter are cached.
struct EllipticalModel {
  Vec theta;
  Mat sigma;
  ZSpec z;

  Mat sigma_inv;
  Mat sigma_half;
  Mat sigma_inv_half;
  double det_sigma = 1.0;

  EllipticalModel(Vec theta_, Mat sigma_, ZSpec z_ = ZSpec::standard_normal());
  static EllipticalModel standard(int d);
  int dim() const { return static_cast<int>(theta.size()); }
};

// Trimming constants at the model: the deviation cutoff beta, the region
// radius c in z-units, the kept weighted mass c0, and the interior
// weight-gradient constant c1 (zero for constant weights).
struct IfConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
};
IfConstants if_constants(const EllipticalModel& model, double alpha,
                         const LocationScalePair& pair,
                         const WeightSpec& weight = WeightSpec::constant_one());

// Directional radius of the depth-alpha region at the model.
double radius_at_model(const Vec& u, const EllipticalModel& model, double alpha,
                       const LocationScalePair& pair);

// Influence function of the directional radius at contamination point x.
// The median/MAD form is a bounded step function, undefined exactly on the
// measure-zero direction set where its jumps sit (an error is raised there);
// the mean/SD form is an unbounded quadratic.
double if_radius(const Vec& x, const Vec& u, double alpha,
                 const EllipticalModel& model, const LocationScalePair& pair);

// Median and MAD of the projection onto u after mixing an eps point mass at
// x into the model (standard-normal Z only). The basis of the
// finite-contamination oracle for if_radius.
struct ContaminatedFunctionals {
  double mu = 0.0;
  double sigma = 0.0;
};
ContaminatedFunctionals contaminated_functionals(const Vec& u, double eps,
                                                 const Vec& x,
                                                 const EllipticalModel& model);

// Directional radius under the eps-contaminated model with the witness
// direction frozen at its uncontaminated value; (R_eps - R)/eps converges to
// if_radius as eps -> 0.
double contaminated_radius(const Vec& u, double eps, const Vec& x,
                           const EllipticalModel& model, double alpha);

// Volume element of the polar map x = r*u: r^(d-1) times the angular factor
// determined by u's spherical angles (1 for d <= 2).
double jacobian(const Vec& u, double r, int d);

// First-order expansion scores of the projected median (f1) and MAD (f2),
// plus the directional-radius score k they induce. Boundary convention:
// the indicators include their boundary, so f1(0) < 0.
struct ScoreValues {
  double f1 = 0.0;
  double f2 = 0.0;
  double k = 0.0;
};
ScoreValues score_functions(const Vec& x, const Vec& u,
                            const EllipticalModel& model, double alpha);

// Influence function of the trimmed mean at the model: boundary term
// (quadrature over directions), interior weight-gradient term (Monte Carlo,
// zero for constant weights), and the direct point term.
struct IfPtmOptions {
  int nodes = 1024;           // boundary quadrature nodes (d = 2)
  int directions = 4096;      // sampled boundary directions for d >= 3
  long long draws = 200000;   // interior Monte Carlo draws (Power weights)
  std::uint64_t seed = 2026;
};
Vec if_ptm(const Vec& x, double alpha, const EllipticalModel& model,
           const WeightSpec& weight, const LocationScalePair& pair,
           const IfPtmOptions& opts = {});

// Gross-error sensitivity: sup of ||IF|| over a radial probe grid, with a
// divergence check comparing the sup at radius 2R against radius R for
// R in {100, 1000}; growth beyond 1.5x at both checkpoints flags +infinity.
struct GreGrid {
  std::vector<double> radii = {0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 50.0};
  int directions = 64;
  std::uint64_t seed = 11;
};
struct GreReport {
  double sup = 0.0;      // largest finite probe value seen
  bool divergent = false;
  double value() const;  // sup, or +infinity when divergent
};
GreReport gre(const std::function<Vec(const Vec&)>& if_eval, int d,
              const GreGrid& grid = {});

// Asymptotic per-coordinate variance of the trimmed mean at the spherical
// normal model (median/MAD, constant weight): a is the squared kept
// probability, b the second moment of the one-draw expansion, v = b/a.
struct AsyOptions {
  long long draws = 2000000;  // antithetic-counted Monte Carlo sample size
  int nodes = 2048;           // circle quadrature nodes (d = 2)
  int directions = 4096;      // sampled sphere directions (d >= 3)
  std::uint64_t seed = 17;
};
struct AsyVariance {
  double a = 0.0;
  double b = 0.0;
  double v = 0.0;
  double se_b = 0.0;  // Monte Carlo standard error of b
  long long draws = 0;
  int nodes = 0;
};
AsyVariance asy_variance(double alpha, int d, const AsyOptions& opts = {});

// Efficiency of the trimmed mean relative to the sample mean at N_d(0, I).
double are_vs_mean(double alpha, int d, const AsyOptions& opts = {});

}  // namespace ptm
