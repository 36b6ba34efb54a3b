#pragma once

namespace ptm {

// Standard normal density, CDF, and quantile (Wichura's PPND16 algorithm,
// accurate to ~1e-15 over (0,1)).
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Chi-square CDF with d degrees of freedom.
double chi2_cdf(double x, int d);

// Density of the chi distribution (norm of a d-variate standard normal).
double chi_pdf(double r, int d);

// Median of |Z| for Z standard normal: Phi^{-1}(3/4).
double normal_mad_constant();

}  // namespace ptm
