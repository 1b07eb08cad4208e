#pragma once

namespace trp {

// Standard normal density.
double normal_pdf(double x);

// Standard normal CDF, computed from erfc. Absolute error below 1e-15.
double normal_cdf(double x);

// Inverse standard normal CDF. Rational initial guess (Acklam) refined with
// one Halley step; monotonic, absolute error below 1e-13 on [1e-300, 1-1e-16].
// Inputs are clamped to [1e-16, 1 - 1e-16] before inversion.
double normal_quantile(double p);

}  // namespace trp
