#pragma once
#include <functional>

#include "hawkes/rng.hpp"

namespace hawkes {

// 1/Gamma(y); returns 0 at the poles y = 0, -1, -2, ...
double rgamma(double y);

// exp(y^2) * erfc(y), valid for all real y (overflows for y << -26).
double erfcx(double y);

// Two-parameter Mittag-Leffler function E_{alpha,kappa}(x) for real x,
// alpha in (0,1], kappa > 0.  Strategy: Taylor series with compensated
// summation for x >= -1 (and all positive x); for x < -1 an asymptotic
// expansion truncated at its smallest term when that bounds the error by
// 1e-12 relative, otherwise a real integral representation of the inverse
// Laplace type.  A naive Taylor sum loses ~|x|^(1/alpha)*log10(e) digits to
// cancellation for negative x, which is why the series is not used there.
double ml_function(double alpha, double kappa, double x);

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 45);

// Fixed 8-point Gauss-Legendre rule on [a, b].
double gauss_legendre_8(const std::function<double(double)>& f, double a, double b);

// Kanter's representation of the one-sided alpha-stable law with Laplace
// transform exp(-lambda^alpha):  X = (a(U)/E)^((1-alpha)/alpha) with
// U ~ Uniform(0, pi), E ~ Exp(1).
double kanter_a(double u, double alpha);
double sample_one_sided_stable(double alpha, RngStream& rng);

// P(X <= x) for the same law, via the exact mixture representation
// F(x) = (1/pi) Int_0^pi exp(-a(u) x^(-alpha/(1-alpha))) du.
double one_sided_stable_cdf(double alpha, double x);

}
