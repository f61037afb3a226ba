#pragma once
// Special functions: complex log-gamma / gamma, Riemann zeta on the strip
// we actually use, and J-Bessel of purely imaginary order 2ir.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/quadrature.hpp"

namespace kuzlab {

// Principal branch log Gamma(z), valid on C minus the nonpositive reals.
// Relative accuracy ~1e-14 or better for |z| <= 1e3 (Lanczos + reflection).
cplx log_gamma(cplx z);

// Gamma(z); throws PoleAtNonpositiveInteger at z = 0, -1, -2, ...
cplx gamma_c(cplx z);

// zeta(s) by Euler-Maclaurin. Absolute error target 1e-10 on
// 0 <= Re s <= 2, |Im s| <= 1e4.  Throws PoleAtOne at s = 1, and
// OutOfValidatedRange beyond |Im s| = 1e4.  Other s values still return
// the E-M value (the series converges for Re s > -11 with our correction
// depth) but carry no accuracy promise.
cplx zeta_c(cplx s);

// chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s), the factor in the
// functional equation zeta(s) = chi(s) zeta(1-s).
cplx zeta_chi(cplx s);

// J_{2ir}(x) for real r, x > 0, by the ascending series.  Accurate for
// x <= 30 (beyond that cancellation eats long double); throws
// SeriesRegimeExceeded for larger x.
cplx bessel_j_imag_order(real r, real x);

// Im J_{2ir}(x) / cosh(pi r), computed without overflow for large r
// (the 1/Gamma and 1/cosh factors are folded together in log space).
real imj_over_cosh(real r, real x);

// J_{2ir}(x) - J_{-2ir}(x).  Purely imaginary; computed from the integral
//   -(2i/pi) sinh(pi r) * int_{-U}^{U} cos(x cosh u) cos(2ru) du
// plus the exact analytic continuation of the tail past U (contour
// rotation), so the value returned is the true difference, not the
// hard-truncated integral.  logK sets the window exponent: U is at least
// (logK)^2 and is raised further if x sinh U would be too small for the
// tail formula to converge.
cplx bessel_j_diff(real r, real x, real logK, const QuadratureConfig& quad);

} // namespace kuzlab
