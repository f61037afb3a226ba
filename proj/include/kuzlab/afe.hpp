#pragma once
// Smoothed approximate functional equations for central values:
// H_j(1/2) for Maass forms and |zeta(1/2+ir)|^2 on the critical line,
// plus the smoothed Moebius inversion of 1/zeta.

#include "kuzlab/core.hpp"
#include "kuzlab/dirichlet.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/forms.hpp"
#include "kuzlab/smoothing.hpp"

namespace kuzlab {

// number of Dirichlet coefficients the smoothed sum actually consumes:
// floor((1+delta) * Y) at Y = (1+delta) kappa^2 / (4 pi^2)
u64 afe_cutoff(real kappa, const SmoothingParams& p);

// H_j(1/2) ~ sum_n t(n) n^{-1/2} e^{-(n/Y)^h}, scale set by form.kappa
// and p.delta / p.C. The sum runs at full conductor length, so no dual
// sum and no root-number factor appear. Throws when the record is too
// shallow.
real afe_hecke_central(const MaassFormRecord& form, const SmoothingParams& p);

// same, plus the sharpness-doubling error estimate |result(h) - result(2h)|
std::pair<real, real> afe_hecke_central_with_estimate(const MaassFormRecord& form,
                                                      const SmoothingParams& p);

// |zeta(1/2+ir)|^2 ~ sum_n d_ir(n) n^{-1/2} e^{-(n/Y)^h} where the summand
// weight is d_ir(n) = sum_{d|n} cos(r log(d^2/n)). Requires r >= 15. The
// remainder carries oscillating pole contributions of size roughly
// exp(-pi r / (2 h)), negligible asymptotically but visible for r <= 100.
real afe_zeta_pair(real r, const SmoothingParams& p);
std::pair<real, real> afe_zeta_pair_with_estimate(real r, const SmoothingParams& p);

// smoothed 1/zeta(1+2it): sum_n mu(n) n^{-1-2it} e^{-(n/Y)^h}
cplx mobius_inv_zeta(real t, real Y, real h);

// square-support coefficients a(m) = mu(sqrt(m)) e^{-(sqrt(m)/Y)^h} for
// square m <= 4Y^2, used by moment main terms
DirichletPolynomial mobius_inv_poly(real Y, real h);

} // namespace kuzlab
