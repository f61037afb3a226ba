#pragma once
// Spectral window functions and arithmetic smoothing kernels.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/quadrature.hpp"

namespace kuzlab {

enum class WeightKind { gaussian, averaged };

// Spectral window. Gaussian kind: center K, width G. Averaged kind: K is the
// lower plateau edge K0, K0_upper = 2*K0, and the function is ~1 on
// [K0, 2K0], ~0 outside, with erf shoulders of width G.
struct WeightSpec {
    WeightKind kind = WeightKind::gaussian;
    real K = 10;
    real G = 1;
    real K0_upper = 0;

    static WeightSpec gaussian_spec(real K, real G);
    static WeightSpec averaged_spec(real K0, real G);
    void validate() const;

    // [lo, hi]: interval outside which the weight on the positive axis is
    // below ~1e-30 (12 widths past the support)
    real window_lo() const;
    real window_hi() const;
};

// Full complex evaluation of the Gaussian weight
//   (r^2 + 1/4)/(r^2 + 1000) * [e^{-((r-K)/G)^2} + e^{-((r+K)/G)^2}],
// regular for |Im r| <= 1/2 and vanishing at r = i/2.
cplx gaussian_weight(cplx r, const WeightSpec& w);

// Averaged window: the K-average of the Gaussian hump over [K0, 2K0],
//   (1/2)[erf((2K0-r)/G) - erf((K0-r)/G)] + (r -> -r),
// in closed form. Approximates the indicator of [K0, 2K0]. The rational
// prefactor of the Gaussian kind is deliberately omitted here: it is an
// asymptotic device and would destroy the unit plateau at desk scale.
real averaged_weight(real r, const WeightSpec& w, const QuadratureConfig& quad);

// real-axis fast path, dispatching on kind
real weight_f(real r, const WeightSpec& w);

// Arithmetic smoothing: cutoff scale Y, sharpness h, and the defining
// parameters delta and C with h = C log K at spectral scale K.
struct SmoothingParams {
    real Y = 10;
    real h = 20;
    real delta = 0.1L;
    real C = 10;
    real A_target = 5;
};

// parameters tied to spectral scale kappa: Y = (1+delta) kappa^2/(4 pi^2),
// h = C log kappa
SmoothingParams smoothing_for(real kappa, real delta = 0.1L, real C = 10);

// e^{-(n/Y)^h}
real smooth_cutoff(u64 n, const SmoothingParams& p);

// |(1/2 pi i) int_(c) (Y/n)^w Gamma(1 + w/h) dw/w  -  smooth_cutoff(n)|
real mellin_inversion_check(u64 n, const SmoothingParams& p, real c,
                            const QuadratureConfig& quad);

} // namespace kuzlab
