#include "kuzlab/special.hpp"

#include <cmath>

namespace kuzlab {

namespace {

// Lanczos, g = 7, 9 terms.  Good to ~1e-14 relative over the validated range.
const real lanczos_c[9] = {
    0.99999999999980993L,
    676.5203681218851L,
    -1259.1392167224028L,
    771.32342877765313L,
    -176.61502916214059L,
    12.507343278686905L,
    -0.13857109526572012L,
    9.9843695780195716e-6L,
    1.5056327351493116e-7L,
};

bool is_nonpositive_integer(cplx z) {
    if (z.imag() != 0) return false;
    real x = z.real();
    return x <= 0 && x == std::floor(x);
}

// log(sin(pi z)) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    if (std::abs(z.imag()) < 20) return std::log(std::sin(PI * z));
    if (z.imag() > 0) {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i), second factor O(1)
        cplx small = std::exp(cplx(0, 2 * PI) * z);
        return cplx(0, -PI) * z + std::log((small - cplx(1)) / cplx(0, 2));
    }
    cplx small = std::exp(cplx(0, -2 * PI) * z);
    return cplx(0, PI) * z + std::log((cplx(1) - small) / cplx(0, 2));
}

real log_cosh_pi(real r) {
    real a = std::abs(PI * r);
    if (a > 30) return a - std::log(2.0L) + std::log1p(std::exp(-2 * a));
    return std::log(std::cosh(a));
}

} // namespace

cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw PoleAtNonpositiveInteger("log_gamma at z = " +
                                       std::to_string(static_cast<double>(z.real())));
    if (z.real() < 0.5L) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(cplx(PI)) - log_sin_pi(z) - log_gamma(cplx(1) - z);
    }
    cplx zm = z - cplx(1);
    cplx a = lanczos_c[0];
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (zm + cplx(static_cast<real>(i)));
    cplx t = zm + cplx(7.5L);
    return 0.5L * std::log(2 * PI) + (zm + cplx(0.5L)) * std::log(t) - t + std::log(a);
}

cplx gamma_c(cplx z) {
    if (is_nonpositive_integer(z))
        throw PoleAtNonpositiveInteger("gamma at z = " +
                                       std::to_string(static_cast<double>(z.real())));
    return std::exp(log_gamma(z));
}

cplx zeta_c(cplx s) {
    if (s == cplx(1)) throw PoleAtOne("zeta(1)");
    if (std::abs(s.imag()) > 1e4L)
        throw OutOfValidatedRange("zeta: |Im s| > 1e4");

    const real t = std::abs(s.imag());
    const u64 N = std::max<u64>(24, static_cast<u64>(std::ceil(2.5L * t)));

    cplx sum = 0;
    for (u64 n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<real>(n)));
    const real lnN = std::log(static_cast<real>(N));
    const cplx Nms = std::exp(-s * lnN); // N^{-s}
    sum += 0.5L * Nms;
    sum += Nms * static_cast<real>(N) / (s - cplx(1)); // N^{1-s}/(s-1)

    // Euler-Maclaurin corrections B_2 .. B_12
    static const real coef[6] = {
        1.0L / 12,
        -1.0L / 720,
        1.0L / 30240,
        -1.0L / 1209600,
        1.0L / 47900160,
        -691.0L / 1307674368000.0L,
    };
    cplx poch = s;                          // (s)_1
    cplx npow = Nms / static_cast<real>(N); // N^{-s-1}
    const real invN2 = 1.0L / (static_cast<real>(N) * static_cast<real>(N));
    for (int k = 0; k < 6; ++k) {
        sum += coef[k] * poch * npow;
        const real base = static_cast<real>(2 * k + 1);
        poch *= (s + cplx(base)) * (s + cplx(base + 1));
        npow *= invN2;
    }
    return sum;
}

cplx zeta_chi(cplx s) {
    // chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s), assembled in log space
    cplx lg = log_gamma(cplx(1) - s);
    cplx ls = log_sin_pi(s / cplx(2));
    cplx lo = s * std::log(2.0L) + (s - cplx(1)) * std::log(PI) + ls + lg;
    return std::exp(lo);
}

namespace {

// shared ascending-series kernel; extra_log is subtracted from the k = 0
// exponent (used to fold 1/cosh(pi r) in without overflow)
cplx bessel_series(real r, real x, real extra_log) {
    if (!(x > 0)) throw SeriesRegimeExceeded("bessel series needs x > 0");
    if (x > 30)
        throw SeriesRegimeExceeded("bessel series limited to x <= 30, got x = " +
                                   std::to_string(static_cast<double>(x)));
    const cplx nu(0, 2 * r);
    cplx term = std::exp(nu * std::log(x / 2) - log_gamma(cplx(1) + nu) - cplx(extra_log));
    cplx sum = term;
    const real q = x * x / 4;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (cplx(static_cast<real>(k)) * (cplx(static_cast<real>(k)) + nu));
        sum += term;
        if (q / (static_cast<real>(k) * k) < 0.5L && std::abs(term) < 1e-18L * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace

cplx bessel_j_imag_order(real r, real x) { return bessel_series(r, x, 0); }

real imj_over_cosh(real r, real x) {
    return bessel_series(r, x, log_cosh_pi(r)).imag();
}

cplx bessel_j_diff(real r, real x, real logK, const QuadratureConfig& quad) {
    if (!(x > 0)) throw SeriesRegimeExceeded("bessel_j_diff needs x > 0");
    if (r == 0) return 0;
    const real ra = std::abs(r);

    // window: at least (logK)^2, and wide enough that the rotated tail
    // converges (x sinh U >= 6(|r|+1))
    real U = std::max(logK * logK, std::asinh(6 * (ra + 1) / x));

    auto head_f = [&](real u) { return std::cos(x * std::cosh(u)) * std::cos(2 * r * u); };
    FreqFn head_freq = [&](real u) {
        return (x * std::sinh(std::abs(u)) + 2 * ra) / TWO_PI;
    };
    const real head = integrate(head_f, 0, U, quad, head_freq);

    // tail past U via contour rotation of int_U^inf e^{i x cosh u} cos(2ru) du:
    // vertical segment u = U + it, t in (0, pi/2], then horizontal at
    // Im u = pi/2 where cosh(v + i pi/2) = i sinh v kills the oscillation.
    const real xs = x * std::sinh(U);
    real tcut = 58.0L / (1.82L * ra + 3.82L); // integrand below ~1e-25 past here
    tcut = std::min(tcut, PI / 2);
    auto vert_f = [&](real t) -> cplx {
        cplx u(U, t);
        cplx e = std::exp(cplx(0, x) * std::cosh(u));
        return cplx(0, 1) * e * std::cos(2 * r * u);
    };
    FreqFn vert_freq = [&](real t) { return x * std::cosh(U) * std::sin(t) / TWO_PI; };
    const cplx vert = integrate_c(vert_f, 0, tcut, quad, vert_freq);

    const real lcp = log_cosh_pi(r);
    real Vend = std::asinh((58.0L + lcp) / x);
    real horiz = 0;
    if (Vend > U) {
        auto horiz_f = [&](real v) {
            return std::exp(-x * std::sinh(v) + lcp) * std::cos(2 * r * v);
        };
        FreqFn horiz_freq = [&](real v) { return 2 * ra / TWO_PI; };
        horiz = integrate(horiz_f, U, Vend, quad, horiz_freq);
    }

    (void)xs;
    const real tail = vert.real() + horiz;
    // J_{2ir} - J_{-2ir} = -(4i/pi) sinh(pi r) int_0^inf cos(x cosh u) cos(2ru) du
    return cplx(0, -4 / PI) * std::sinh(PI * r) * (head + tail);
}

} // namespace kuzlab
