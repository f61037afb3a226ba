#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kuzlab/special.hpp"

#include <cmath>

using namespace kuzlab;

static bool near(real a, real b, real tol) { return std::abs(a - b) <= tol; }
static bool cnear(cplx a, cplx b, real tol) { return std::abs(a - b) <= tol; }

TEST_CASE("gamma at classical points") {
    CHECK(cnear(gamma_c(cplx(1)), cplx(1), 5e-15L));
    CHECK(cnear(gamma_c(cplx(2)), cplx(1), 5e-15L));
    CHECK(cnear(gamma_c(cplx(5)), cplx(24), 1e-13L));
    CHECK(cnear(gamma_c(cplx(0.5L)), cplx(SQRT_PI), 5e-15L));
    CHECK(cnear(gamma_c(cplx(-0.5L)), cplx(-2 * SQRT_PI), 1e-14L));
    CHECK_THROWS_AS(gamma_c(cplx(0)), PoleAtNonpositiveInteger);
    CHECK_THROWS_AS(gamma_c(cplx(-3)), PoleAtNonpositiveInteger);
}

TEST_CASE("gamma modulus identity on the line Re z = 1") {
    // |Gamma(1+iy)|^2 = pi y / sinh(pi y)
    for (real y : {0.25L, 1.0L, 3.0L, 10.0L, 40.0L}) {
        cplx g = gamma_c(cplx(1, y));
        real want = PI * y / std::sinh(PI * y);
        CHECK(near(std::norm(g), want, 1e-12L * want));
    }
}

TEST_CASE("gamma recurrence and reflection at complex arguments") {
    for (cplx z : {cplx(0.3L, 4.0L), cplx(-2.2L, 1.5L), cplx(5.5L, -20.0L), cplx(0.5L, 120.0L)}) {
        cplx lhs = gamma_c(z + cplx(1));
        cplx rhs = z * gamma_c(z);
        CHECK(std::abs(lhs - rhs) < 1e-13L * std::abs(lhs));
        cplx refl = gamma_c(z) * gamma_c(cplx(1) - z);
        cplx want = PI / std::sin(PI * z);
        CHECK(std::abs(refl - want) < 1e-12L * std::abs(want));
    }
}

TEST_CASE("zeta at classical points") {
    CHECK(near(zeta_c(cplx(2)).real(), PI * PI / 6, 1e-14L));
    CHECK(near(zeta_c(cplx(4)).real(), PI * PI * PI * PI / 90, 1e-14L));
    CHECK(near(zeta_c(cplx(3)).real(), 1.2020569031595942854L, 1e-14L));
    CHECK(near(zeta_c(cplx(0)).real(), -0.5L, 1e-16L));
    CHECK(near(zeta_c(cplx(0.5L)).real(), -1.4603545088095868L, 1e-13L));
    CHECK(near(zeta_c(cplx(2)).imag(), 0.0L, 1e-15L));
    CHECK_THROWS_AS(zeta_c(cplx(1)), PoleAtOne);
    CHECK_THROWS_AS(zeta_c(cplx(1, 20001)), OutOfValidatedRange);
}

TEST_CASE("zeta high on the critical line") {
    // |zeta(1/2 + 20i)|^2, published to 8 figures
    CHECK(near(std::norm(zeta_c(cplx(0.5L, 20))), 1.3175422L, 3e-7L));
    // first nontrivial zero
    CHECK(std::abs(zeta_c(cplx(0.5L, 14.1347251417L))) < 1e-8L);
    // conjugate symmetry
    cplx a = zeta_c(cplx(0.7L, 55.5L));
    cplx b = zeta_c(cplx(0.7L, -55.5L));
    CHECK(std::abs(a - std::conj(b)) < 1e-15L);
}

TEST_CASE("zeta functional equation via chi") {
    for (real sig : {0.3L, 0.5L, 0.7L}) {
        for (real t : {10.0L, 50.0L, 200.0L, 1500.0L}) {
            cplx s(sig, t);
            cplx lhs = zeta_c(s);
            cplx rhs = zeta_chi(s) * zeta_c(cplx(1) - s);
            CHECK(std::abs(lhs - rhs) < 1e-8L);
        }
    }
}

TEST_CASE("bessel series degenerates to J_0 at r = 0") {
    CHECK(near(bessel_j_imag_order(0, 1).real(), 0.7651976865579666L, 1e-14L));
    CHECK(near(bessel_j_imag_order(0, 2).real(), 0.22389077914123567L, 1e-14L));
    CHECK(near(bessel_j_imag_order(0, 1).imag(), 0.0L, 1e-17L));
    // independent route: J_0(x) = (1/pi) int_0^pi cos(x sin t) dt
    QuadratureConfig q;
    for (real x : {0.5L, 3.0L, 11.0L, 27.0L}) {
        real viaint = integrate([x](real t) { return std::cos(x * std::sin(t)); }, 0, PI, q,
                                [x](real) { return x / TWO_PI; }) /
                      PI;
        CHECK(near(bessel_j_imag_order(0, x).real(), viaint, 1e-13L + 1e-19L * std::exp(x)));
    }
    CHECK_THROWS_AS(bessel_j_imag_order(1, 31), SeriesRegimeExceeded);
}

TEST_CASE("imaginary-order derivative limit hits Y_0") {
    // d/dnu J_nu(x) at nu=0 equals (pi/2) Y_0(x); so for tiny r,
    // Im J_{2ir}(x) / (2r) approaches (pi/2) Y_0(x)
    const real r = 1e-7L;
    CHECK(near(bessel_j_imag_order(r, 1).imag() / (2 * r), PI / 2 * 0.08825696421567696L,
               1e-6L));
    CHECK(near(bessel_j_imag_order(r, 2).imag() / (2 * r), PI / 2 * 0.5103756726497451L,
               1e-6L));
}

TEST_CASE("imj_over_cosh folds the cosh factor") {
    for (real r : {0.5L, 3.0L, 20.0L}) {
        for (real x : {0.7L, 5.0L, 24.0L}) {
            real direct = bessel_j_imag_order(r, x).imag() / std::cosh(PI * r);
            CHECK(near(imj_over_cosh(r, x), direct, 1e-15L + 1e-19L * std::exp(x)));
        }
    }
    // no overflow at large r where cosh(pi r) alone would blow past double
    real v = imj_over_cosh(400, 10);
    CHECK(std::isfinite(static_cast<double>(v)));
}

TEST_CASE("bessel_j_diff agrees with the series difference") {
    QuadratureConfig q;
    const real logK = std::log(10.0L);
    for (real r : {0.5L, 2.0L, 5.0L}) {
        for (real x : {0.5L, 2.0L, 10.0L, 25.0L}) {
            cplx series = bessel_j_imag_order(r, x);
            cplx want = series - std::conj(series); // J_{-2ir} = conj J_{2ir}
            cplx got = bessel_j_diff(r, x, logK, q);
            CHECK(std::abs(got.real()) < 1e-10L * std::abs(want));
            CHECK(std::abs(got - want) < 1e-8L * std::max<real>(1, std::abs(want)));
        }
    }
    CHECK(bessel_j_diff(0, 5, logK, q) == cplx(0));
}
