#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"
#include "kuzlab/special.hpp"

#include <cmath>
#include <vector>

using namespace kuzlab;

static SmoothingParams defaults_for(real kappa) { return smoothing_for(kappa); }

TEST_CASE("coefficient cutoff") {
    SmoothingParams p;
    p.delta = 0.1L;
    CHECK(afe_cutoff(9.5337L, p) == 2);

    SmoothingParams p0;
    p0.delta = 0;
    CHECK(afe_cutoff(2 * PI, p0) == 1);

    u64 prev = 0;
    for (real kappa = 8; kappa <= 60; kappa += 0.5L) {
        u64 c = afe_cutoff(kappa, p);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("hecke central value basics") {
    // single-term vector t(1)=1: the sum collapses to e^{-(1/Y)^h} ~ 1,
    // and the value cannot depend on the parity flag
    MaassFormRecord sparse;
    sparse.kappa = 9.5337L;
    sparse.parity = 1;
    sparse.coefficients.assign(8, 0.0L);
    sparse.coefficients[0] = 1;
    SmoothingParams p = defaults_for(sparse.kappa);
    real even_v = afe_hecke_central(sparse, p);
    CHECK(even_v == doctest::Approx(1.0).epsilon(1e-8));
    sparse.parity = -1;
    CHECK(afe_hecke_central(sparse, p) == even_v);

    // lowest eigenvalue with published Hecke data: central values of this
    // family are nonnegative, so the approximation must not go noticeably
    // negative
    MaassFormRecord low;
    low.kappa = 9.53369526135L;
    low.parity = -1;
    low.coefficients = {1.0L, -1.068333551L, -0.456197355L, 0.141336576L};
    real hv = afe_hecke_central(low, defaults_for(low.kappa));
    CHECK(hv >= -1e-3L);
    CHECK(hv == doctest::Approx(0.2482).epsilon(2e-3)); // regression anchor

    MaassFormRecord shallow;
    shallow.kappa = 12;
    shallow.parity = 1;
    shallow.coefficients = {1.0L, 0.5L, 0.5L};
    CHECK_THROWS_AS(afe_hecke_central(shallow, defaults_for(12)),
                    InsufficientCoefficients);
}

TEST_CASE("smoothing insensitivity on sparse data") {
    // with t(1) the only nonzero coefficient, nothing sits in the cutoff
    // shoulder, so moving delta or sharpening h cannot move the value
    MaassFormRecord f;
    f.kappa = 9.5337L;
    f.parity = 1;
    f.coefficients.assign(8, 0.0L);
    f.coefficients[0] = 1;

    SmoothingParams p = defaults_for(f.kappa);
    real base = afe_hecke_central(f, p);

    SmoothingParams wide = p;
    wide.delta = 0.2L;
    CHECK(std::abs(afe_hecke_central(f, wide) - base) < 1e-6L);

    SmoothingParams sharp = p;
    sharp.C = 2 * p.C;
    CHECK(std::abs(afe_hecke_central(f, sharp) - base) < 1e-6L);

    // the doubling estimate reports the same insensitivity
    auto [v, est] = afe_hecke_central_with_estimate(f, p);
    CHECK(v == base);
    CHECK(est < 1e-6L);

    // dense coefficient vectors do NOT enjoy this at small kappa: t(2)
    // sits in the shoulder of the cutoff (Y ~ 2.53) and moves by ~4e-3
    // when h doubles. Record that honestly rather than asserting decay.
    MaassFormRecord dense;
    dense.kappa = 9.53369526135L;
    dense.parity = -1;
    dense.coefficients = {1.0L, -1.068333551L, -0.456197355L, 0.141336576L};
    auto [dv, dest] = afe_hecke_central_with_estimate(dense, p);
    CHECK(dest > 1e-4L);  // genuinely sensitive at this scale
    CHECK(dest < 2e-2L);
    CHECK(dv == doctest::Approx(0.2482).epsilon(2e-3));
}

TEST_CASE("hecke central value is linear in the coefficients") {
    SmoothingParams p = defaults_for(14);
    u64 depth = afe_cutoff(14, p) + 4;

    MaassFormRecord f1, f2, mix;
    f1.kappa = f2.kappa = mix.kappa = 14;
    f1.parity = f2.parity = mix.parity = 1;
    for (u64 n = 1; n <= depth; ++n) {
        real a = std::cos(0.7L * n) / std::sqrt((real)n);
        real b = std::sin(1.3L * n + 0.2L) / std::sqrt((real)n);
        if (n == 1) { a = 1; b = 1; }
        f1.coefficients.push_back(a);
        f2.coefficients.push_back(b);
        mix.coefficients.push_back(0.3L * a + 0.7L * b);
    }
    real want = 0.3L * afe_hecke_central(f1, p) + 0.7L * afe_hecke_central(f2, p);
    real got = afe_hecke_central(mix, p);
    CHECK(got == doctest::Approx((double)want).epsilon(1e-13));
}

TEST_CASE("hecke route reproduces the zeta pair when fed divisor data") {
    // A synthetic even 'form' whose t(n) equal the zeta-pair summand
    // must give exactly the zeta-pair value: both sides share scale rules.
    real r = 40;
    SmoothingParams p = defaults_for(r);
    u64 depth = afe_cutoff(r, p) + 2;

    MaassFormRecord f;
    f.kappa = r;
    f.parity = 1;
    for (u64 n = 1; n <= depth; ++n)
        f.coefficients.push_back(divisor_sigma_cos(r, n));

    real lhs = afe_hecke_central(f, p);
    real rhs = afe_zeta_pair(r, p);
    CHECK(lhs == doctest::Approx((double)rhs).epsilon(1e-14));
}

TEST_CASE("zeta pair against classical values") {
    // |zeta(1/2 + i r)|^2 reference values (independently computed,
    // 17 significant digits). The truncated smoothed sum carries an
    // oscillating remainder of size roughly exp(-pi r/(2h)) from the
    // poles of the completed integrand; with h = 10 log r that remainder
    // is a few percent of the r = 100 value and much larger relative to
    // the accidentally small target at r = 60. The bands below pin the
    // observed behavior; they are regression anchors, not accuracy
    // claims.
    struct Ref { real r, truth, band; };
    const Ref refs[] = {
        {20, 1.3175422032111323L, 0.30L},   // observed rel 0.215
        {30, 0.35524999574728991L, 0.40L},  // observed rel 0.303
        {40, 1.7131731199006756L, 0.08L},   // observed rel 0.049
        {60, 0.34451087854573622L, 0.55L},  // observed rel 0.471
        {100, 7.2506174389694648L, 0.03L},  // observed rel 0.014
    };
    real rel20 = 0, rel40 = 0, rel100 = 0;
    for (const Ref& ref : refs) {
        SmoothingParams p = defaults_for(ref.r);
        real v = afe_zeta_pair(ref.r, p);
        real rel = std::abs(v - ref.truth) / ref.truth;
        INFO("r=", (double)ref.r, " value=", (double)v, " rel err=", (double)rel);
        CHECK(rel <= ref.band);
        CHECK(v > -1e-6L); // approximates a modulus squared
        if (ref.r == 20) rel20 = rel;
        if (ref.r == 40) rel40 = rel;
        if (ref.r == 100) rel100 = rel;
    }
    // where the target is of comparable size the error does shrink with r
    CHECK(rel40 < rel20);
    CHECK(rel100 < rel40);

    SmoothingParams p = defaults_for(20);
    CHECK_THROWS_AS(afe_zeta_pair(14, p), RegimeTooSmall);

    auto [v100, est100] = afe_zeta_pair_with_estimate(100, defaults_for(100));
    CHECK(v100 == afe_zeta_pair(100, defaults_for(100)));
    CHECK(est100 >= 0);
    CHECK(est100 <= 0.15L); // observed 0.092: smoothing sensitivity scale
}

TEST_CASE("smoothed moebius inversion of 1/zeta") {
    real t = 100;
    cplx truth = cplx(1, 0) / zeta_c(cplx(1, 2 * t));

    cplx v50 = mobius_inv_zeta(t, 50, 40);
    CHECK(std::abs(v50 - truth) <= 0.5L * std::pow(50.0L, -0.25L));

    real err10 = std::abs(mobius_inv_zeta(t, 10, 40) - truth);
    real err400 = std::abs(mobius_inv_zeta(t, 400, 40) - truth);
    CHECK(err400 <= 0.5L * std::pow(400.0L, -0.25L));
    CHECK(err400 < err10 + 0.05L);

    CHECK_THROWS_AS(mobius_inv_zeta(3, 50, 40), RegimeTooSmall);
    CHECK_THROWS_AS(mobius_inv_zeta(100, 1.5L, 40), OutOfValidatedRange);
    CHECK_THROWS_AS(mobius_inv_zeta(100, 2e4L, 40), OutOfValidatedRange);
}

TEST_CASE("square-support moebius polynomial") {
    DirichletPolynomial poly = mobius_inv_poly(5, 30);
    CHECK(poly.M == 100);
    CHECK_NOTHROW(poly.validate());

    CHECK(std::abs(poly.a(1) - cplx(1)) < 1e-12L);
    CHECK(std::abs(poly.a(4) - cplx(-std::exp(-std::pow(0.4L, 30.0L)))) < 1e-15L);
    CHECK(std::abs(poly.a(9) + cplx(std::exp(-std::pow(0.6L, 30.0L)))) < 1e-15L);
    CHECK(poly.a(16) == cplx(0)); // mu(4) = 0
    CHECK(std::abs(poly.a(25) + cplx(std::exp(-1.0L))) < 1e-15L);
    CHECK(poly.a(2) == cplx(0));  // non-square index
    CHECK(poly.a(36) == cplx(0)); // past the support
}
