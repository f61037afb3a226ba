#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kuzlab/quadrature.hpp"

#include <cmath>

using namespace kuzlab;

static bool near(real a, real b, real tol) { return std::abs(a - b) <= tol; }

TEST_CASE("polynomial and smooth integrals") {
    QuadratureConfig q;
    CHECK(near(integrate([](real x) { return x * x; }, 0, 1, q), 1.0L / 3, 1e-16L));
    CHECK(near(integrate([](real x) { return std::sin(x); }, 0, PI, q), 2.0L, 1e-14L));
    // Gaussian over a wide window: erf(8) is 1 to ~1e-29
    CHECK(near(integrate([](real x) { return std::exp(-x * x); }, -8, 8, q), SQRT_PI, 1e-14L));
}

TEST_CASE("oscillatory integrals with frequency hint") {
    QuadratureConfig q;
    FreqFn fr = [](real) { return 1000.0L / TWO_PI; };
    real got = integrate([](real x) { return std::cos(1000 * x); }, 0, 1, q, fr);
    CHECK(near(got, std::sin(1000.0L) / 1000, 1e-13L));
    // whole periods cancel exactly
    real z = integrate([](real x) { return std::cos(50 * x); }, 0, TWO_PI, q,
                       [](real) { return 50.0L / TWO_PI; });
    CHECK(near(z, 0.0L, 1e-13L));
}

TEST_CASE("oscillatory without hint still converges by bisection") {
    QuadratureConfig q;
    real got = integrate([](real x) { return std::cos(40 * x); }, 0, 1, q);
    CHECK(near(got, std::sin(40.0L) / 40, 1e-12L));
}

TEST_CASE("complex integrand") {
    QuadratureConfig q;
    cplx got = integrate_c([](real x) { return std::exp(cplx(0, 1) * x); }, 0, 1, q);
    cplx want = (std::exp(cplx(0, 1)) - cplx(1)) / cplx(0, 1);
    CHECK(std::abs(got - want) < 1e-15L);
}

TEST_CASE("max_panels exhaustion throws") {
    QuadratureConfig q;
    q.max_panels = 4;
    q.abs_tol = 1e-30L;
    q.rel_tol = 0;
    CHECK_THROWS_AS(integrate([](real x) { return std::cos(300 * x * x); }, 0, 3, q),
                    QuadratureFailure);
}

TEST_CASE("tanh_sinh handles endpoint singularity") {
    real got = tanh_sinh([](real x) { return 1 / std::sqrt(x); }, 0, 1, 1e-12L);
    CHECK(near(got, 2.0L, 1e-10L));
    real smooth = tanh_sinh([](real x) { return std::exp(x); }, 0, 1, 1e-13L);
    CHECK(near(smooth, std::exp(1.0L) - 1, 1e-12L));
    cplx c = tanh_sinh_c([](real x) { return std::exp(cplx(0, 2) * x); }, 0, 1, 1e-13L);
    cplx want = (std::exp(cplx(0, 2)) - cplx(1)) / cplx(0, 2);
    CHECK(std::abs(c - want) < 1e-11L);
}

TEST_CASE("gauss-legendre nodes are sane") {
    const GLRule& g = gl_rule(16);
    REQUIRE(g.x.size() == 16);
    real wsum = 0;
    for (real w : g.w) wsum += w;
    CHECK(near(wsum, 2.0L, 1e-18L));
    for (size_t i = 0; i + 1 < g.x.size(); ++i) CHECK(g.x[i] < g.x[i + 1]);
    // GL16 integrates degree-31 polynomials exactly
    real s = 0;
    for (size_t i = 0; i < 16; ++i) s += g.w[i] * std::pow(g.x[i], 30);
    CHECK(near(s, 2.0L / 31, 1e-17L));
}

TEST_CASE("natural cubic spline") {
    Spline lin;
    lin.build({0.0L, 1.0L, 2.0L, 3.0L}, {1.0L, 3.0L, 5.0L, 7.0L});
    CHECK(near(lin.eval(1.5L), 4.0L, 1e-17L));
    CHECK(near(lin.eval(0.25L), 1.5L, 1e-17L));

    std::vector<real> xs, ys;
    for (int i = 0; i <= 60; ++i) {
        real x = 3.0L * i / 60;
        xs.push_back(x);
        ys.push_back(std::sin(x));
    }
    Spline s;
    s.build(xs, ys);
    for (real x = 0.31L; x < 2.9L; x += 0.17L)
        CHECK(near(s.eval(x), std::sin(x), 1e-6L));
}
