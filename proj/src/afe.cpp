#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"

#include <cmath>
#include <string>

namespace kuzlab {

u64 afe_cutoff(real kappa, const SmoothingParams& p) {
    if (!(kappa > 0))
        throw OutOfValidatedRange("afe_cutoff: kappa must be positive");
    real Y = (1 + p.delta) * kappa * kappa / (4 * PI * PI);
    return static_cast<u64>(std::floor((1 + p.delta) * Y));
}

namespace {

// shared smoothed-sum kernel; coef(n) supplies the Dirichlet coefficient
template <typename Coef>
real afe_sum(real scale, const SmoothingParams& p, real h, Coef&& coef) {
    SmoothingParams loc = p;
    loc.Y = (1 + p.delta) * scale * scale / (4 * PI * PI);
    loc.h = h;
    u64 cut = afe_cutoff(scale, p);
    real s = 0;
    for (u64 n = 1; n <= cut; ++n)
        s += coef(n) / std::sqrt(static_cast<real>(n)) * smooth_cutoff(n, loc);
    return s;
}

real hecke_h(const MaassFormRecord& form, const SmoothingParams& p) {
    return p.C * std::log(form.kappa);
}

} // namespace

real afe_hecke_central(const MaassFormRecord& form, const SmoothingParams& p) {
    u64 cut = afe_cutoff(form.kappa, p);
    if (form.depth() < cut)
        throw InsufficientCoefficients(
            "afe_hecke_central: need coefficients through n = " + std::to_string(cut)
            + ", record reaches " + std::to_string(form.depth()));
    return afe_sum(form.kappa, p, hecke_h(form, p),
                   [&](u64 n) { return form.t(n); });
}

std::pair<real, real> afe_hecke_central_with_estimate(const MaassFormRecord& form,
                                                      const SmoothingParams& p) {
    u64 cut = afe_cutoff(form.kappa, p);
    if (form.depth() < cut)
        throw InsufficientCoefficients(
            "afe_hecke_central: need coefficients through n = " + std::to_string(cut)
            + ", record reaches " + std::to_string(form.depth()));
    real h = hecke_h(form, p);
    real v1 = afe_sum(form.kappa, p, h, [&](u64 n) { return form.t(n); });
    real v2 = afe_sum(form.kappa, p, 2 * h, [&](u64 n) { return form.t(n); });
    return {v1, std::abs(v1 - v2)};
}

real afe_zeta_pair(real r, const SmoothingParams& p) {
    if (r < 15)
        throw RegimeTooSmall("afe_zeta_pair: needs r >= 15");
    real h = p.C * std::log(r);
    return afe_sum(r, p, h, [&](u64 n) { return divisor_sigma_cos(r, n); });
}

std::pair<real, real> afe_zeta_pair_with_estimate(real r, const SmoothingParams& p) {
    if (r < 15)
        throw RegimeTooSmall("afe_zeta_pair: needs r >= 15");
    real h = p.C * std::log(r);
    real v1 = afe_sum(r, p, h, [&](u64 n) { return divisor_sigma_cos(r, n); });
    real v2 = afe_sum(r, p, 2 * h, [&](u64 n) { return divisor_sigma_cos(r, n); });
    return {v1, std::abs(v1 - v2)};
}

namespace {

u64 mobius_support(real Y, real h) {
    // e^{-(n/Y)^h} < 1e-18 once (n/Y)^h > log(1e18) ~ 41.45
    return static_cast<u64>(std::floor(Y * std::pow(41.45L, 1 / h)));
}

void check_mobius_range(real t, real Y, bool check_t) {
    if (check_t && t < 5)
        throw RegimeTooSmall("mobius_inv_zeta: needs t >= 5");
    if (Y < 2 || Y > 1e4L)
        throw OutOfValidatedRange("mobius inversion: Y must lie in [2, 1e4]");
}

} // namespace

cplx mobius_inv_zeta(real t, real Y, real h) {
    check_mobius_range(t, Y, true);
    u64 nmax = mobius_support(Y, h);
    auto mu = mobius_table(nmax);
    SmoothingParams loc;
    loc.Y = Y;
    loc.h = h;
    cplx s = 0;
    for (u64 n = 1; n <= nmax; ++n) {
        if (mu[n] == 0)
            continue;
        real w = smooth_cutoff(n, loc);
        real ph = -2 * t * std::log(static_cast<real>(n));
        s += static_cast<real>(mu[n]) * w
             * cplx(std::cos(ph), std::sin(ph)) / static_cast<real>(n);
    }
    return s;
}

DirichletPolynomial mobius_inv_poly(real Y, real h) {
    check_mobius_range(0, Y, false);
    u64 nmax = std::min(mobius_support(Y, h), static_cast<u64>(2 * Y));
    auto mu = mobius_table(nmax);
    SmoothingParams loc;
    loc.Y = Y;
    loc.h = h;
    DirichletPolynomial poly;
    poly.M = static_cast<u64>(4 * Y * Y);
    for (u64 n = 1; n <= nmax; ++n) {
        if (mu[n] == 0)
            continue;
        real w = smooth_cutoff(n, loc);
        if (w == 0)
            continue;
        poly.coefficients[n * n] = cplx(static_cast<real>(mu[n]) * w);
    }
    poly.validate();
    return poly;
}

} // namespace kuzlab
