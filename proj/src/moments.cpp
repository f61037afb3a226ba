#include "kuzlab/moments.hpp"
#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"
#include "kuzlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kuzlab {

namespace {

// zeta-scale panel policy: width pi / (2 log(2+t))
FreqFn zeta_panel_freq(const QuadratureConfig& quad) {
    real os = quad.oscillation_safety;
    return [os](real t) {
        return std::max<real>(0, os * 2 * std::log(2 + std::abs(t)) / PI - 1);
    };
}

real wz_range(real a, real b, int k, const QuadratureConfig& quad) {
    auto f = [&](real t) -> real {
        if (t < 1e-12L)
            return 0; // the 1/|zeta(1+2it)|^2 weight vanishes at t = 0
        real num = std::norm(zeta_c(cplx(0.5L, t)));
        if (k == 2)
            num *= num;
        return num / std::norm(zeta_c(cplx(1, 2 * t)));
    };
    return integrate(f, a, b, quad, zeta_panel_freq(quad));
}

} // namespace

real weighted_zeta_integral(real T, int k, const QuadratureConfig& quad) {
    if (k != 1 && k != 2)
        throw OutOfValidatedRange("weighted_zeta_integral: k must be 1 or 2");
    if (T < 10 || T > 2000)
        throw OutOfValidatedRange("weighted_zeta_integral: T must lie in [10, 2000]");
    return wz_range(0, T, k, quad);
}

real motohashi_main_term(const DirichletPolynomial& poly, real T) {
    if (!(T > TWO_PI))
        throw OutOfValidatedRange("motohashi_main_term: T must exceed 2 pi");
    poly.validate();
    cplx s = 0;
    for (const auto& [h, ah] : poly.coefficients)
        for (const auto& [k, ak] : poly.coefficients) {
            real g = static_cast<real>(gcd_u64(h, k));
            real hk = static_cast<real>(h) * static_cast<real>(k);
            s += ah * std::conj(ak) * (g / hk)
                 * (std::log(T * g / (TWO_PI * hk)) + 2 * EULER_GAMMA - 1);
        }
    return T * s.real();
}

namespace {

// J2(d) = d^2 prod_{p|d} (1 - p^{-2}) via a smallest-prime-factor sieve,
// plus the Moebius-weighted partial sums over multiples:
//   s(d)  = sum_{d|l, l<=X} mu(l)/l^2
//   sl(d) = sum_{d|l, l<=X} mu(l) log(l)/l^2
struct LatticeTables {
    std::vector<real> j2, s, sl, c;
    explicit LatticeTables(u64 X, bool want_logs) {
        auto mu = mobius_table(X);
        std::vector<u64> spf(X + 1, 0);
        for (u64 p = 2; p <= X; ++p)
            if (spf[p] == 0)
                for (u64 q = p; q <= X; q += p)
                    if (spf[q] == 0)
                        spf[q] = p;
        j2.assign(X + 1, 0);
        j2[1] = 1;
        for (u64 d = 2; d <= X; ++d) {
            u64 rest = d, prev = 0;
            real v = 1;
            while (rest > 1) {
                u64 p = spf[rest];
                v *= (p == prev) ? static_cast<real>(p * p)
                                 : static_cast<real>(p * p) - 1;
                prev = p;
                rest /= p;
            }
            j2[d] = v;
        }
        s.assign(X + 1, 0);
        if (want_logs)
            sl.assign(X + 1, 0);
        for (u64 d = 1; d <= X; ++d)
            for (u64 l = d; l <= X; l += d) {
                if (mu[l] == 0)
                    continue;
                real term = static_cast<real>(mu[l])
                            / (static_cast<real>(l) * static_cast<real>(l));
                s[d] += term;
                if (want_logs)
                    sl[d] += term * std::log(static_cast<real>(l));
            }
        if (want_logs) {
            // c = mu * (n^2 log n), so sum_{d|g} c(d) = g^2 log g
            c.assign(X + 1, 0);
            for (u64 e = 1; e <= X; ++e) {
                real w = static_cast<real>(e) * static_cast<real>(e)
                         * std::log(static_cast<real>(e));
                if (w == 0)
                    continue;
                for (u64 d = e; d <= X; d += e) {
                    int m = mu[d / e];
                    if (m != 0)
                        c[d] += m * w;
                }
            }
        }
    }
};

real tail_mass_A(u64 X) {
    // |dropped| <= 2 sum_{l>X} zeta(2) d(l)/l^2 ~ 2 zeta(2) (log X + 2g + 1)/X,
    // padded 20%
    real lx = std::log(static_cast<real>(X));
    return 2.4L * (PI * PI / 6) * (lx + 2 * EULER_GAMMA + 1) / static_cast<real>(X);
}

real tail_mass_B(u64 X) {
    // one extra log factor against the same divisor mass, coarse but safe
    real lx = std::log(static_cast<real>(X)) + 2 * EULER_GAMMA + 1;
    return (PI * PI / 6) * (4 * lx * lx + 20) / static_cast<real>(X);
}

} // namespace

std::pair<real, real> series_A(u64 cutoff) {
    if (cutoff < 1)
        throw OutOfValidatedRange("series_A: cutoff must be >= 1");
    LatticeTables tab(cutoff, false);
    real a = 0;
    for (u64 d = 1; d <= cutoff; ++d)
        a += tab.j2[d] * tab.s[d] * tab.s[d];
    return {a, tail_mass_A(cutoff)};
}

std::pair<real, real> series_B(u64 cutoff) {
    if (cutoff < 1)
        throw OutOfValidatedRange("series_B: cutoff must be >= 1");
    LatticeTables tab(cutoff, true);
    real a = 0, t1 = 0, t2 = 0;
    for (u64 d = 1; d <= cutoff; ++d) {
        a += tab.j2[d] * tab.s[d] * tab.s[d];
        t1 += tab.c[d] * tab.s[d] * tab.s[d];
        t2 += tab.j2[d] * tab.s[d] * tab.sl[d];
    }
    // log((l,k)^2/(2 pi l^2 k^2)) + 2g - 1 splits into the A weight times
    // (2g - 1 - log 2pi), the 2 log(g) piece (t1), and -2(log l + log k) (t2)
    real b = (2 * EULER_GAMMA - 1 - LOG_2PI) * a + 2 * t1 - 4 * t2;
    return {b, tail_mass_B(cutoff)};
}

MomentFit fit_theorem2(const std::vector<real>& T_grid, const QuadratureConfig& quad) {
    std::vector<real> Ts = T_grid;
    std::sort(Ts.begin(), Ts.end());
    Ts.erase(std::unique(Ts.begin(), Ts.end(),
                         [](real a, real b) { return std::abs(a - b) < 1e-9L; }),
             Ts.end());
    if (Ts.size() < 6)
        throw OutOfValidatedRange("fit_theorem2: need at least 6 distinct grid points");
    for (real T : Ts)
        if (T < 50 || T > 2000)
            throw OutOfValidatedRange("fit_theorem2: grid points must lie in [50, 2000]");
    std::vector<std::pair<real, real>> grid;
    real acc = 0, prev = 0;
    for (real T : Ts) {
        acc += wz_range(prev, T, 1, quad);
        prev = T;
        grid.emplace_back(T, acc);
    }
    return fit_line(grid);
}

MomentFit fit_line(const std::vector<std::pair<real, real>>& grid) {
    if (grid.size() < 2)
        throw OutOfValidatedRange("fit_line: need at least 2 points");
    MomentFit fit;
    fit.grid = grid;
    real n = static_cast<real>(grid.size());
    real sxx = 0, sx = 0, sxy = 0, sy = 0;
    for (const auto& [T, I] : fit.grid) {
        real x = std::log(T), y = I / T;
        sxx += x * x;
        sx += x;
        sxy += x * y;
        sy += y;
    }
    real det = n * sxx - sx * sx;
    if (!(det > 1e-12L * n * sxx))
        throw SingularFit("fit_line: grid has no log-T spread");
    fit.A_hat = (n * sxy - sx * sy) / det;
    fit.B_hat = (sxx * sy - sx * sxy) / det;
    real ss = 0;
    for (const auto& [T, I] : fit.grid) {
        real r = I / T - (fit.A_hat * std::log(T) + fit.B_hat);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

namespace {

// two-term eigenvalue-count estimate below T
real weyl_estimate(real T) {
    if (T <= 1)
        return 0;
    real c = 2.71828182845904523536L * std::sqrt(PI / 2);
    return std::max<real>(0, T * T / 12 - (2 * T / PI) * std::log(T / c));
}

} // namespace

SumWithWarning sum_alpha_H(real T, const std::vector<MaassFormRecord>& forms,
                           const SmoothingParams& p) {
    if (!(T > 0))
        throw OutOfValidatedRange("sum_alpha_H: T must be positive");
    SumWithWarning out;
    for (const auto& f : forms) {
        if (f.kappa > T)
            continue;
        if (!f.alpha)
            throw MissingAlpha("sum_alpha_H: form at kappa = "
                               + std::to_string((double)f.kappa) + " lacks alpha");
        out.value += *f.alpha * afe_hecke_central(f, p);
        out.actual_count += 1;
    }
    out.expected_count = weyl_estimate(T);
    out.incomplete_spectrum =
        std::abs(out.actual_count - out.expected_count)
        > 0.2L * std::max<real>(out.expected_count, 1);
    return out;
}

CountReport kuznetsov_count(real T, const std::vector<MaassFormRecord>& forms,
                            const QuadratureConfig& quad) {
    if (!(T > 0))
        throw OutOfValidatedRange("kuznetsov_count: T must be positive");
    CountReport out;
    for (const auto& f : forms) {
        if (f.kappa > T)
            continue;
        if (!f.alpha)
            throw MissingAlpha("kuznetsov_count: form at kappa = "
                               + std::to_string((double)f.kappa) + " lacks alpha");
        out.sum_alpha += *f.alpha;
        out.actual_count += 1;
    }
    auto f = [&](real r) -> real {
        if (r < 1e-12L)
            return 0;
        return 1 / std::norm(zeta_c(cplx(1, 2 * r)));
    };
    out.continuous = (2 / PI) * integrate(f, 0, T, quad, zeta_panel_freq(quad));
    out.main_term = (T / PI) * (T / PI);
    out.expected_count = weyl_estimate(T);
    out.incomplete_spectrum =
        std::abs(out.actual_count - out.expected_count)
        > 0.2L * std::max<real>(out.expected_count, 1);
    return out;
}

Theorem1Report theorem1_decomposition(real K0, real G,
                                      const std::vector<MaassFormRecord>& forms,
                                      const QuadratureConfig& quad,
                                      const SmoothingParams& p) {
    if (!(K0 > 0) || !(G > 0))
        throw OutOfValidatedRange("theorem1_decomposition: K0 and G must be positive");
    Theorem1Report rep;
    rep.main_term = 3 * K0 * K0 / (PI * PI);
    for (const auto& f : forms) {
        if (f.kappa <= K0 || f.kappa > 2 * K0)
            continue;
        if (!f.alpha)
            throw MissingAlpha("theorem1_decomposition: form at kappa = "
                               + std::to_string((double)f.kappa) + " lacks alpha");
        rep.spectral_sum += *f.alpha * afe_hecke_central(f, p);
    }
    auto fz = [&](real r) -> real {
        if (r < 1e-12L)
            return 0;
        return std::norm(zeta_c(cplx(0.5L, r))) / std::norm(zeta_c(cplx(1, 2 * r)));
    };
    rep.continuous_integral =
        (2 / PI) * integrate(fz, K0, 2 * K0, quad, zeta_panel_freq(quad));
    rep.deviation = std::abs(rep.spectral_sum + rep.continuous_integral - rep.main_term);
    rep.deviation_in_GK0 = rep.deviation / (G * K0);
    WeightSpec w = WeightSpec::averaged_spec(K0, G);
    auto fd = [&](real r) { return r * std::tanh(PI * r) * weight_f(r, w); };
    rep.diag_average = (2 / (PI * PI)) * integrate(fd, 0, w.window_hi(), quad);
    rep.diag_deviation_in_GK0 = std::abs(rep.diag_average - rep.main_term) / (G * K0);
    return rep;
}

} // namespace kuzlab
