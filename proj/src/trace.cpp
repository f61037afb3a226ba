#include "kuzlab/trace.hpp"
#include "kuzlab/parallel.hpp"
#include "kuzlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kuzlab {

// ---------------------------------------------------------------- g profile

real g_of_u(real u, const WeightSpec& w, const QuadratureConfig& quad) {
    auto f = [&](real r) {
        return r * weight_f(r, w) * std::tanh(PI * r) * std::cos(2 * r * u);
    };
    real au = std::abs(u);
    FreqFn freq = [au](real) { return au / PI; };
    return integrate(f, w.window_lo(), w.window_hi(), quad, freq);
}

cplx g_of_u_complex(cplx u, const WeightSpec& w, const QuadratureConfig& quad) {
    auto f = [&](real r) -> cplx {
        return r * weight_f(r, w) * std::tanh(PI * r) * std::cos(2 * r * u);
    };
    real au = std::abs(u.real()) + std::abs(u.imag());
    FreqFn freq = [au](real) { return au / PI; };
    return integrate_c(f, w.window_lo(), w.window_hi(), quad, freq);
}

GProfile::GProfile(const WeightSpec& w, const QuadratureConfig& quad, real u_max)
    : w_(w), quad_(quad) {
    // resolve the ~cos(2 K_top u) oscillation with dozens of nodes per period
    real ktop = w.window_hi();
    real du = std::min<real>(0.01L, PI / (56 * ktop));
    int n = static_cast<int>(std::ceil(u_max / du)) + 1;
    std::vector<real> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = i * du;
        ys[i] = g_of_u(xs[i], w, quad);
    }
    hi_ = xs.back();
    spline_.build(std::move(xs), std::move(ys));
}

// ------------------------------------------------------------- f+ transform

real f_plus_series(real x, const WeightSpec& w, const QuadratureConfig& quad) {
    if (!(x > 0) || x > 25 + 1e-9L)
        throw SeriesRegimeExceeded("f_plus_series: x must lie in (0, 25]");
    auto f = [&](real r) { return r * weight_f(r, w) * imj_over_cosh(r, x); };
    // the kernel's r-phase is ~ -2r log(4r/(e x)); report its local frequency
    FreqFn freq = [x](real r) {
        real q = 4 * std::abs(r) / (2.7182818L * x);
        return q > 1.5L ? std::log(q) / PI : 0.2L;
    };
    return -(4 / PI) * integrate(f, w.window_lo(), w.window_hi(), quad, freq);
}

real f_plus_upath(real x, const WeightSpec& w, const QuadratureConfig& quad,
                  const GProfile* gp) {
    if (!(x > 0))
        throw OutOfValidatedRange("f_plus_upath: x must be positive");
    const real Ke = (w.kind == WeightKind::averaged) ? w.K0_upper : w.K;
    const real G2 = w.G * w.G;
    // head length chosen so the rotated tail decays at rate >= ~3.8 Ke + G^2
    const real U = std::asinh((6 * Ke + 4 * G2) / x);

    auto head_f = [&](real u) {
        real g = gp ? gp->eval(u) : g_of_u(u, w, quad);
        return std::cos(x * std::cosh(u)) * g;
    };
    FreqFn head_freq = [&](real u) {
        return (x * std::sinh(std::abs(u)) + 2 * Ke) / TWO_PI;
    };
    real head = integrate(head_f, 0, U, quad, head_freq);

    // tail int_U^inf cos(x cosh u) g(u) du, rotated to u = U + it where
    // |e^{i x cosh(U+it)}| = e^{-x sinh U sin t} beats the e^{2 Ke t} growth
    // of g; the leg stops once the integrand is below working precision
    const real lambda = 3.8L * Ke + 0.98L * G2;
    const real t_cut = std::min(PI / 2, 44 / lambda);
    const real xcU = x * std::cosh(U);
    const real xsU = x * std::sinh(U);
    const cplx iu(0, 1);
    // the inner g integral at U + it cancels down from pointwise scale
    // e^{2 Ke t}, which outruns long-double headroom; since the result is
    // then damped by e^{-x sinh U sin t}, grant the inner quadrature a
    // tolerance inflated by that known factor (net pointwise error stays
    // below abs_tol / 20, and the grant grows faster than the noise)
    auto damped = [&](real s) {
        QuadratureConfig qd = quad;
        real lift = std::exp(std::min<real>(600.0L, s));
        qd.abs_tol = quad.abs_tol * std::max<real>(1.0L, lift / 20);
        return qd;
    };
    auto vert_f = [&](real t) -> cplx {
        cplx u(U, t);
        QuadratureConfig qd = damped(xsU * std::sin(std::min<real>(t, PI / 2)));
        return iu * std::exp(iu * (x * std::cosh(u))) * g_of_u_complex(u, w, qd);
    };
    FreqFn vert_freq = [&](real t) {
        real st = std::sin(std::min<real>(std::abs(t), PI / 2));
        return (xcU * st + 2 * Ke) / TWO_PI;
    };
    cplx tail = integrate_c(vert_f, 0, t_cut, quad, vert_freq);

    if (t_cut >= PI / 2 - 1e-15L) {
        // slow-decay geometry (small Ke): finish along u = v + i pi/2 where
        // cosh u = i sinh v and the kernel is a plain e^{-x sinh v}
        real v_end = std::asinh((44 + PI * Ke + 2.5L * G2) / x);
        if (v_end > U) {
            auto horiz_f = [&](real v) -> cplx {
                QuadratureConfig qd = damped(x * std::sinh(v));
                return std::exp(-x * std::sinh(v))
                       * g_of_u_complex(cplx(v, PI / 2), w, qd);
            };
            tail += integrate_c(horiz_f, U, v_end, quad);
        }
    }
    return (8 / (PI * PI)) * (head + tail.real());
}

real f_plus(real x, const WeightSpec& w, const QuadratureConfig& quad) {
    if (!(x > 0))
        throw OutOfValidatedRange("f_plus: x must be positive");
    return x <= 25 ? f_plus_series(x, w, quad) : f_plus_upath(x, w, quad);
}

FPlusTable::FPlusTable(const WeightSpec& w, const QuadratureConfig& quad)
    : w_(w), quad_(quad), gp_(w, quad) {
    real ktop = (w.kind == WeightKind::averaged) ? w.K0_upper : w.K;
    // f+ oscillates in log x at ~2K rad per unit; same resolution as GProfile
    step_ = std::min<real>(0.005L, PI / (56 * ktop));
}

real FPlusTable::eval_direct(real x) const {
    return x <= 25 ? f_plus_series(x, w_, quad_) : f_plus_upath(x, w_, quad_, &gp_);
}

void FPlusTable::prepare(real x_min, real x_max) {
    if (!(x_min > 0) || !(x_max >= x_min))
        throw OutOfValidatedRange("FPlusTable: bad coverage request");
    long lo = static_cast<long>(std::floor(std::log(x_min) / step_)) - 2;
    long hi = static_cast<long>(std::ceil(std::log(x_max) / step_)) + 2;
    if (ready_ && lo >= i_lo_ && hi <= i_lo_ + static_cast<long>(lx_.size()) - 1)
        return;
    if (ready_) {
        lo = std::min(lo, i_lo_);
        hi = std::max(hi, i_lo_ + static_cast<long>(lx_.size()) - 1);
    }
    std::vector<real> nlx(hi - lo + 1), nv(hi - lo + 1);
    for (long i = lo; i <= hi; ++i) {
        long j = i - i_lo_;
        if (ready_ && j >= 0 && j < static_cast<long>(lx_.size())) {
            nlx[i - lo] = lx_[j];
            nv[i - lo] = vals_[j];
        } else {
            nlx[i - lo] = i * step_;
            nv[i - lo] = eval_direct(std::exp(i * step_));
        }
    }
    lx_ = std::move(nlx);
    vals_ = std::move(nv);
    i_lo_ = lo;
    spline_.build(lx_, vals_);
    ready_ = true;
}

real FPlusTable::operator()(real x) const {
    if (!ready_)
        throw OutOfValidatedRange("FPlusTable: lookup before prepare()");
    real lx = std::log(x);
    if (lx < lx_.front() - 1e-12L || lx > lx_.back() + 1e-12L)
        throw OutOfValidatedRange("FPlusTable: lookup outside prepared range");
    return spline_.eval(lx);
}

// ------------------------------------------------------------- trace pieces

real diagonal_term(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad) {
    if (m == 0 || n == 0)
        throw OutOfValidatedRange("diagonal_term: indices must be >= 1");
    if (m != n)
        return 0;
    auto f = [&](real r) { return r * std::tanh(PI * r) * weight_f(r, w); };
    return (2 / (PI * PI)) * integrate(f, w.window_lo(), w.window_hi(), quad);
}

real continuous_term(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad) {
    if (m == 0 || n == 0)
        throw OutOfValidatedRange("continuous_term: indices must be >= 1");
    auto f = [&](real r) -> real {
        if (r < 1e-12L)
            return 0; // the zeta pole at 1 kills the integrand at r = 0
        real z = std::norm(zeta_c(cplx(1, 2 * r)));
        return divisor_sigma_cos(r, m) * divisor_sigma_cos(r, n)
               * weight_f(r, w) / z;
    };
    // divisor phases r log(d^2/m) oscillate at up to log(mn) rad per unit r
    real lf = (std::log(static_cast<real>(m) + 1)
               + std::log(static_cast<real>(n) + 1)) / TWO_PI;
    FreqFn freq = [lf](real) { return lf; };
    return (2 / PI) * integrate(f, w.window_lo(), w.window_hi(), quad, freq);
}

namespace {

// smooth model for the dyadic divisor mass sum_{a < l <= b} d(l)/sqrt(l)
real divisor_mass(real a, real b) {
    auto F = [](real t) {
        return 2 * std::sqrt(t) * (std::log(t) + 2 * EULER_GAMMA - 2);
    };
    return std::max<real>(0, F(b) - F(a));
}

} // namespace

std::pair<real, real> kloosterman_term(u64 m, u64 n, const WeightSpec& w,
                                       const QuadratureConfig& quad, real tail_tol,
                                       u64 modulus_cap, const KloostermanRows* rows,
                                       FPlusTable* table, int workers) {
    if (m == 0 || n == 0)
        throw OutOfValidatedRange("kloosterman_term: indices must be >= 1");
    if (!(tail_tol > 0))
        throw OutOfValidatedRange("kloosterman_term: tail_tol must be positive");
    u64 cap = std::min<u64>(modulus_cap, hard_modulus_cap);
    if (rows) {
        if (rows->size() < m || (*rows)[m - 1].empty())
            throw OutOfValidatedRange("kloosterman_term: shared rows lack this m");
        cap = std::min<u64>(cap, (*rows)[m - 1].size());
    }
    if (cap == 0)
        throw OutOfValidatedRange("kloosterman_term: empty modulus range");

    const real xm = 4 * PI * std::sqrt(static_cast<real>(m) * static_cast<real>(n));
    std::unique_ptr<FPlusTable> own;
    if (!table) {
        own = std::make_unique<FPlusTable>(w, quad);
        table = own.get();
    }
    const real g_mn = std::sqrt(static_cast<real>(gcd_u64(m, n)));

    real sum = 0;
    real prev_env = -1, last_env = -1; // max |f+| per block
    real prev_bs = -1, last_bs = -1;   // |block contribution|
    u64 lo = 1, hi = std::min<u64>(64, cap);

    for (int block = 1;; ++block) {
        // spline coverage for this block's small arguments; x > 25 entries
        // (possible only in the first blocks) are evaluated directly
        if (block > 1) {
            real x_lo = xm / static_cast<real>(hi);
            if (x_lo <= 25)
                table->prepare(x_lo, std::min<real>(xm / static_cast<real>(lo), 25.3L));
        }
        u64 count = hi - lo + 1;
        u64 nch = chunk_count(count);
        std::vector<real> csum(nch, 0), cenv(nch, 0);
        run_chunks(count, workers, [&](u64 c, u64 a, u64 b) {
            real s = 0, env = 0;
            for (u64 k = a; k < b; ++k) {
                u64 l = lo + k;
                real x = xm / static_cast<real>(l);
                real fp = (block == 1 || x > 25) ? table->eval_direct(x)
                                                 : (*table)(x);
                real S = rows ? (*rows)[m - 1][l - 1] : kloosterman(m, n, l);
                s += S / static_cast<real>(l) * fp;
                env = std::max(env, std::abs(fp));
            }
            csum[c] = s;
            cenv[c] = env;
        });
        real bs = 0, env = 0;
        for (u64 c = 0; c < nch; ++c) { // fixed-order reduction
            bs += csum[c];
            env = std::max(env, cenv[c]);
        }
        sum += bs;
        prev_env = last_env;
        last_env = env;
        prev_bs = last_bs;
        last_bs = std::abs(bs);

        if (block >= 2) {
            // route 1: Weil mass of future dyadic blocks times the observed
            // f+ envelope extrapolated geometrically
            real tail_weil = std::numeric_limits<real>::infinity();
            if (last_env == 0) {
                tail_weil = 0; // window already dead; f+ only decays further
            } else if (prev_env > 0) {
                real ratio = std::min<real>(last_env / prev_env, 0.999L);
                // future block masses grow like sqrt(2) with a slowly fading
                // log factor; demand enough envelope decay to beat that
                if (ratio * 1.415L * 1.2L < 1) {
                    real acc = 0, edge = static_cast<real>(hi), extrap = last_env;
                    real term = 0;
                    for (int j = 1; j <= 400; ++j) {
                        extrap *= ratio;
                        term = extrap * g_mn * divisor_mass(edge, 2 * edge);
                        acc += term;
                        edge *= 2;
                        if (term < 1e-6L * acc + 1e-300L)
                            break;
                    }
                    if (term < 1e-5L * acc + 1e-300L)
                        tail_weil = 10 * acc;
                }
            }
            // route 2: empirical block-contribution extrapolation (the
            // narrow-window regime, where sign cancellation inside each
            // block is what actually makes the series converge)
            real tail_emp = std::numeric_limits<real>::infinity();
            if (last_bs == 0 && prev_bs == 0) {
                tail_emp = 0;
            } else if (prev_bs > 0 && block >= 3) {
                real rb = std::clamp<real>(last_bs / prev_bs, 0.02L, 0.95L);
                tail_emp = 10 * std::max(last_bs, prev_bs * rb) * rb / (1 - rb);
            }
            real tail_bound = std::min(tail_weil, tail_emp);
            if (tail_bound <= tail_tol)
                return {sum, tail_bound};
        }
        if (hi >= cap)
            throw TailNotConvergent(
                "kloosterman_term: tail above tolerance at modulus cap "
                + std::to_string(cap));
        lo = hi + 1;
        hi = std::min<u64>(hi * 2, cap);
    }
}

std::pair<real, real> spectral_term(const std::vector<MaassFormRecord>& forms,
                                    u64 m, u64 n, const WeightSpec& w,
                                    const QuadratureConfig& quad) {
    if (m == 0 || n == 0)
        throw OutOfValidatedRange("spectral_term: indices must be >= 1");
    real s = 0, kappa_max = 0;
    for (const auto& fm : forms) {
        kappa_max = std::max(kappa_max, fm.kappa);
        real fk = weight_f(fm.kappa, w);
        if (std::abs(fk) <= 1e-14L)
            continue;
        if (!fm.alpha)
            throw MissingAlpha("spectral_term: form at kappa = "
                               + std::to_string((double)fm.kappa) + " lacks alpha");
        s += *fm.alpha * fm.t(m) * fm.t(n) * fk;
    }
    // density bound on the truncated spectrum: the Kuznetsov average puts
    // (2/pi^2) int r tanh(pi r) f(r) dr of alpha-mass past kappa_max, and the
    // eigenvalue bound caps |t(m) t(n)|
    real bound = 0;
    real hi = w.window_hi();
    if (kappa_max < hi) {
        auto g = [&](real r) { return r * std::tanh(PI * r) * weight_f(r, w); };
        real a = std::max(kappa_max, w.window_lo());
        real mass = (2 / (PI * PI)) * integrate(g, a, hi, quad);
        real capm = 1.5L * divisor_count(m) * std::pow(static_cast<real>(m), 7.0L / 64)
                    * 1.5L * divisor_count(n) * std::pow(static_cast<real>(n), 7.0L / 64);
        bound = std::abs(mass) * capm;
    }
    return {s, bound};
}

real arithmetic_side(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad,
                     real tail_tol, u64 modulus_cap, const KloostermanRows* rows,
                     FPlusTable* table, int workers) {
    real diag = diagonal_term(m, n, w, quad);
    auto [kl, kl_tail] = kloosterman_term(m, n, w, quad, tail_tol, modulus_cap,
                                          rows, table, workers);
    (void)kl_tail;
    real cont = continuous_term(m, n, w, quad);
    return diag + kl - cont;
}

TraceBreakdown trace_identity(const std::vector<MaassFormRecord>& forms,
                              u64 m, u64 n, const WeightSpec& w,
                              const QuadratureConfig& quad, real tail_tol,
                              u64 modulus_cap, const KloostermanRows* rows,
                              FPlusTable* table, int workers) {
    TraceBreakdown tb;
    auto [sp, sp_tail] = spectral_term(forms, m, n, w, quad);
    tb.spectral = sp;
    tb.spectral_tail_bound = sp_tail;
    tb.continuous = continuous_term(m, n, w, quad);
    tb.diagonal = diagonal_term(m, n, w, quad);
    auto [kl, kl_tail] = kloosterman_term(m, n, w, quad, tail_tol, modulus_cap,
                                          rows, table, workers);
    tb.kloosterman = kl;
    tb.kloosterman_tail_bound = kl_tail;
    tb.residual = tb.spectral + tb.continuous - tb.diagonal - tb.kloosterman;
    return tb;
}

// ---------------------------------------------------------------- extraction

namespace {

real isolation_condition(real kappa_target, real G_narrow,
                         const std::vector<real>& neighbors) {
    real gap = std::numeric_limits<real>::infinity();
    for (real nu : neighbors) {
        real d = std::abs(nu - kappa_target);
        if (d > 1e-9L)
            gap = std::min(gap, d);
    }
    return gap / G_narrow;
}

} // namespace

WindowExtraction extract_alpha(real kappa_target, real G_narrow,
                               const std::vector<real>& neighbors,
                               const QuadratureConfig& quad, real tail_tol,
                               u64 modulus_cap, const KloostermanRows* rows,
                               FPlusTable* table, int workers) {
    real condition = isolation_condition(kappa_target, G_narrow, neighbors);
    if (condition < 5)
        throw PoorIsolation("extract_alpha: nearest neighbor only "
                            + std::to_string((double)condition)
                            + " window widths away (need 5)");
    WeightSpec w = WeightSpec::gaussian_spec(kappa_target, G_narrow);
    real as = arithmetic_side(1, 1, w, quad, tail_tol, modulus_cap, rows, table,
                              workers);
    WindowExtraction out;
    out.center = kappa_target;
    out.G_narrow = G_narrow;
    out.alpha_hat = as / weight_f(kappa_target, w);
    out.condition = condition;
    out.reliable = condition >= 5;
    return out;
}

real hecke_extract(real kappa_target, u64 m, real G_narrow,
                   const std::vector<real>& neighbors,
                   const QuadratureConfig& quad, real tail_tol,
                   u64 modulus_cap, const KloostermanRows* rows,
                   FPlusTable* table, int workers) {
    if (m == 0)
        throw OutOfValidatedRange("hecke_extract: m must be >= 1");
    real condition = isolation_condition(kappa_target, G_narrow, neighbors);
    if (condition < 5)
        throw PoorIsolation("hecke_extract: nearest neighbor only "
                            + std::to_string((double)condition)
                            + " window widths away (need 5)");
    WeightSpec w = WeightSpec::gaussian_spec(kappa_target, G_narrow);
    real den = arithmetic_side(1, 1, w, quad, tail_tol, modulus_cap, rows, table,
                               workers);
    if (std::abs(den) < 1e-8L)
        throw DivisionUnstable("hecke_extract: window mass |AS(1,1)| below 1e-8");
    if (m == 1)
        return 1;
    real num = arithmetic_side(m, 1, w, quad, tail_tol, modulus_cap, rows, table,
                               workers);
    return num / den;
}

} // namespace kuzlab
