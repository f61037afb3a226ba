#pragma once
// Both sides of the Kuznetsov trace identity at level 1, the Bessel-type
// integral transform linking them, and narrow-window extraction of spectral
// weights and Hecke eigenvalues from the arithmetic side.

#include "kuzlab/arith.hpp"
#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/forms.hpp"
#include "kuzlab/quadrature.hpp"
#include "kuzlab/smoothing.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace kuzlab {

struct TraceBreakdown {
    real spectral = 0;
    real continuous = 0;
    real diagonal = 0;
    real kloosterman = 0;
    real kloosterman_tail_bound = 0; // certified bound on the dropped moduli
    real spectral_tail_bound = 0;    // density bound on forms past the dataset
    real residual = 0;               // spectral + continuous - diagonal - kloosterman
};

struct WindowExtraction {
    real center = 0;
    real G_narrow = 0;
    real alpha_hat = 0;
    real condition = 0; // gap to the nearest neighbor in units of G_narrow
    bool reliable = false;
};

// g(u) = int_0^inf r f(r) tanh(pi r) cos(2 r u) dr, the cosine profile of the
// spectral weight; entire in u, evaluated over the window of w
real g_of_u(real u, const WeightSpec& w, const QuadratureConfig& quad);
cplx g_of_u_complex(cplx u, const WeightSpec& w, const QuadratureConfig& quad);

// cubic-spline cache of g on [0, u_max], shared by every transform
// evaluation that uses the same window
class GProfile {
public:
    GProfile(const WeightSpec& w, const QuadratureConfig& quad, real u_max = 16);
    real eval(real u) const { return u <= hi_ ? spline_.eval(u) : 0; }
    real u_max() const { return hi_; }
    const WeightSpec& spec() const { return w_; }
    const QuadratureConfig& quad() const { return quad_; }

private:
    WeightSpec w_;
    QuadratureConfig quad_;
    Spline spline_;
    real hi_ = 0;
};

// The plus-sign Bessel transform
//   f+(x) = -(4/pi) int_0^inf r f(r) Im J_{2ir}(x) / cosh(pi r) dr.
// Two routes: the convergent Bessel series (x <= 25) and the oscillatory
// cosine-kernel form +(8/pi^2) int_0^U cos(x cosh u) g(u) du completed by an
// analytically continued tail. f_plus dispatches between them at x = 25.
real f_plus_series(real x, const WeightSpec& w, const QuadratureConfig& quad);
real f_plus_upath(real x, const WeightSpec& w, const QuadratureConfig& quad,
                  const GProfile* gp = nullptr);
real f_plus(real x, const WeightSpec& w, const QuadratureConfig& quad);

// Reusable f+ evaluator for modulus sums: cubic spline over log x, extended
// on demand by prepare(); lookups after prepare() are read-only.
class FPlusTable {
public:
    FPlusTable(const WeightSpec& w, const QuadratureConfig& quad);
    void prepare(real x_min, real x_max); // extend coverage, not thread-safe
    real operator()(real x) const;        // requires prepared coverage
    real eval_direct(real x) const;       // no x-spline, full evaluation
    const GProfile& profile() const { return gp_; }

private:
    WeightSpec w_;
    QuadratureConfig quad_;
    GProfile gp_;
    real step_;
    long i_lo_ = 0;               // integer index of the first node (log x / step)
    std::vector<real> lx_, vals_; // nodes in log x, ascending
    Spline spline_;
    bool ready_ = false;
};

// diagonal term (1/pi^2) delta_{m,n} int r tanh(pi r) f(r) dr
real diagonal_term(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad);

// Eisenstein term (1/pi) int sigma-ratio(m) sigma-ratio(n) f(r) / |zeta(1+2ir)|^2 dr
real continuous_term(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad);

// sum over moduli of S(m,n;l)/l * f+(4 pi sqrt(mn)/l), extended until the
// certified tail bound drops below tail_tol; returns (sum, tail bound).
// When rows is given it must hold S(m,*;l) for this m and caps the moduli;
// when table is given it is used (and extended) for f+ lookups.
std::pair<real, real> kloosterman_term(u64 m, u64 n, const WeightSpec& w,
                                       const QuadratureConfig& quad, real tail_tol,
                                       u64 modulus_cap = hard_modulus_cap,
                                       const KloostermanRows* rows = nullptr,
                                       FPlusTable* table = nullptr, int workers = 1);

// sum over the dataset of alpha_j t_j(m) t_j(n) f(kappa_j) plus a density
// bound on the truncated spectrum (returned second)
std::pair<real, real> spectral_term(const std::vector<MaassFormRecord>& forms,
                                    u64 m, u64 n, const WeightSpec& w,
                                    const QuadratureConfig& quad);

// arithmetic side: diagonal + kloosterman - continuous
real arithmetic_side(u64 m, u64 n, const WeightSpec& w, const QuadratureConfig& quad,
                     real tail_tol, u64 modulus_cap = hard_modulus_cap,
                     const KloostermanRows* rows = nullptr,
                     FPlusTable* table = nullptr, int workers = 1);

// full identity: residual = spectral + continuous - diagonal - kloosterman
TraceBreakdown trace_identity(const std::vector<MaassFormRecord>& forms,
                              u64 m, u64 n, const WeightSpec& w,
                              const QuadratureConfig& quad, real tail_tol,
                              u64 modulus_cap = hard_modulus_cap,
                              const KloostermanRows* rows = nullptr,
                              FPlusTable* table = nullptr, int workers = 1);

// alpha_j estimate from a narrow window at kappa_target:
// arithmetic_side(1,1) / f(kappa_target)
WindowExtraction extract_alpha(real kappa_target, real G_narrow,
                               const std::vector<real>& neighbors,
                               const QuadratureConfig& quad, real tail_tol,
                               u64 modulus_cap = hard_modulus_cap,
                               const KloostermanRows* rows = nullptr,
                               FPlusTable* table = nullptr, int workers = 1);

// Hecke eigenvalue estimate t_j(m) ~ AS(m,1)/AS(1,1) from the same window
real hecke_extract(real kappa_target, u64 m, real G_narrow,
                   const std::vector<real>& neighbors,
                   const QuadratureConfig& quad, real tail_tol,
                   u64 modulus_cap = hard_modulus_cap,
                   const KloostermanRows* rows = nullptr,
                   FPlusTable* table = nullptr, int workers = 1);

} // namespace kuzlab
