#pragma once
// Weighted moments of zeta on the critical line, Dirichlet-polynomial main
// terms, the two lattice constants behind the weighted-second-moment
// asymptotic, and spectral summation reports.

#include "kuzlab/core.hpp"
#include "kuzlab/dirichlet.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/forms.hpp"
#include "kuzlab/quadrature.hpp"
#include "kuzlab/smoothing.hpp"

#include <utility>
#include <vector>

namespace kuzlab {

struct MomentFit {
    real A_hat = 0;
    real B_hat = 0;
    std::vector<std::pair<real, real>> grid; // (T, I1(T)), strictly increasing
    real rms_residual = 0;                   // of I/T against A log T + B
};

struct SumWithWarning {
    real value = 0;
    real expected_count = 0; // two-term eigenvalue-count estimate below T
    real actual_count = 0;
    bool incomplete_spectrum = false; // count deviates > 20% from expected
};

struct CountReport {
    real sum_alpha = 0;   // sum of alpha_j with kappa_j <= T
    real continuous = 0;  // (2/pi) int_0^T dr / |zeta(1+2ir)|^2
    real main_term = 0;   // (T/pi)^2
    real expected_count = 0;
    real actual_count = 0;
    bool incomplete_spectrum = false;
};

struct Theorem1Report {
    real spectral_sum = 0;        // sum over K0 < kappa <= 2K0 of alpha H(1/2)
    real continuous_integral = 0; // (2/pi) int_{K0}^{2K0} |z(1/2+ir)|^2/|z(1+2ir)|^2
    real main_term = 0;           // 3 K0^2 / pi^2
    real deviation = 0;           // |spectral + continuous - main|
    real deviation_in_GK0 = 0;
    real diag_average = 0;        // (2/pi^2) int_0^inf r tanh(pi r) w(r) dr
    real diag_deviation_in_GK0 = 0;
};

// I_k(T) = int_0^T |zeta(1/2+it)|^{2k} / |zeta(1+2it)|^2 dt, k in {1,2}
real weighted_zeta_integral(real T, int k, const QuadratureConfig& quad);

// T sum_{h,k <= M} a(h) conj(a(k)) (h,k)/(hk) (log(T (h,k)/(2 pi h k)) + 2g - 1)
real motohashi_main_term(const DirichletPolynomial& poly, real T);

// truncations of the two lattice constants, with rigorous tail bounds:
//   A = sum mu(l) mu(k) (l,k)^2 / (lk)^2              (--> 6/pi^2)
//   B = same weights times (log((l,k)^2/(2 pi l^2 k^2)) + 2g - 1)
std::pair<real, real> series_A(u64 cutoff);
std::pair<real, real> series_B(u64 cutoff);

// least squares of I/T against {log T, 1} on given (T, I) pairs; the
// regression core behind fit_theorem2, exposed so it can be checked on
// synthetic data
MomentFit fit_line(const std::vector<std::pair<real, real>>& grid);

// least squares of I1(T)/T against {log T, 1} on the grid
MomentFit fit_theorem2(const std::vector<real>& T_grid, const QuadratureConfig& quad);

// sum over kappa <= T of alpha_j * central value, with a two-term
// eigenvalue-count cross-check flagging datasets that are too shallow
SumWithWarning sum_alpha_H(real T, const std::vector<MaassFormRecord>& forms,
                           const SmoothingParams& p);

// the same sum with the central value replaced by 1, its continuous
// companion, and the (T/pi)^2 main term
CountReport kuznetsov_count(real T, const std::vector<MaassFormRecord>& forms,
                            const QuadratureConfig& quad);

// sharp dyadic-window decomposition: spectral sum + continuous integral vs
// the 3 K0^2/pi^2 main term, plus the averaged-window diagonal as a
// consistency companion; deviations are reported in units of G*K0
Theorem1Report theorem1_decomposition(real K0, real G,
                                      const std::vector<MaassFormRecord>& forms,
                                      const QuadratureConfig& quad,
                                      const SmoothingParams& p);

} // namespace kuzlab
