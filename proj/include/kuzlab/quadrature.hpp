#pragma once
#include <functional>
#include <vector>

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"

namespace kuzlab {

struct QuadratureConfig {
    real abs_tol = 1e-13L;
    real rel_tol = 1e-11L;
    int max_panels = 200000;
    // panel width is bounded by oscillation_safety / (1 + local frequency),
    // frequency in radians per unit length
    real oscillation_safety = 1.5L;
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by
// Newton iteration on P_n (startup cost only; avoids transcribed tables).
struct GLRule {
    std::vector<real> x, w;
};
const GLRule& gl_rule(int n); // cached; n in {8, 16} used internally

using FreqFn = std::function<real(real)>;

// Adaptive integration of f over [a,b]. The optional freq callback reports
// the local angular frequency and controls the initial panelization; panels
// are then bisected on a GL16-vs-GL8 error estimate until the combined
// error meets abs_tol + rel_tol*|I|. Throws QuadratureFailure when
// max_panels is exhausted with the tolerance unmet.
real integrate(const std::function<real(real)>& f, real a, real b,
               const QuadratureConfig& q, const FreqFn& freq = nullptr);
cplx integrate_c(const std::function<cplx(real)>& f, real a, real b,
                 const QuadratureConfig& q, const FreqFn& freq = nullptr);

// tanh-sinh rule for smooth (non-oscillatory) panels; level doubles the
// node count until successive estimates agree to tol. Endpoint-tolerant.
real tanh_sinh(const std::function<real(real)>& f, real a, real b, real tol);
cplx tanh_sinh_c(const std::function<cplx(real)>& f, real a, real b, real tol);

// Natural cubic spline (used to cache expensive transforms along 1-D grids).
struct Spline {
    std::vector<real> xs, ys, m; // nodes, values, second derivatives
    void build(std::vector<real> x, std::vector<real> y);
    real eval(real x) const; // clamps to end intervals
};

} // namespace kuzlab
