#include "kuzlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace kuzlab {

namespace {

GLRule make_gl(int n) {
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        real x = std::cos(PI * (i + 0.75L) / (n + 0.5L));
        real pp = 0;
        for (int it = 0; it < 64; ++it) {
            real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1);
            real dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-19L) break;
        }
        // one clean derivative evaluation at the converged root
        real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        real w = 2 / ((1 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

std::map<int, GLRule> gl_cache;
std::mutex gl_mutex;

template <class V>
V gl_panel(const std::function<V(real)>& f, real a, real b, const GLRule& g) {
    const real c = (a + b) / 2, h = (b - a) / 2;
    V s = V{};
    for (size_t i = 0; i < g.x.size(); ++i) s += V(g.w[i]) * f(c + h * g.x[i]);
    return V(h) * s;
}

inline real vnorm(real v) { return std::abs(v); }
inline real vnorm(cplx v) { return std::abs(v); }

struct Panel {
    real a, b;
    real err;
};

template <class V>
V integrate_impl(const std::function<V(real)>& f, real a, real b,
                 const QuadratureConfig& q, const FreqFn& freq) {
    if (!(b > a)) return V{};
    const GLRule& g16 = gl_rule(16);
    const GLRule& g8 = gl_rule(8);

    // initial partition: width <= oscillation_safety / (1 + local frequency),
    // frequency in cycles per unit length
    std::vector<real> cuts{a};
    real x = a;
    int guard = 0;
    while (x < b) {
        real fr = freq ? std::max<real>(0, freq(x)) : 0;
        real w = q.oscillation_safety / (1 + fr);
        if (freq) {
            // frequency may grow across the step; re-check at the far end
            real fr2 = std::max<real>(0, freq(std::min(b, x + w)));
            w = q.oscillation_safety / (1 + std::max(fr, fr2));
        }
        w = std::min(w, b - x);
        x += w;
        if (x > b - 1e-300L) x = b;
        cuts.push_back(x);
        if (++guard > q.max_panels)
            throw QuadratureFailure("initial partition exceeds max_panels");
    }

    std::vector<Panel> panels;
    std::vector<V> vals;
    V total = V{};
    real err_total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        V v16 = gl_panel(f, cuts[i], cuts[i + 1], g16);
        V v8 = gl_panel(f, cuts[i], cuts[i + 1], g8);
        panels.push_back({cuts[i], cuts[i + 1], vnorm(v16 - v8)});
        vals.push_back(v16);
        total += v16;
        err_total += panels.back().err;
    }

    auto tol = [&]() { return q.abs_tol + q.rel_tol * vnorm(total); };
    while (err_total > tol()) {
        if (static_cast<int>(panels.size()) >= q.max_panels)
            throw QuadratureFailure("tolerance unreachable within max_panels (err=" +
                                    std::to_string(static_cast<double>(err_total)) + ")");
        size_t worst = 0;
        for (size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        if (panels[worst].err <= 0) break; // cannot improve further
        Panel p = panels[worst];
        real mid = (p.a + p.b) / 2;
        V l16 = gl_panel(f, p.a, mid, g16), l8 = gl_panel(f, p.a, mid, g8);
        V r16 = gl_panel(f, mid, p.b, g16), r8 = gl_panel(f, mid, p.b, g8);
        total += l16 + r16 - vals[worst];
        err_total += vnorm(l16 - l8) + vnorm(r16 - r8) - p.err;
        panels[worst] = {p.a, mid, vnorm(l16 - l8)};
        vals[worst] = l16;
        panels.push_back({mid, p.b, vnorm(r16 - r8)});
        vals.push_back(r16);
    }
    // deterministic final reduction in panel position order
    std::vector<size_t> order(panels.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return panels[i].a < panels[j].a; });
    V out = V{};
    for (size_t i : order) out += vals[i];
    return out;
}

template <class V>
V tanh_sinh_impl(const std::function<V(real)>& f, real a, real b, real tol) {
    if (!(b > a)) return V{};
    const real h = (b - a) / 2;
    // node position held as distance from the endpoint so integrable endpoint
    // singularities are approached without catastrophic rounding onto a/b
    auto node = [&](real t, real& dist, real& w) {
        real y = PI / 2 * std::sinh(t);
        real em = std::exp(-2 * y);
        dist = h * 2 * em / (1 + em); // h * (1 - tanh y)
        real sech = 2 / (std::exp(y) + std::exp(-y));
        w = h * (PI / 2) * std::cosh(t) * sech * sech;
    };
    const real tmax = 6.5L;
    real dist, w;
    node(0, dist, w);
    V sum = V(w) * f(a + dist); // the t = 0 node is the midpoint
    auto add_pair = [&](real t) {
        node(t, dist, w);
        if (w < 1e-35L || dist <= 0) return false;
        // evaluate each side only while it is still distinguishable from the
        // endpoint; the collapsed side is smooth there or its weight is dust
        real xl = a + dist, xr = b - dist;
        if (xl > a) sum += V(w) * f(xl);
        if (xr < b) sum += V(w) * f(xr);
        return true;
    };
    for (real t = 1; t <= tmax; t += 1)
        if (!add_pair(t)) break;
    real step = 1;
    V prev = V(step) * sum;
    for (int level = 0; level < 9; ++level) {
        for (real t = step / 2; t <= tmax; t += step)
            if (!add_pair(t)) break;
        step /= 2;
        V cur = V(step) * sum;
        if (level >= 1 && vnorm(cur - prev) < tol * (1 + vnorm(cur))) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

const GLRule& gl_rule(int n) {
    std::lock_guard<std::mutex> lk(gl_mutex);
    auto it = gl_cache.find(n);
    if (it == gl_cache.end()) it = gl_cache.emplace(n, make_gl(n)).first;
    return it->second;
}

real integrate(const std::function<real(real)>& f, real a, real b,
               const QuadratureConfig& q, const FreqFn& freq) {
    return integrate_impl<real>(f, a, b, q, freq);
}

cplx integrate_c(const std::function<cplx(real)>& f, real a, real b,
                 const QuadratureConfig& q, const FreqFn& freq) {
    return integrate_impl<cplx>(f, a, b, q, freq);
}

real tanh_sinh(const std::function<real(real)>& f, real a, real b, real tol) {
    return tanh_sinh_impl<real>(f, a, b, tol);
}

cplx tanh_sinh_c(const std::function<cplx(real)>& f, real a, real b, real tol) {
    return tanh_sinh_impl<cplx>(f, a, b, tol);
}

void Spline::build(std::vector<real> x, std::vector<real> y) {
    xs = std::move(x);
    ys = std::move(y);
    const size_t n = xs.size();
    m.assign(n, 0);
    if (n < 3) return;
    // natural boundary (m[0] = m[n-1] = 0), Thomas algorithm on the interior
    std::vector<real> diag(n, 0), sup(n, 0), rhs(n, 0);
    for (size_t i = 1; i + 1 < n; ++i) {
        real h0 = xs[i] - xs[i - 1], h1 = xs[i + 1] - xs[i];
        diag[i] = 2 * (h0 + h1);
        sup[i] = h1;
        rhs[i] = 6 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        if (i >= 2) {
            real fac = h0 / diag[i - 1];
            diag[i] -= fac * sup[i - 1];
            rhs[i] -= fac * rhs[i - 1];
        }
    }
    for (size_t i = n - 2; i >= 1; --i) {
        m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

real Spline::eval(real x) const {
    const size_t n = xs.size();
    if (n == 0) return 0;
    if (n == 1) return ys[0];
    size_t i = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    if (i == 0) i = 1;
    if (i >= n) i = n - 1;
    const real h = xs[i] - xs[i - 1];
    const real A = (xs[i] - x) / h, B = 1 - A;
    return A * ys[i - 1] + B * ys[i] +
           ((A * A * A - A) * m[i - 1] + (B * B * B - B) * m[i]) * h * h / 6;
}

} // namespace kuzlab
