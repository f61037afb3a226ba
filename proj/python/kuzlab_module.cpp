// Python bindings for the kuzlab core: special functions, Kloosterman sums,
// smoothed approximate functional equations, the trace identity, window
// extraction, and the weighted-moment fits. Values cross the boundary as
// doubles; the core computes in long double throughout.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/complex.h>

#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"
#include "kuzlab/dataset.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/forms.hpp"
#include "kuzlab/moments.hpp"
#include "kuzlab/smoothing.hpp"
#include "kuzlab/special.hpp"
#include "kuzlab/trace.hpp"

#include <complex>
#include <sstream>

namespace py = pybind11;
using namespace kuzlab;

namespace {

using cd = std::complex<double>;

WeightSpec make_spec(const std::string& kind, double K, double G) {
    if (kind == "gaussian")
        return WeightSpec::gaussian_spec(static_cast<real>(K), static_cast<real>(G));
    if (kind == "averaged")
        return WeightSpec::averaged_spec(static_cast<real>(K), static_cast<real>(G));
    throw SchemaError("weight kind must be \"gaussian\" or \"averaged\", got \"" + kind + "\"");
}

SmoothingParams make_params(double delta, double C) {
    SmoothingParams p;
    p.delta = static_cast<real>(delta);
    p.C = static_cast<real>(C);
    return p;
}

std::vector<real> to_real_vec(const std::vector<double>& v) {
    return std::vector<real>(v.begin(), v.end());
}

} // namespace

PYBIND11_MODULE(_kuzlab, m) {
    m.doc() = "spectral summation laboratory: trace identity, smoothed "
              "functional equations, and weighted second-moment fits";

    py::register_exception<Error>(m, "KuzlabError");

    // ---- records and datasets -------------------------------------------
    py::class_<MaassFormRecord>(m, "MaassFormRecord")
        .def(py::init<>())
        .def(py::init([](double kappa, int parity, const std::vector<double>& coeffs,
                         std::optional<double> alpha) {
                 MaassFormRecord f;
                 f.kappa = static_cast<real>(kappa);
                 f.parity = parity;
                 f.coefficients = to_real_vec(coeffs);
                 if (alpha)
                     f.alpha = static_cast<real>(*alpha);
                 f.validate();
                 return f;
             }),
             py::arg("kappa"), py::arg("parity"), py::arg("coefficients"),
             py::arg("alpha") = py::none())
        .def_property("kappa",
                      [](const MaassFormRecord& f) { return static_cast<double>(f.kappa); },
                      [](MaassFormRecord& f, double v) { f.kappa = static_cast<real>(v); })
        .def_readwrite("parity", &MaassFormRecord::parity)
        .def_property("coefficients",
                      [](const MaassFormRecord& f) {
                          return std::vector<double>(f.coefficients.begin(), f.coefficients.end());
                      },
                      [](MaassFormRecord& f, const std::vector<double>& v) {
                          f.coefficients = to_real_vec(v);
                      })
        .def_property("alpha",
                      [](const MaassFormRecord& f) -> std::optional<double> {
                          if (f.alpha)
                              return static_cast<double>(*f.alpha);
                          return std::nullopt;
                      },
                      [](MaassFormRecord& f, std::optional<double> v) {
                          if (v)
                              f.alpha = static_cast<real>(*v);
                          else
                              f.alpha.reset();
                      })
        .def("t", [](const MaassFormRecord& f, u64 n) { return static_cast<double>(f.t(n)); },
             py::arg("n"), "Hecke eigenvalue t(n); raises when the record does not reach n")
        .def("depth", &MaassFormRecord::depth)
        .def("validate", &MaassFormRecord::validate)
        .def("__repr__", [](const MaassFormRecord& f) {
            std::ostringstream os;
            os << "MaassFormRecord(kappa=" << static_cast<double>(f.kappa)
               << ", parity=" << f.parity << ", depth=" << f.depth()
               << (f.alpha ? ", alpha set)" : ")");
            return os.str();
        });

    py::class_<DatasetManifest>(m, "DatasetManifest")
        .def_readonly("source", &DatasetManifest::source)
        .def_readonly("form_count", &DatasetManifest::form_count)
        .def_property_readonly("kappa_max", [](const DatasetManifest& d) {
            return static_cast<double>(d.kappa_max);
        })
        .def_readonly("coeff_depth", &DatasetManifest::coeff_depth)
        .def_readonly("checksum", &DatasetManifest::checksum)
        .def("__repr__", [](const DatasetManifest& d) {
            std::ostringstream os;
            os << "DatasetManifest(source='" << d.source << "', form_count=" << d.form_count
               << ", coeff_depth=" << d.coeff_depth << ")";
            return os.str();
        });

    m.def("load_dataset", [](const std::string& path) {
        std::vector<std::string> warnings;
        auto [forms, manifest] = load_dataset(path, &warnings);
        return py::make_tuple(forms, manifest, warnings);
    }, py::arg("path"),
       "parse a JSONL dataset; returns (forms, manifest, warnings), forms sorted by kappa");

    m.def("emit_dataset", [](const std::vector<MaassFormRecord>& forms) {
        return emit_dataset(forms);
    }, py::arg("forms"), "canonical one-record-per-line serialization");

    // ---- special functions ----------------------------------------------
    m.def("zeta", [](cd s) { return static_cast<cd>(zeta_c(cplx(s))); }, py::arg("s"),
          "Riemann zeta via alternating series acceleration / functional equation");
    m.def("log_gamma", [](cd z) { return static_cast<cd>(log_gamma(cplx(z))); }, py::arg("z"));
    m.def("gamma", [](cd z) { return static_cast<cd>(gamma_c(cplx(z))); }, py::arg("z"));
    m.def("imj_over_cosh", [](double r, double x) {
        return static_cast<double>(imj_over_cosh(static_cast<real>(r), static_cast<real>(x)));
    }, py::arg("r"), py::arg("x"), "Im J_{2ir}(x) / cosh(pi r)");

    // ---- arithmetic ------------------------------------------------------
    m.def("kloosterman", [](u64 mm, u64 nn, u64 c) {
        return static_cast<double>(kloosterman(mm, nn, c));
    }, py::arg("m"), py::arg("n"), py::arg("c"), "complete sum S(m, n; c)");
    m.def("weil_bound", [](u64 mm, u64 nn, u64 c) {
        return static_cast<double>(weil_bound(mm, nn, c));
    }, py::arg("m"), py::arg("n"), py::arg("c"));
    m.def("divisor_count", &divisor_count, py::arg("n"));
    m.def("divisor_sigma_cos", [](double r, u64 n) {
        return static_cast<double>(divisor_sigma_cos(static_cast<real>(r), n));
    }, py::arg("r"), py::arg("n"), "sigma_{2ir}(n) / n^{ir}, real by symmetry");

    // ---- smoothing and functional equations -------------------------------
    m.def("smooth_cutoff", [](u64 n, double Y, double h) {
        SmoothingParams p;
        p.Y = static_cast<real>(Y);
        p.h = static_cast<real>(h);
        return static_cast<double>(smooth_cutoff(n, p));
    }, py::arg("n"), py::arg("Y"), py::arg("h"), "V(n/Y) = exp(-(n/Y)^h)");

    m.def("mellin_inversion_check", [](u64 n, double Y, double h, double c) {
        SmoothingParams p;
        p.Y = static_cast<real>(Y);
        p.h = static_cast<real>(h);
        QuadratureConfig quad;
        return static_cast<double>(mellin_inversion_check(n, p, c, quad));
    }, py::arg("n"), py::arg("Y"), py::arg("h"), py::arg("c") = 1.0,
       "abs difference between V(n/Y) and its Mellin contour reconstruction",
       py::call_guard<py::gil_scoped_release>());

    m.def("afe_cutoff", [](double kappa, double delta, double C) {
        return afe_cutoff(static_cast<real>(kappa), make_params(delta, C));
    }, py::arg("kappa"), py::arg("delta") = 0.1, py::arg("C") = 10.0);

    m.def("afe_zeta_pair", [](double r, double delta, double C) {
        return static_cast<double>(afe_zeta_pair(static_cast<real>(r), make_params(delta, C)));
    }, py::arg("r"), py::arg("delta") = 0.1, py::arg("C") = 10.0,
       "smoothed Dirichlet-series approximation to |zeta(1/2 + ir)|^2");

    m.def("afe_zeta_pair_with_estimate", [](double r, double delta, double C) {
        auto [v, est] = afe_zeta_pair_with_estimate(static_cast<real>(r), make_params(delta, C));
        return py::make_tuple(static_cast<double>(v), static_cast<double>(est));
    }, py::arg("r"), py::arg("delta") = 0.1, py::arg("C") = 10.0,
       "(value, smoothing-stability estimate)");

    m.def("afe_hecke_central", [](const MaassFormRecord& f, double delta, double C) {
        return static_cast<double>(afe_hecke_central(f, make_params(delta, C)));
    }, py::arg("form"), py::arg("delta") = 0.1, py::arg("C") = 10.0,
       "smoothed central value H_j(1/2) from the record's Hecke eigenvalues");

    // ---- trace identity ----------------------------------------------------
    py::class_<TraceBreakdown>(m, "TraceBreakdown")
        .def_property_readonly("spectral", [](const TraceBreakdown& t) { return (double)t.spectral; })
        .def_property_readonly("continuous", [](const TraceBreakdown& t) { return (double)t.continuous; })
        .def_property_readonly("diagonal", [](const TraceBreakdown& t) { return (double)t.diagonal; })
        .def_property_readonly("kloosterman", [](const TraceBreakdown& t) { return (double)t.kloosterman; })
        .def_property_readonly("kloosterman_tail_bound",
                               [](const TraceBreakdown& t) { return (double)t.kloosterman_tail_bound; })
        .def_property_readonly("spectral_tail_bound",
                               [](const TraceBreakdown& t) { return (double)t.spectral_tail_bound; })
        .def_property_readonly("residual", [](const TraceBreakdown& t) { return (double)t.residual; })
        .def("__repr__", [](const TraceBreakdown& t) {
            std::ostringstream os;
            os << "TraceBreakdown(residual=" << (double)t.residual
               << ", spectral=" << (double)t.spectral << ", diagonal=" << (double)t.diagonal
               << ", kloosterman=" << (double)t.kloosterman << ")";
            return os.str();
        });

    py::class_<WindowExtraction>(m, "WindowExtraction")
        .def_property_readonly("center", [](const WindowExtraction& w) { return (double)w.center; })
        .def_property_readonly("G_narrow", [](const WindowExtraction& w) { return (double)w.G_narrow; })
        .def_property_readonly("alpha_hat", [](const WindowExtraction& w) { return (double)w.alpha_hat; })
        .def_property_readonly("condition", [](const WindowExtraction& w) { return (double)w.condition; })
        .def_readonly("reliable", &WindowExtraction::reliable);

    m.def("weight_f", [](double r, const std::string& kind, double K, double G) {
        return static_cast<double>(weight_f(static_cast<real>(r), make_spec(kind, K, G)));
    }, py::arg("r"), py::arg("kind"), py::arg("K"), py::arg("G"),
       "spectral window f(r) for the given kind/center/width");

    m.def("f_plus", [](double x, double K, double G, const std::string& kind) {
        QuadratureConfig quad;
        return static_cast<double>(f_plus(static_cast<real>(x), make_spec(kind, K, G), quad));
    }, py::arg("x"), py::arg("K") = 10.0, py::arg("G") = 1.0, py::arg("kind") = "gaussian",
       "plus-sign Bessel transform of the spectral window",
       py::call_guard<py::gil_scoped_release>());

    m.def("diagonal_term", [](u64 mm, u64 nn, double K, double G, const std::string& kind) {
        QuadratureConfig quad;
        return static_cast<double>(diagonal_term(mm, nn, make_spec(kind, K, G), quad));
    }, py::arg("m"), py::arg("n"), py::arg("K"), py::arg("G"), py::arg("kind") = "gaussian",
       py::call_guard<py::gil_scoped_release>());

    m.def("continuous_term", [](u64 mm, u64 nn, double K, double G, const std::string& kind) {
        QuadratureConfig quad;
        return static_cast<double>(continuous_term(mm, nn, make_spec(kind, K, G), quad));
    }, py::arg("m"), py::arg("n"), py::arg("K"), py::arg("G"), py::arg("kind") = "gaussian",
       py::call_guard<py::gil_scoped_release>());

    m.def("kloosterman_term", [](u64 mm, u64 nn, double K, double G, const std::string& kind,
                                 double tail_tol, int workers) {
        QuadratureConfig quad;
        auto [v, tail] = kloosterman_term(mm, nn, make_spec(kind, K, G), quad,
                                          static_cast<real>(tail_tol), hard_modulus_cap,
                                          nullptr, nullptr, workers);
        return py::make_tuple(static_cast<double>(v), static_cast<double>(tail));
    }, py::arg("m"), py::arg("n"), py::arg("K"), py::arg("G"), py::arg("kind") = "gaussian",
       py::arg("tail_tol") = 1e-6, py::arg("workers") = 1,
       "(modulus sum, certified tail bound)", py::call_guard<py::gil_scoped_release>());

    m.def("trace_identity", [](const std::vector<MaassFormRecord>& forms, u64 mm, u64 nn,
                               double K, double G, const std::string& kind,
                               double tail_tol, int workers) {
        QuadratureConfig quad;
        return trace_identity(forms, mm, nn, make_spec(kind, K, G), quad,
                              static_cast<real>(tail_tol), hard_modulus_cap,
                              nullptr, nullptr, workers);
    }, py::arg("forms"), py::arg("m") = 1, py::arg("n") = 1,
       py::arg("K") = 12.0, py::arg("G") = 1.0, py::arg("kind") = "gaussian",
       py::arg("tail_tol") = 1e-3, py::arg("workers") = 1,
       "evaluate both sides; residual = spectral + continuous - diagonal - kloosterman",
       py::call_guard<py::gil_scoped_release>());

    m.def("extract_alpha", [](double kappa_target, double G_narrow,
                              const std::vector<double>& neighbors, double tail_tol,
                              int workers) {
        QuadratureConfig quad;
        return extract_alpha(static_cast<real>(kappa_target), static_cast<real>(G_narrow),
                             to_real_vec(neighbors), quad, static_cast<real>(tail_tol),
                             hard_modulus_cap, nullptr, nullptr, workers);
    }, py::arg("kappa_target"), py::arg("G_narrow"), py::arg("neighbors"),
       py::arg("tail_tol") = 1e-4, py::arg("workers") = 1,
       "narrow-window spectral-weight estimate at kappa_target",
       py::call_guard<py::gil_scoped_release>());

    m.def("hecke_extract", [](double kappa_target, u64 mm, double G_narrow,
                              const std::vector<double>& neighbors, double tail_tol,
                              int workers) {
        QuadratureConfig quad;
        return static_cast<double>(
            hecke_extract(static_cast<real>(kappa_target), mm, static_cast<real>(G_narrow),
                          to_real_vec(neighbors), quad, static_cast<real>(tail_tol),
                          hard_modulus_cap, nullptr, nullptr, workers));
    }, py::arg("kappa_target"), py::arg("m"), py::arg("G_narrow"), py::arg("neighbors"),
       py::arg("tail_tol") = 1e-4, py::arg("workers") = 1,
       py::call_guard<py::gil_scoped_release>());

    // ---- moments -----------------------------------------------------------
    py::class_<MomentFit>(m, "MomentFit")
        .def_property_readonly("A_hat", [](const MomentFit& f) { return (double)f.A_hat; })
        .def_property_readonly("B_hat", [](const MomentFit& f) { return (double)f.B_hat; })
        .def_property_readonly("rms_residual", [](const MomentFit& f) { return (double)f.rms_residual; })
        .def_property_readonly("grid", [](const MomentFit& f) {
            std::vector<std::pair<double, double>> g;
            g.reserve(f.grid.size());
            for (auto& [T, I] : f.grid)
                g.emplace_back(static_cast<double>(T), static_cast<double>(I));
            return g;
        })
        .def("__repr__", [](const MomentFit& f) {
            std::ostringstream os;
            os << "MomentFit(A_hat=" << (double)f.A_hat << ", B_hat=" << (double)f.B_hat
               << ", rms_residual=" << (double)f.rms_residual << ")";
            return os.str();
        });

    py::class_<Theorem1Report>(m, "DyadicDecomposition")
        .def_property_readonly("spectral_sum", [](const Theorem1Report& r) { return (double)r.spectral_sum; })
        .def_property_readonly("continuous_integral",
                               [](const Theorem1Report& r) { return (double)r.continuous_integral; })
        .def_property_readonly("main_term", [](const Theorem1Report& r) { return (double)r.main_term; })
        .def_property_readonly("deviation", [](const Theorem1Report& r) { return (double)r.deviation; })
        .def_property_readonly("deviation_in_GK0",
                               [](const Theorem1Report& r) { return (double)r.deviation_in_GK0; })
        .def_property_readonly("diag_average", [](const Theorem1Report& r) { return (double)r.diag_average; })
        .def_property_readonly("diag_deviation_in_GK0",
                               [](const Theorem1Report& r) { return (double)r.diag_deviation_in_GK0; });

    m.def("series_A", [](u64 cutoff) {
        auto [v, tail] = series_A(cutoff);
        return py::make_tuple(static_cast<double>(v), static_cast<double>(tail));
    }, py::arg("cutoff") = 10000, "(value, truncation-tail bound) of the leading constant");

    m.def("series_B", [](u64 cutoff) {
        auto [v, tail] = series_B(cutoff);
        return py::make_tuple(static_cast<double>(v), static_cast<double>(tail));
    }, py::arg("cutoff") = 10000, "(value, truncation-tail bound) of the secondary constant");

    m.def("weighted_zeta_integral", [](double T, int k) {
        QuadratureConfig quad;
        return static_cast<double>(weighted_zeta_integral(static_cast<real>(T), k, quad));
    }, py::arg("T"), py::arg("k") = 1,
       "I_k(T) = int_0^T |zeta(1/2+it)|^{2k} / |zeta(1+2it)|^2 dt",
       py::call_guard<py::gil_scoped_release>());

    m.def("fit_theorem2", [](const std::vector<double>& T_grid) {
        QuadratureConfig quad;
        return fit_theorem2(to_real_vec(T_grid), quad);
    }, py::arg("T_grid"),
       "evaluate the weighted second moment on the grid and fit I/T ~ A log T + B",
       py::call_guard<py::gil_scoped_release>());

    m.def("dyadic_decomposition", [](double K0, double G,
                                     const std::vector<MaassFormRecord>& forms,
                                     double delta, double C) {
        QuadratureConfig quad;
        return theorem1_decomposition(static_cast<real>(K0), static_cast<real>(G), forms, quad,
                                      make_params(delta, C));
    }, py::arg("K0"), py::arg("G"), py::arg("forms"),
       py::arg("delta") = 0.1, py::arg("C") = 10.0,
       "sharp dyadic window (K0, 2K0]: spectral sum + continuous vs 3K0^2/pi^2",
       py::call_guard<py::gil_scoped_release>());
}
