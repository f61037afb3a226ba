// kuzlab: command-line front end for the spectral-summation laboratory.
//
// Subcommands evaluate single quantities (zeta-eval, kloosterman,
// bessel-plus), run verification checks that exit nonzero when a tolerance
// is exceeded (afe-check, trace-check, hecke-check, theorem2-fit), extract
// spectral data from the arithmetic side (extract-alpha), compute weighted
// moments (moments), and ingest datasets (ingest).
//
// Exit codes: 0 success, 1 verification or computation failure, 2 usage,
// config, or dataset errors.

#include "CLI11.hpp"

#include "kuzlab/afe.hpp"
#include "kuzlab/arith.hpp"
#include "kuzlab/config.hpp"
#include "kuzlab/dataset.hpp"
#include "kuzlab/moments.hpp"
#include "kuzlab/report.hpp"
#include "kuzlab/special.hpp"
#include "kuzlab/trace.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace kuzlab;

namespace {

struct Common {
    std::string config_path;
    std::string out_path;
    std::string format;    // explicit --format, empty when not given
    std::string data_path; // only bound on subcommands that take --data
    int threads = 0;       // explicit --threads, 0 when not given

    RunConfig cfg;
    QuadratureConfig quad;

    void resolve() {
        cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        apply_env_overrides(cfg);
        if (threads > 0) cfg.worker_count = threads;
        if (!format.empty()) cfg.output_format = format;
        cfg.validate();
        quad.abs_tol = cfg.abs_tol;
        quad.rel_tol = cfg.rel_tol;
    }

    bool json() const {
        return format.empty() ? cfg.output_format == "json" : format == "json";
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "key=value configuration file");
    sub->add_option("--out", c.out_path, "write the output to this file");
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", c.threads, "worker count")
        ->check(CLI::PositiveNumber);
}

void emit_text(const Common& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + c.out_path);
        out << text;
    }
}

int finish_report(const Common& c, const Report& rep) {
    emit_text(c, c.json() ? rep.to_json() + "\n" : rep.to_csv());
    return rep.all_pass() ? 0 : 1;
}

// a row that records a computed quantity without asserting anything
void info_row(Report& rep, const std::string& name, real v) {
    rep.add(name, v, v, 0);
}

int value_out(const Common& c, const std::string& text) {
    emit_text(c, c.json() ? "{\"value\":" + text + "}\n" : text + "\n");
    return 0;
}

std::string fmt_complex(cplx z) {
    if (std::fabs(z.imag()) <= 1e-18L + 1e-15L * std::fabs(z.real()))
        return fmt15(z.real());
    return fmt15(z.real()) + (z.imag() < 0 ? "-" : "+")
           + fmt15(std::fabs(z.imag())) + "i";
}

// accepts "2", "-1.5", "2+0i", "0.5+14.1347i", "3i", "-i"
cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty complex literal");

    auto to_real = [&](const std::string& part) -> real {
        if (part.empty() || part == "+") return 1;
        if (part == "-") return -1;
        char* end = nullptr;
        real x = std::strtold(part.c_str(), &end);
        if (end == part.c_str() || *end != '\0')
            throw ParseError("cannot parse complex literal '" + raw + "'");
        return x;
    };

    if (s.back() != 'i' && s.back() != 'I') return cplx(to_real(s), 0);

    std::string body = s.substr(0, s.size() - 1);
    // split before the sign of the imaginary part, skipping exponent signs
    // and the leading sign of the real part
    for (size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e'
            && body[i - 1] != 'E') {
            return cplx(to_real(body.substr(0, i)), to_real(body.substr(i)));
        }
    }
    return cplx(0, to_real(body));
}

std::string resolve_data(const Common& c) {
    const std::string prefix = "catalog:";
    if (c.data_path.rfind(prefix, 0) != 0) return c.data_path;
    std::string cache;
    if (const char* env = std::getenv("KUZLAB_CACHE_DIR")) {
        cache = env;
    } else if (const char* home = std::getenv("HOME")) {
        cache = std::string(home) + "/.cache/kuzlab";
    } else {
        cache = (std::filesystem::temp_directory_path() / "kuzlab_cache").string();
    }
    return fetch_remote(c.data_path.substr(prefix.size()), cache);
}

std::vector<MaassFormRecord> load_forms(const Common& c) {
    std::vector<std::string> warnings;
    auto [forms, manifest] = load_dataset(resolve_data(c), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return forms;
}

// ---- subcommand bodies ----

int run_zeta_eval(Common& c, const std::string& s_text, real sigma, real t,
                  bool have_st) {
    c.resolve();
    cplx s = have_st ? cplx(sigma, t) : parse_complex(s_text);
    return value_out(c, c.json() ? "\"" + fmt_complex(zeta_c(s)) + "\""
                                 : fmt_complex(zeta_c(s)));
}

int run_kloosterman(Common& c, u64 m, u64 n, u64 cc) {
    c.resolve();
    return value_out(c, fmt15(kloosterman(m, n, cc)));
}

int run_bessel_plus(Common& c, real x, real K, real G) {
    c.resolve();
    WeightSpec w = WeightSpec::gaussian_spec(K, G);
    return value_out(c, fmt15(f_plus(x, w, c.quad)));
}

int run_afe_check(Common& c, real r, real tol) {
    c.resolve();
    SmoothingParams p;
    p.delta = c.cfg.delta;
    p.C = c.cfg.C_smoothing;
    auto [v, est] = afe_zeta_pair_with_estimate(r, p);
    real ref = std::norm(zeta_c(cplx(0.5L, r)));
    real rel = std::fabs(v - ref) / ref;

    Report rep;
    rep.add("afe_zeta_pair", v, ref, tol * ref);
    rep.add("relative_error", rel, 0, tol);
    info_row(rep, "stability_estimate", est);
    return finish_report(c, rep);
}

int run_trace_check(Common& c, real K, real G, u64 m, u64 n, real tol,
                    real tail_tol) {
    c.resolve();
    auto forms = load_forms(c);
    WeightSpec w = WeightSpec::gaussian_spec(K, G);
    TraceBreakdown tb =
        trace_identity(forms, m, n, w, c.quad, tail_tol, c.cfg.modulus_cap,
                       nullptr, nullptr, c.cfg.worker_count);

    Report rep;
    info_row(rep, "spectral", tb.spectral);
    info_row(rep, "continuous", tb.continuous);
    info_row(rep, "diagonal", tb.diagonal);
    info_row(rep, "kloosterman", tb.kloosterman);
    info_row(rep, "kloosterman_tail_bound", tb.kloosterman_tail_bound);
    info_row(rep, "spectral_tail_bound", tb.spectral_tail_bound);
    info_row(rep, "residual", tb.residual);
    real denom = std::max({std::fabs(tb.diagonal), std::fabs(tb.spectral),
                           real(1e-300L)});
    rep.add("residual_over_diagonal", std::fabs(tb.residual) / denom, 0, tol);
    return finish_report(c, rep);
}

int run_extract_alpha(Common& c, real kappa, real G_narrow, real tail_tol) {
    c.resolve();
    auto forms = load_forms(c);
    std::vector<real> neighbors;
    for (const auto& f : forms)
        if (std::fabs(f.kappa - kappa) > 1e-6L) neighbors.push_back(f.kappa);

    WindowExtraction ex =
        extract_alpha(kappa, G_narrow, neighbors, c.quad, tail_tol,
                      c.cfg.modulus_cap, nullptr, nullptr, c.cfg.worker_count);

    Report rep;
    info_row(rep, "alpha_hat", ex.alpha_hat);
    info_row(rep, "condition", ex.condition);
    rep.add("reliable", ex.reliable ? 1 : 0, 1, 0);
    return finish_report(c, rep);
}

int run_hecke_check(Common& c, real tol) {
    c.resolve();
    auto forms = load_forms(c);
    Report rep;
    for (const auto& f : forms) {
        u64 D = f.depth();
        std::string tag = "kappa=" + fmt15(f.kappa) + ":";
        // multiplicativity on coprime pairs
        for (u64 m = 2; m * m <= D; ++m) {
            for (u64 n = m + 1; m * n <= D; ++n) {
                if (gcd_u64(m, n) != 1) continue;
                rep.add(tag + "t(" + std::to_string(m) + ")t("
                            + std::to_string(n) + ")-t(" + std::to_string(m * n)
                            + ")",
                        f.t(m) * f.t(n), f.t(m * n), tol);
            }
        }
        // Hecke recursion along prime powers
        for (u64 p : primes_up_to(D)) {
            for (u64 q = p; q * p <= D; q *= p) {
                real lower = q == p ? 1 : f.t(q / p);
                rep.add(tag + "t(" + std::to_string(p) + ")t("
                            + std::to_string(q) + ")-t(" + std::to_string(q * p)
                            + ")-t(" + std::to_string(q / p) + ")",
                        f.t(p) * f.t(q), f.t(q * p) + lower, tol);
            }
        }
    }
    return finish_report(c, rep);
}

int run_moments(Common& c, real T, int k) {
    c.resolve();
    real v = weighted_zeta_integral(T, k, c.quad);
    Report rep;
    info_row(rep, "I_" + std::to_string(k), v);
    info_row(rep, "I_over_T", v / T);
    return finish_report(c, rep);
}

int run_theorem2_fit(Common& c, real T_min, real T_max, real T_step,
                     u64 cutoff, real tol_A, real tol_B) {
    c.resolve();
    std::vector<real> grid;
    for (real T = T_min; T <= T_max * (1 + 1e-12L); T += T_step)
        grid.push_back(T);
    MomentFit fit = fit_theorem2(grid, c.quad);
    auto [A, A_tail] = series_A(cutoff);
    auto [B, B_tail] = series_B(cutoff);

    Report rep;
    rep.add("A_hat", fit.A_hat, A, tol_A * std::fabs(A));
    rep.add("B_hat", fit.B_hat, B, tol_B);
    info_row(rep, "rms_residual", fit.rms_residual);
    info_row(rep, "series_A_tail", A_tail);
    info_row(rep, "series_B_tail", B_tail);
    return finish_report(c, rep);
}

int run_ingest(Common& c) {
    std::vector<std::string> warnings;
    auto [forms, manifest] = load_dataset(resolve_data(c), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    if (!c.out_path.empty()) {
        std::ofstream out(c.out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + c.out_path);
        out << emit_dataset(forms);
    }

    std::string text;
    if (c.json()) {
        text = "{\"source\":\"" + manifest.source + "\",\"form_count\":"
               + std::to_string(manifest.form_count)
               + ",\"kappa_max\":" + fmt15(manifest.kappa_max)
               + ",\"coeff_depth\":" + std::to_string(manifest.coeff_depth)
               + ",\"checksum\":\"" + manifest.checksum + "\"}\n";
    } else {
        text = "source,form_count,kappa_max,coeff_depth,checksum\n"
               + manifest.source + "," + std::to_string(manifest.form_count)
               + "," + fmt15(manifest.kappa_max) + ","
               + std::to_string(manifest.coeff_depth) + ","
               + manifest.checksum + "\n";
    }
    std::cout << text;
    return 0;
}

std::pair<std::string, std::string> split_kind(const std::string& what) {
    size_t pos = what.find(": ");
    if (pos == std::string::npos) return {"Error", what};
    return {what.substr(0, pos), what.substr(pos + 2)};
}

} // namespace

int main(int argc, char** argv) {
    Common c;
    int rc = 0;

    CLI::App app{"numerical laboratory for spectral summation, trace-formula "
                 "verification, and weighted moments of zeta"};
    app.require_subcommand(1);

    // zeta-eval
    std::string s_text = "2+0i";
    real sigma = 0.5L, t_part = 0;
    {
        auto* sub = app.add_subcommand("zeta-eval",
                                       "evaluate zeta(s) on or off the "
                                       "critical line");
        add_common(sub, c);
        auto* so = sub->add_option("--s", s_text, "complex point, e.g. 2+0i");
        auto* sg = sub->add_option("--sigma", sigma, "real part of s");
        auto* st = sub->add_option("--t", t_part, "imaginary part of s");
        sub->callback([&, so, sg, st] {
            bool have_st = sg->count() || st->count();
            if (so->count() && have_st)
                throw CLI::ValidationError("zeta-eval",
                                           "--s and --sigma/--t are exclusive");
            rc = run_zeta_eval(c, s_text, sigma, t_part, have_st);
        });
    }

    // kloosterman
    u64 km = 1, kn = 1, kc = 1;
    {
        auto* sub = app.add_subcommand("kloosterman",
                                       "Kloosterman sum S(m,n;c)");
        add_common(sub, c);
        sub->add_option("--m", km, "first frequency")->required();
        sub->add_option("--n", kn, "second frequency")->required();
        sub->add_option("--c", kc, "modulus")->required()
            ->check(CLI::PositiveNumber);
        sub->callback([&] { rc = run_kloosterman(c, km, kn, kc); });
    }

    // bessel-plus
    real bx = 1, bK = 10, bG = 1;
    {
        auto* sub = app.add_subcommand("bessel-plus",
                                       "plus-sign Bessel transform of the "
                                       "Gaussian spectral window");
        add_common(sub, c);
        sub->add_option("--x", bx, "argument")->required()
            ->check(CLI::PositiveNumber);
        sub->add_option("--K", bK, "window center");
        sub->add_option("--G", bG, "window width");
        sub->callback([&] { rc = run_bessel_plus(c, bx, bK, bG); });
    }

    // afe-check
    real ar = 40, atol = 0.1L;
    {
        auto* sub = app.add_subcommand("afe-check",
                                       "smoothed approximate functional "
                                       "equation against direct zeta "
                                       "evaluation");
        add_common(sub, c);
        sub->add_option("--r", ar, "height on the critical line")->required();
        sub->add_option("--tol", atol, "relative error threshold");
        sub->callback([&] { rc = run_afe_check(c, ar, atol); });
    }

    // trace-check
    real tK = 12, tG = 1, ttol = 1e-2L, ttail = 1e-3L;
    u64 tm = 1, tn = 1;
    {
        auto* sub = app.add_subcommand("trace-check",
                                       "verify the trace identity on a "
                                       "dataset");
        add_common(sub, c);
        sub->add_option("--data", c.data_path, "dataset path or catalog:ID")
            ->required();
        sub->add_option("--K", tK, "window center");
        sub->add_option("--G", tG, "window width");
        sub->add_option("--m", tm, "first Hecke index");
        sub->add_option("--n", tn, "second Hecke index");
        sub->add_option("--tol", ttol, "residual / diagonal threshold");
        sub->add_option("--tail-tol", ttail, "modulus-sum tail target");
        sub->callback(
            [&] { rc = run_trace_check(c, tK, tG, tm, tn, ttol, ttail); });
    }

    // extract-alpha
    real ekappa = 0, eG = 0.25L, etail = 1e-3L;
    {
        auto* sub = app.add_subcommand("extract-alpha",
                                       "estimate a spectral weight from a "
                                       "narrow window on the arithmetic "
                                       "side");
        add_common(sub, c);
        sub->add_option("--data", c.data_path,
                        "dataset supplying neighbor eigenvalues")
            ->required();
        sub->add_option("--kappa", ekappa, "target eigenvalue")->required();
        sub->add_option("--G", eG, "narrow window width");
        sub->add_option("--tail-tol", etail, "modulus-sum tail target");
        sub->callback([&] { rc = run_extract_alpha(c, ekappa, eG, etail); });
    }

    // hecke-check
    real htol = 1e-6L;
    {
        auto* sub = app.add_subcommand("hecke-check",
                                       "multiplicativity and recursion "
                                       "relations among stored coefficients");
        add_common(sub, c);
        sub->add_option("--data", c.data_path, "dataset path or catalog:ID")
            ->required();
        sub->add_option("--tol", htol, "absolute tolerance per relation");
        sub->callback([&] { rc = run_hecke_check(c, htol); });
    }

    // moments
    real mT = 100;
    int mk = 1;
    {
        auto* sub = app.add_subcommand("moments",
                                       "weighted moment of zeta on [0, T]");
        add_common(sub, c);
        sub->add_option("--T", mT, "upper endpoint")->check(CLI::PositiveNumber);
        sub->add_option("--k", mk, "moment order (1 or 2)")
            ->check(CLI::Range(1, 2));
        sub->callback([&] { rc = run_moments(c, mT, mk); });
    }

    // theorem2-fit
    real fmin = 50, fmax = 500, fstep = 50, ftolA = 0.05L, ftolB = 0.2L;
    u64 fcut = 10000;
    {
        auto* sub = app.add_subcommand("theorem2-fit",
                                       "fit the weighted-second-moment "
                                       "constants and compare with the "
                                       "lattice series");
        add_common(sub, c);
        sub->add_option("--T-min", fmin, "smallest grid point");
        sub->add_option("--T-max", fmax, "largest grid point");
        sub->add_option("--T-step", fstep, "grid spacing")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cutoff", fcut, "lattice series cutoff");
        sub->add_option("--tol-A", ftolA, "relative tolerance on the slope");
        sub->add_option("--tol-B", ftolB, "absolute tolerance on the intercept");
        sub->callback([&] {
            rc = run_theorem2_fit(c, fmin, fmax, fstep, fcut, ftolA, ftolB);
        });
    }

    // ingest
    {
        auto* sub = app.add_subcommand("ingest",
                                       "load, validate, and canonicalize a "
                                       "dataset; prints the manifest");
        add_common(sub, c);
        sub->add_option("--data", c.data_path, "dataset path or catalog:ID")
            ->required();
        sub->callback([&] { rc = run_ingest(c); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        auto [kind, message] = split_kind(e.what());
        if (c.json())
            std::cerr << error_json(kind, message) << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return (kind == "ParseError" || kind == "SchemaError") ? 2 : 1;
    }
    return rc;
}
